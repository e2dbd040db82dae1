#pragma once

#include <json.hpp>
#include <string>

#include "gddkit/classify.hpp"
#include "gddkit/gfun.hpp"
#include "gddkit/matrix.hpp"

namespace gddkit::run {

using json = nlohmann::json;

inline constexpr const char* schema = "gddkit/1";

struct Output {
    json report;
    bool violation = false;
};

/// Executes one of classify, criteria, regions, verify, report.
Output execute(const ComplexMatrix& a, const json& config);

json classification_json(const ComplexMatrix& a, const ClassificationReport& rep);
json catalog_json();

/// "r", "g1", ... or {"family": ..., "alpha": ..., "p": ..., "alpha_bar": [...], "scaling": [...]}.
GFunctionId parse_gfunction(const json& v, const ComplexMatrix& a);

CriterionOutcome check_from_json(const ComplexMatrix& a, const json& spec);

}  // namespace gddkit::run
