#include "gddkit/gddkit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "gddkit/classify.hpp"
#include "gddkit/mmio.hpp"
#include "run.hpp"

struct gdd_matrix {
    gddkit::ComplexMatrix a;
};

namespace {

thread_local std::string last_error;

gdd_status map_code(gddkit::ErrorCode c) {
    using gddkit::ErrorCode;
    switch (c) {
        case ErrorCode::invalid_argument: return GDD_ERR_INVALID_ARGUMENT;
        case ErrorCode::dimension_mismatch: return GDD_ERR_DIMENSION;
        case ErrorCode::parse_error: return GDD_ERR_PARSE;
        case ErrorCode::not_converged: return GDD_ERR_NOT_CONVERGED;
        case ErrorCode::unknown_criterion: return GDD_ERR_UNKNOWN_CRITERION;
        case ErrorCode::io_error: return GDD_ERR_IO;
    }
    return GDD_ERR_INTERNAL;
}

template <class F>
gdd_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return GDD_OK;
    } catch (const gddkit::Error& e) {
        last_error = e.what();
        return map_code(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return GDD_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return GDD_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return GDD_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) throw gddkit::Error(gddkit::ErrorCode::invalid_argument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

gdd_status gdd_matrix_from_array(size_t n, const double* re, const double* im, gdd_matrix** out) {
    return guarded([&] {
        need(re, "re");
        need(out, "out");
        if (n == 0) throw gddkit::Error(gddkit::ErrorCode::invalid_argument, "matrix order must be positive");
        std::vector<gddkit::cplx> v(n * n);
        for (size_t t = 0; t < n * n; ++t) v[t] = {re[t], im ? im[t] : 0.0};
        *out = new gdd_matrix{gddkit::ComplexMatrix(n, std::move(v))};
    });
}

gdd_status gdd_matrix_parse_mtx(const char* text, gdd_matrix** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new gdd_matrix{gddkit::parse_matrix_market(text)};
    });
}

gdd_status gdd_matrix_load_mtx(const char* path, gdd_matrix** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new gdd_matrix{gddkit::load_matrix_market(path)};
    });
}

gdd_status gdd_matrix_to_mtx(const gdd_matrix* m, char** out) {
    return guarded([&] {
        need(m, "matrix");
        need(out, "out");
        *out = dup(gddkit::to_matrix_market(m->a));
    });
}

size_t gdd_matrix_order(const gdd_matrix* m) { return m ? m->a.order() : 0; }

gdd_status gdd_matrix_entry(const gdd_matrix* m, size_t i, size_t j, double* re, double* im) {
    return guarded([&] {
        need(m, "matrix");
        if (i >= m->a.order() || j >= m->a.order())
            throw gddkit::Error(gddkit::ErrorCode::dimension_mismatch, "entry index out of range");
        const gddkit::cplx v = m->a(i, j);
        if (re) *re = v.real();
        if (im) *im = v.imag();
    });
}

void gdd_matrix_free(gdd_matrix* m) { delete m; }

gdd_status gdd_is_sdd(const gdd_matrix* m, double tau, int* out) {
    return guarded([&] {
        need(m, "matrix");
        need(out, "out");
        if (!(tau >= 0.0)) throw gddkit::Error(gddkit::ErrorCode::invalid_argument, "tau must be nonnegative");
        *out = gddkit::is_sdd(m->a, tau) ? 1 : 0;
    });
}

gdd_status gdd_classify(const gdd_matrix* m, char** report_json) {
    return guarded([&] {
        need(m, "matrix");
        need(report_json, "out");
        nlohmann::json j = gddkit::run::classification_json(m->a, gddkit::classify_h(m->a));
        j["schema"] = gddkit::run::schema;
        *report_json = dup(j.dump(2));
    });
}

gdd_status gdd_criteria_list(char** json) {
    return guarded([&] {
        need(json, "out");
        *json = dup(gddkit::run::catalog_json().dump(2));
    });
}

gdd_status gdd_check_criterion(const gdd_matrix* m, const char* spec_json, int* fired, double* margin) {
    return guarded([&] {
        need(m, "matrix");
        need(spec_json, "spec");
        need(fired, "fired");
        const auto o = gddkit::run::check_from_json(m->a, nlohmann::json::parse(spec_json));
        *fired = o.fired ? 1 : 0;
        if (margin) *margin = o.margin;
    });
}

gdd_status gdd_run(const gdd_matrix* m, const char* config_json, char** report_json, int* violation) {
    return guarded([&] {
        need(m, "matrix");
        need(config_json, "config");
        need(report_json, "out");
        const auto cfg = nlohmann::json::parse(config_json);
        const auto out = gddkit::run::execute(m->a, cfg);
        *report_json = dup(out.report.dump(2) + "\n");
        if (violation) *violation = out.violation ? 1 : 0;
    });
}

void gdd_string_free(char* s) { std::free(s); }

const char* gdd_status_string(gdd_status s) {
    switch (s) {
        case GDD_OK: return "ok";
        case GDD_ERR_INVALID_ARGUMENT: return "invalid argument";
        case GDD_ERR_PARSE: return "parse error";
        case GDD_ERR_DIMENSION: return "dimension mismatch";
        case GDD_ERR_NOT_CONVERGED: return "not converged";
        case GDD_ERR_UNKNOWN_CRITERION: return "unknown criterion";
        case GDD_ERR_IO: return "i/o error";
        case GDD_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* gdd_last_error(void) { return last_error.c_str(); }

}  // extern "C"
