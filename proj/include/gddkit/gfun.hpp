#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gddkit/matrix.hpp"

namespace gddkit {

// ---------------------------------------------------------------------------
// G-functions
// ---------------------------------------------------------------------------

enum class GFamily {
    r,
    c,
    r_tilde,
    c_tilde,
    r_weighted,
    c_weighted,
    r_tilde_weighted,
    c_tilde_weighted,
    g1,
    g2,
    g3,
    g4,
};

const char* to_string(GFamily f) noexcept;

/// A member of the shipped G-function catalog plus its parameters.
/// Factories validate parameters eagerly; g4's constraint involves A and is
/// checked at evaluation time.
struct GFunctionId {
    GFamily family = GFamily::r;
    std::optional<PositiveScaling> scaling;  // weighted families
    double alpha = 0.5;                      // g1, g4
    std::vector<double> alpha_bar;           // g2, g3
    double p = 2.0;                          // g1, g2, g3

    static GFunctionId plain(GFamily f);
    static GFunctionId weighted(GFamily f, PositiveScaling s);
    /// g1_k = r_{k,alpha p}^alpha c_{k,(1-alpha) q}^{1-alpha}, alpha in (0,1), p > 1.
    static GFunctionId g1(double alpha, double p);
    /// g2_k = alpha_k^{1/q} r_{k,p}, sum 1/(1+alpha_k) <= 1.
    static GFunctionId g2(std::vector<double> alpha_bar, double p);
    /// g3_k = r_{k,p} / alpha_k, sum alpha_k^q <= 1.
    static GFunctionId g3(std::vector<double> alpha_bar, double p);
    /// g4_k = alpha max_{j != k} |a_kj|, sum_k r_k / max_k <= alpha (1 + alpha).
    static GFunctionId g4(double alpha);

    std::string label() const;
};

/// Smallest alpha satisfying the g4 constraint for this matrix.
double g4_min_alpha(const ComplexMatrix& a);

/// Deleted s-norm of row k (axis row) or column k (axis column).
double deleted_norm(const ComplexMatrix& a, std::size_t k, double s, Axis axis);

SumVector eval_gfunction(const GFunctionId& id, const ComplexMatrix& a);

// ---------------------------------------------------------------------------
// Pair functions F_{mu,alpha} (mu = 1..7) and F_{nu,alpha,beta} (nu = 8..13)
// ---------------------------------------------------------------------------

struct PairFunctionSpec {
    int kind = 1;
    double alpha = 1.0;
    double beta = 1.0;  // ignored for kind <= 7
};

void validate(const PairFunctionSpec& spec);

/// Entry (i,j) of F(x,y). Powers follow 0^0 = 1 and 0^t = 0 for t > 0.
double pair_function(const PairFunctionSpec& spec, double xi, double xj, double yi, double yj);

/// Values for all ordered pairs i != j; the diagonal slots are unused.
struct PairValueGrid {
    std::size_t n = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    std::size_t pair_count() const noexcept { return n * (n - 1); }
};

PairValueGrid eval_pair_function(const PairFunctionSpec& spec, const std::vector<double>& x,
                                 const std::vector<double>& y);
PairValueGrid eval_pair_function(const PairFunctionSpec& spec, const SumVector& x, const SumVector& y);

/// F(|D(A)|e, |D(A)|e) - F(g, h) > tau entrywise. Vacuously true for n = 1.
bool check_pair_condition(const PairFunctionSpec& spec, const ComplexMatrix& a, const SumVector& g,
                          const SumVector& h, double tau = 0.0);

// ---------------------------------------------------------------------------
// Radius forms shared by the criterion catalog and the region catalogs.
// Forms 1..3 are point forms compared with |a_ii|; 4..13 product forms
// compared with |a_ii||a_jj|; 14..27 power-mean forms compared with
// |a_ii|^alpha |a_jj|^(1-alpha).
// ---------------------------------------------------------------------------

enum class FormShape { point, product, powermean };

constexpr int form_count = 27;
constexpr int kind_count = 31;

FormShape form_shape(int form);
bool form_uses_alpha(int form);
bool form_uses_beta(int form);
bool form_uses_h(int form);

/// Radius of `form` at (i,j) given g_i, g_j, h_i, h_j.
double form_radius(int form, double gi, double gj, double hi, double hj, double alpha, double beta);

/// Left-hand side for a point form (dj ignored), product or power mean.
double form_lhs(FormShape shape, double di, double dj, double alpha);

/// The matching pair function for a form, if there is one.
std::optional<PairFunctionSpec> form_pair_function(int form, double alpha, double beta);

/// Kinds 1..31 of the row/column catalogs, expressed as a form plus which
/// member of the (g, h) pair feeds the form's first and second slot.
struct KindForm {
    int form = 1;
    bool first_is_h = false;
    bool second_is_h = true;
};

KindForm kind_form(int kind);

// ---------------------------------------------------------------------------
// Criterion catalog
// ---------------------------------------------------------------------------

/// Source of the vector plugged into a form slot.
enum class Slot {
    none,
    g,          // first user-supplied G-function
    h,          // second user-supplied G-function
    r,
    c,
    r_tilde,
    c_tilde,
    r_x,        // r^X
    c_y,        // c^Y
    r_y,        // r^Y
    c_x,        // c^X
    r_tilde_x,  // r~^X
    c_tilde_y,  // c~^Y
};

const char* to_string(Slot s) noexcept;

struct CatalogEntry {
    std::string id;     // e.g. "T4.7-5"
    std::string group;  // e.g. "T4.7"
    std::string item;   // e.g. "5", "1'", "14alt"
    int form = 1;
    Slot g_slot = Slot::g;
    Slot h_slot = Slot::none;
    std::string note;

    bool uses_alpha() const { return form_uses_alpha(form); }
    bool uses_beta() const { return form_uses_beta(form); }
    bool needs_x() const;
    bool needs_y() const;
    bool needs_generic() const;
    std::string statement() const;
};

const std::vector<CatalogEntry>& criterion_catalog();

/// Entry by id; throws Error(unknown_criterion) when absent.
const CatalogEntry& find_criterion(std::string_view id);

struct CriterionSpec {
    std::string catalog_id;
    std::optional<GFunctionId> g_id;
    std::optional<GFunctionId> h_id;
    double alpha = 1.0;
    double beta = 1.0;
    std::optional<PositiveScaling> x;
    std::optional<PositiveScaling> y;
};

struct CriterionOutcome {
    bool fired = false;
    double margin = 0.0;     // min over indices of lhs - rhs (inf when vacuous)
    std::size_t i = 0, j = 0;  // where the margin is attained
    bool via_pair_function = false;
};

/// Vector feeding `slot` for the given matrix and spec.
SumVector slot_vector(Slot slot, const ComplexMatrix& a, const CriterionSpec& spec);

CriterionOutcome evaluate_criterion(const CriterionSpec& spec, const ComplexMatrix& a, double tau = 0.0);

/// Same as evaluate_criterion with the slot vectors already computed.
CriterionOutcome evaluate_entry(const CatalogEntry& e, const std::vector<double>& d,
                                const std::vector<double>& g, const std::vector<double>& h,
                                double alpha, double beta, double tau = 0.0);

bool check_criterion(const CriterionSpec& spec, const ComplexMatrix& a, double tau = 0.0);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct NamedScaling {
    std::string label;
    PositiveScaling scaling;
};

struct NamedGFunction {
    std::string label;
    GFunctionId id;
};

struct SweepPlan {
    std::vector<std::string> ids;  // empty: whole catalog
    std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> betas{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<NamedScaling> xs;         // candidates for X
    std::vector<NamedScaling> ys;         // candidates for Y
    std::vector<NamedGFunction> generic;  // candidates for g and h
    double tau = 0.0;
};

/// Grids of five points, X from {ones, certificate of A}, Y from {ones,
/// inverse certificate of A^T}, and generic pairs drawn from r, c, r~, c~
/// and the two certificate-weighted sums.
SweepPlan default_sweep_plan(const ComplexMatrix& a);

struct SweepRow {
    std::string id;
    std::string g_label, h_label, x_label, y_label;
    std::optional<double> alpha, beta;
    bool fired = false;
    double margin = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> fired_ids;  // distinct ids in catalog order
    bool certifies_gdd = false;
    std::optional<double> best_margin;   // largest margin among fired rows
    std::optional<double> min_margin;    // smallest margin among fired rows
};

SweepResult sweep_criteria(const ComplexMatrix& a, const SweepPlan& plan);

}  // namespace gddkit
