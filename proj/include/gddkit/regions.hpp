#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gddkit/gfun.hpp"
#include "gddkit/matrix.hpp"

namespace gddkit {

enum class RegionKind { disk, cassini, powermean };

const char* to_string(RegionKind k) noexcept;

/// disk:      |z - a| <= rho
/// cassini:   |z - a||z - b| <= rho
/// powermean: |z - a|^alpha |z - b|^(1-alpha) <= rho
struct Region {
    RegionKind kind = RegionKind::disk;
    cplx a{};
    cplx b{};
    double rho = 0.0;
    double alpha = 1.0;
    std::size_t i = 0, j = 0;  // index (disk) or ordered pair

    double lhs(cplx z) const;
    /// Slack tol * (1 + |z| + max(|a|, |b|)).
    bool contains(cplx z, double tol = 0.0) const;
    /// Center-radius bounding disk for each center.
    double outer_radius() const;
};

/// Catalog definitions 5.1 .. 5.5.
enum class Definition { d5_1, d5_2, d5_3, d5_4, d5_5 };

std::string to_string(Definition d);
/// Accepts "5.1" .. "5.5".
Definition parse_definition(std::string_view s);
int max_k(Definition d);

struct BBox {
    cplx lo{};
    cplx hi{};

    double width() const { return hi.real() - lo.real(); }
    double height() const { return hi.imag() - lo.imag(); }
};

struct RegionProvenance {
    Definition definition = Definition::d5_5;
    int k = 1;
    int form = 1;
    std::optional<double> alpha, beta;
    std::string g_label, h_label, x_label, y_label;
};

struct RegionSet {
    std::vector<Region> regions;
    RegionProvenance provenance;
    BBox gershgorin;  // bounding box of the classical disks of the source matrix

    bool contains(cplx z, double tol = 0.0) const;
    /// First region holding z, if any.
    std::optional<std::size_t> witness(cplx z, double tol = 0.0) const;
};

/// Region set for kind k of definition `def`. For 5.1, k is 1..27 and g, h are
/// the generic pair; for 5.2 .. 5.5, k is 1..31 and g, h are the definition's
/// (row, column) pair. n = 1 gives an empty union for pair-indexed kinds.
RegionSet build_region_set(const ComplexMatrix& a, Definition def, int k, const SumVector& g, const SumVector& h,
                           double alpha = 1.0, double beta = 1.0);

/// Same, with an explicit form and arbitrary slot vectors (used for the
/// identities in which both slots carry the same vector).
RegionSet build_form_region_set(const ComplexMatrix& a, int form, const std::vector<double>& g,
                                const std::vector<double>& h, double alpha, double beta);

/// The (row, column) pair a definition uses: (r~^X, c~^Y), (r^X, c^Y),
/// (r~, c~) or (r, c). Definition 5.1 takes the given G-functions (default r, c).
struct DefinitionInputs {
    std::optional<PositiveScaling> x, y;
    std::optional<GFunctionId> g, h;
};

std::pair<SumVector, SumVector> definition_vectors(const ComplexMatrix& a, Definition def,
                                                   const DefinitionInputs& in = {});

RegionSet build_catalog_set(const ComplexMatrix& a, Definition def, int k, double alpha, double beta,
                            const DefinitionInputs& in = {});

// ---------------------------------------------------------------------------
// Rasterization
// ---------------------------------------------------------------------------

struct GridMask {
    BBox bbox;
    std::size_t nx = 0, ny = 0;
    std::vector<std::uint8_t> bits;  // row-major, row 0 at the lowest imaginary part

    bool at(std::size_t col, std::size_t row) const { return bits[row * nx + col] != 0; }
    cplx cell_center(std::size_t col, std::size_t row) const;
    std::optional<std::pair<std::size_t, std::size_t>> cell_of(cplx z) const;
    std::size_t count() const;
    double fill_fraction() const;
};

/// Union of region bounding disks and the Gershgorin box, inflated by 10%.
/// Degenerate boxes become squares.
BBox default_bbox(const std::vector<const RegionSet*>& sets);
BBox normalize_bbox(BBox box);

GridMask rasterize(const RegionSet& s, std::optional<BBox> bbox, std::size_t nx, std::size_t ny);

/// Finite intersection of sampled sets: an outer approximation of the
/// intersection over all parameters.
struct Intersection {
    std::vector<RegionSet> sets;
    static constexpr const char* label = "outer approximation";

    bool contains(cplx z, double tol = 0.0) const;
    GridMask rasterize(std::optional<BBox> bbox, std::size_t nx, std::size_t ny) const;
};

Intersection approx_intersection(std::vector<RegionSet> sets);

struct SamplingPlan {
    std::vector<double> alphas;  // default 33-point grid
    std::vector<double> betas;
    std::vector<PositiveScaling> xs;
    std::vector<PositiveScaling> ys;
};

std::vector<double> uniform_grid(std::size_t points);

/// 33-point grids, X and Y from {ones, certificate, `random_count` random
/// log-uniform scalings in [1e-3, 1e3]} drawn from `seed`.
SamplingPlan default_sampling_plan(const ComplexMatrix& a, std::uint64_t seed, std::size_t random_count = 16);

/// Every set of kind k over the plan's parameters, intersected.
Intersection sampled_intersection(const ComplexMatrix& a, Definition def, int k, const SamplingPlan& plan,
                                  const DefinitionInputs& in = {});

struct ContainmentResult {
    bool holds = true;
    std::size_t offending = 0;
    std::size_t sampled = 0;
};

/// Sampled test of Sa within Sb: cell centers plus region centers.
ContainmentResult check_containment(const RegionSet& sa, const RegionSet& sb, const BBox& bbox, std::size_t nx,
                                    std::size_t ny);

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// One scanline per line, top row first, cells as 0/1.
void write_csv(std::ostream& os, const GridMask& m);

struct SvgLayer {
    const RegionSet* set = nullptr;  // may be null for an intersection layer
    GridMask mask;
    std::string label;
    std::string color;
};

void write_svg(std::ostream& os, const std::vector<SvgLayer>& layers, const std::vector<cplx>& points = {});

}  // namespace gddkit
