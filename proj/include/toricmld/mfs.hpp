#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toricmld/exactmath.hpp"
#include "toricmld/lattice.hpp"
#include "toricmld/toric.hpp"

namespace toricmld {

// A toric Mori fiber space X -> Y in normal form: N_X ⊆ Q^{m+n}, F is the
// projection onto the last n coordinates, and Y is the affine cone over the
// positive orthant of R^n with lattice N_Y.
//
// Nothing is enforced at construction; validate() reports every structural
// condition separately.
struct ToricMfs {
  ToricVariety total;
  ToricVariety base;
  IntMat projection;
  std::size_t fiber_dim = 0;
  std::size_t base_dim = 0;
  // Rays that make_mfs had to shorten to make them primitive in N_X.
  std::vector<std::string> notes;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool overall = false;

  const ValidationCheck* find(const std::string& name) const;
  std::vector<std::string> failed() const;
};

// Stable names of the checks, in report order.
namespace check {
inline constexpr const char* kNormalForm = "normal_form";
inline constexpr const char* kRayCount = "ray_count";
inline constexpr const char* kRayPlacement = "ray_placement";
inline constexpr const char* kFiberSimplex = "fiber_simplex";
inline constexpr const char* kConeStructure = "cone_structure";
inline constexpr const char* kLatticeSurjective = "lattice_surjective";
inline constexpr const char* kRelativePicardRank = "relative_picard_rank";
inline constexpr const char* kProperSupport = "proper_support";
inline constexpr const char* kRaysPrimitive = "rays_primitive";
}  // namespace check

ValidationReport validate(const ToricMfs& mfs);

struct FiberData {
  ToricVariety fiber;
  // Kernel rays restricted to the first m coordinates, in X's ray order.
  std::vector<RatVec> simplex_vertices;
  std::vector<std::size_t> ray_indices;
  RatVec barycentric_of_origin;
};

// N_Z = N_X ∩ (R^m × 0), written in the first m coordinates.
Lattice fiber_lattice(const Lattice& total, std::size_t fiber_dim);
// F(N_X) ⊆ Q^n.
Lattice image_lattice(const Lattice& total, std::size_t fiber_dim);
// Affine toric variety over the positive orthant of Q^n with the given lattice.
ToricVariety affine_base(const Lattice& base);

// Throws InvalidMfs if validate() fails.
FiberData generic_fiber(const ToricMfs& mfs);
// Invariant factors of N_Z / ⟨P_0..P_m⟩.
IntVec generic_fiber_group(const ToricMfs& mfs);

// X from an explicit fan. The base lattice defaults to F(N_X).
ToricMfs mfs_from_fan(std::size_t fiber_dim, std::size_t base_dim, Lattice total_lattice, std::vector<RatVec> rays,
                      const std::vector<std::vector<std::size_t>>& max_cones,
                      std::optional<Lattice> base_lattice = std::nullopt);

// Builds the fan with rays (P_i; 0) for the m+1 fiber rays and e_{m+k} for the
// base, and maximal cones "all rays but P_i" for i = 0..m. The lattice is Z^{m+n}
// plus the extra generators; rays are primitivized in it (recorded in notes).
// `base_multiples`, when non-empty, must match the derived c_k with
// F(P_{m+k}) = c_k · (primitive generator of the k-th ray of Y).
//
// Throws DimensionMismatch, DegenerateSimplex, BadParameter, NonSurjective.
ToricMfs make_mfs(std::size_t fiber_dim, std::size_t base_dim, const std::vector<RatVec>& fiber_rays,
                  const std::vector<BigInt>& base_multiples, const std::vector<RatVec>& extra_generators);

// Derived c_k for each base ray of a validated mfs.
std::vector<Rat> base_multiples(const ToricMfs& mfs);

// Fiber triangle (1,0), (-(l-1),1), (-(l-1),-1) times A^2, divided by μ_r with
// r = l^4 + 1 and weights (l, l^2; 1, 1). Throws BadParameter for l < 2.
ToricMfs example_family(long l);
BigInt example_family_order(long l);

struct SweepRow {
  long l = 0;
  BigInt r;
  Rat mld_total;
  Rat mld_base;
  // mld(Y) / mld(X)^4, floating point.
  double ratio_approx = 0;
  // mld(X) >= 9/(20 l).
  bool bound_check = false;
};

// Rows are computed concurrently and returned in order of l.
std::vector<SweepRow> sweep_family(long l_min, long l_max);

// Least-squares slope of log mld(Y) against log mld(X) over rows with
// l in [l_from, l_to]; nullopt with fewer than two such rows.
std::optional<double> loglog_slope(const std::vector<SweepRow>& rows, long l_from, long l_to);

}  // namespace toricmld
