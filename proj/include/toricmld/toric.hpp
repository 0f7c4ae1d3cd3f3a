#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toricmld/exactmath.hpp"
#include "toricmld/lattice.hpp"

namespace toricmld {

// A cone spanned by linearly independent generators (rows of `generators`).
class SimplicialCone {
 public:
  // Throws NonSimplicial if the generators are dependent.
  SimplicialCone(std::vector<std::size_t> ray_indices, RatMat generators);

  const std::vector<std::size_t>& ray_indices() const noexcept { return ray_indices_; }
  const RatMat& generators() const noexcept { return generators_; }
  std::size_t dim() const noexcept { return generators_.rows(); }
  std::size_t ambient_dim() const noexcept { return generators_.cols(); }
  bool full_dimensional() const noexcept { return dim() == ambient_dim(); }

  // Coefficients x with Σ x_i·P_i = v, or nullopt when v is outside the span.
  // Throws DimensionMismatch.
  std::optional<RatVec> barycentric(const RatVec& v) const;
  bool contains(const RatVec& v) const;

 private:
  std::vector<std::size_t> ray_indices_;
  RatMat generators_;
  std::vector<std::size_t> pivot_cols_;
  RatMat pivot_inverse_;
};

// Simplicial fan given by its rays and maximal cones. Cones are assumed to meet
// along common faces; that is not checked.
class Fan {
 public:
  Fan(std::size_t ambient_dim, std::vector<RatVec> rays, const std::vector<std::vector<std::size_t>>& max_cones);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<RatVec>& rays() const noexcept { return rays_; }
  const std::vector<SimplicialCone>& cones() const noexcept { return cones_; }
  std::vector<std::vector<std::size_t>> cone_indices() const;

 private:
  std::size_t ambient_dim_;
  std::vector<RatVec> rays_;
  std::vector<SimplicialCone> cones_;
};

class ToricVariety {
 public:
  // Throws NotInLattice or BadParameter when a ray is not a primitive lattice
  // vector.
  ToricVariety(Lattice lattice, Fan fan);
  // Skips the ray checks so that a validator can report them instead.
  static ToricVariety unchecked(Lattice lattice, Fan fan);

  const Lattice& lattice() const noexcept { return lattice_; }
  const Fan& fan() const noexcept { return fan_; }
  std::size_t dim() const noexcept { return lattice_.dim(); }

 private:
  struct NoCheck {};
  ToricVariety(Lattice lattice, Fan fan, NoCheck);

  Lattice lattice_;
  Fan fan_;
};

std::optional<RatVec> barycentric(const SimplicialCone& cone, const RatVec& v);

// Lowest-index maximal cone containing v.
std::optional<std::size_t> find_containing_cone(const ToricVariety& x, const RatVec& v);
std::optional<std::size_t> find_containing_cone(const Fan& fan, const RatVec& v);

// Value of the piecewise-linear function that is 1 on every primitive ray
// generator; nullopt when v is outside the support. Throws ZeroVector,
// NotInLattice.
std::optional<Rat> log_discrepancy(const ToricVariety& x, const RatVec& v);

// Weights y with Σ y_i·v_i = 0 and Σ y_i = 1 for d+1 affinely independent
// points in R^d; nullopt if they are affinely dependent.
std::optional<RatVec> origin_weights(const std::vector<RatVec>& vertices);

// For the boundary fan of a simplex (d+1 rays, all d-subsets as cones): true
// iff the origin is strictly inside the simplex. Throws WrongShape otherwise.
bool is_complete(const Fan& fan);

}  // namespace toricmld
