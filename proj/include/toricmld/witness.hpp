#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricmld/exactmath.hpp"
#include "toricmld/mfs.hpp"
#include "toricmld/mld.hpp"

namespace toricmld {

// The real number coefficient · radicand^(1/degree), kept symbolic so that
// comparisons stay exact: x <= c·r^(1/k) iff x^k <= c^k·r for x, c >= 0.
struct RadicalBound {
  Rat coefficient = 1;
  Rat radicand = 1;
  unsigned degree = 1;

  bool admits(const Rat& x) const;
  double approx() const;
  std::string to_string() const;
};

// Distance between a and b on R/Z.
Rat toroidal_distance(const Rat& a, const Rat& b);

// First pair i < j (smallest j, then smallest i) whose coordinatewise toroidal
// distances are all <= threshold. Points are bucketed into a grid whose cells
// are at least `threshold` wide, so only neighbouring cells are compared.
// Throws NoPairFound.
std::pair<std::size_t, std::size_t> dirichlet_pair(const std::vector<RatVec>& points, const RadicalBound& threshold);
// Threshold t^(-1/m), m = dimension of the points.
std::pair<std::size_t, std::size_t> dirichlet_pair(const std::vector<RatVec>& points, const Rat& t);
// Same selection rule by comparing all pairs.
std::optional<std::pair<std::size_t, std::size_t>> dirichlet_pair_all_pairs(const std::vector<RatVec>& points,
                                                                            const RadicalBound& threshold);

// ε ↦ (ε / (C_Z + 1))^(m+1), where C_Z bounds every fiber cone functional by
// C_Z·max|x_i|.
struct EffectiveDelta {
  Rat fiber_constant;
  std::size_t fiber_dim = 0;

  Rat delta_of(const Rat& epsilon) const;
};

// Coefficients w_σ of the fiber functionals ℓ_σ(v) = v·w_σ, one per fiber cone.
std::vector<RatVec> fiber_functionals(const FiberData& fiber);
EffectiveDelta effective_delta(const FiberData& fiber);

// P ∈ N_X with F(P) = A and fiber coordinates in [0,1).
// Throws ZeroVector, NotInBaseLattice.
RatVec lift_to_total(const ToricMfs& mfs, const RatVec& base_point);

struct WitnessReport {
  RatVec base_point;
  RatVec lift;
  Rat delta;
  // floor(δ^(-m/(m+1))); the multiples k = 0..multiples-1 are used, with
  // multiples = max(2, t + 1).
  BigInt t;
  std::size_t multiples = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  RatVec point;
  RatVec fiber_part;
  std::size_t cone_index = 0;
  Rat log_discrepancy;
  RadicalBound bound;
  bool bound_satisfied = false;
  bool standard_fiber = false;
};

// Multiples of a lift of the mld(Y) witness, reduced mod Z^m in the fiber, are
// paired by the box principle; their difference, re-centred into
// [-1/2, 1/2)^m in the fiber, is a point of X with small log discrepancy.
//
// Throws InvalidMfs, PreconditionFailed (mld(Y) > δ), TooLarge.
WitnessReport find_witness(const ToricMfs& mfs, const Rat& delta);
// δ = mld(Y).
WitnessReport find_witness(const ToricMfs& mfs);

bool is_standard_simplex(const std::vector<RatVec>& vertices);

struct EpsDeltaCertificate {
  MldResult mld_total;
  MldResult mld_base;
  // C_Z + 1 (2m for the standard simplex) and the exponent m+1.
  Rat constant;
  unsigned exponent = 0;
  // mld(X)^(m+1) <= constant^(m+1) · mld(Y).
  Rat lhs;
  Rat rhs;
  bool holds = false;
};

// Throws InvalidMfs.
EpsDeltaCertificate check_eps_delta(const ToricMfs& mfs);

}  // namespace toricmld
