#pragma once

#include <cstddef>
#include <cstdint>

#include "toricmld/exactmath.hpp"
#include "toricmld/toric.hpp"

namespace toricmld {

enum class MldMethod { Parallelepiped, BruteForce };

struct MldResult {
  Rat value;
  RatVec witness;
  std::size_t cone_index = 0;
  MldMethod method = MldMethod::Parallelepiped;
};

// Minimal log discrepancy of a Q-factorial toric variety.
//
// For each maximal cone σ = ⟨P_1..P_d⟩ the cosets N/⟨P_i⟩ are enumerated with
// barycentric coordinates in [0,1)^d. A lattice point of σ with ℓ < 1 has all
// coordinates below 1, so it is one of these representatives; every other
// point dominates a representative or a ray generator, where ℓ = 1. Hence
//
//   mld = min(1, min over nonzero representatives of Σ coordinates).
//
// The witness is the achiever with the lexicographically smallest ambient
// coordinates, reported in the lowest-index cone containing it.
//
// Throws EmptyFan, NonSimplicial (a maximal cone that is not full-dimensional),
// TooLarge.
MldResult mld(const ToricVariety& x);

// Affine variety A^n / μ_r with weights a: lattice Z^n + (1/r)·a over the
// positive orthant. Throws InvalidWeights for r <= 0.
ToricVariety cyclic_quotient(const BigInt& r, const IntVec& weights);
Rat mld_cyclic(const BigInt& r, const IntVec& weights);

constexpr std::uint64_t kDefaultBruteForceGuard = 10'000'000;

// Guard from the TORICMLD_GUARD environment variable, else the default.
std::uint64_t brute_force_guard();

// Independent oracle: closes N/Z^d under addition with a hash set, then scans
// every integer translate of every class inside the bounding box of each
// cone's parallelotope {Σ x_i·P_i : 0 <= x_i <= cap}, testing membership by
// exact barycentric solve. Throws TooLarge when the scan would exceed `guard`
// points, BadParameter if cap < 1.
MldResult mld_bruteforce(const ToricVariety& x, const Rat& cap = Rat(1), std::uint64_t guard = brute_force_guard());

}  // namespace toricmld
