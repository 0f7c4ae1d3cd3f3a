#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "toricmld/exactmath.hpp"

namespace toricmld {

// A finite-index overlattice N of Z^d, stored in fixed ambient coordinates.
//
// The basis is canonical: it is the row Hermite normal form of D·N scaled back
// by 1/D, so two Lattice values compare equal iff they describe the same set.
class Lattice {
 public:
  static Lattice standard(std::size_t dim);
  // Smallest lattice containing Z^d and every generator.
  static Lattice from_generators(std::size_t dim, const std::vector<RatVec>& generators);

  std::size_t dim() const noexcept { return dim_; }
  const RatMat& basis() const noexcept { return basis_; }
  // Integer matrix K with basis·K = I; the N-coordinates of v are v·K.
  const IntMat& inverse_basis() const noexcept { return inverse_; }

  RatVec coordinates(const RatVec& v) const;
  bool contains(const RatVec& v) const;
  // [N : Z^d].
  const BigInt& index_over_standard() const noexcept { return index_; }
  // Smallest D > 0 with D·N ⊆ Z^d.
  const BigInt& exponent() const noexcept { return exponent_; }

  // Primitive generator of the ray through v. Throws ZeroVector, NotInLattice.
  RatVec primitivize(const RatVec& v) const;

  bool operator==(const Lattice& other) const { return dim_ == other.dim_ && basis_ == other.basis_; }

 private:
  Lattice() = default;

  std::size_t dim_ = 0;
  RatMat basis_;
  IntMat inverse_;
  BigInt index_;
  BigInt exponent_;
};

// The finite group L / ⟨B⟩ for a full-rank sublattice with basis rows B.
//
// Cosets are written in B-coordinates, i.e. as y with point = y·B. Every coset
// has exactly one representative with y ∈ [0,1)^d, and all such y share the
// denominator `denominator`, so each representative is stored as an integer
// numerator vector in [0, denominator)^d.
struct QuotientGroup {
  RatMat sublattice;
  BigInt order;
  // Smith invariant factors of L/⟨B⟩ (d entries, divisibility chain).
  IntVec invariant_factors;
  std::int64_t denominator = 1;
  // One generator per invariant factor > 1, as numerators over `denominator`.
  std::vector<std::vector<std::int64_t>> generators;
  std::vector<std::int64_t> moduli;
};

// Throws NotSublattice if a row of B is not in L, Degenerate if rows are
// dependent, TooLarge if the group does not fit 64-bit enumeration.
QuotientGroup quotient_group(const Lattice& lattice, const RatMat& sublattice);

// Single-pass stream over the cosets of a QuotientGroup, optionally restricted
// to a contiguous block [first, last) of the mixed-radix coset numbering. The
// block form lets callers split one coset space into disjoint sub-streams.
//
//   CosetStream s(group);
//   while (s.next()) use(s.numerators());
class CosetStream {
 public:
  explicit CosetStream(QuotientGroup group);
  CosetStream(QuotientGroup group, std::uint64_t first, std::uint64_t last);

  bool next();

  const QuotientGroup& group() const noexcept { return group_; }
  std::uint64_t position() const noexcept { return pos_; }
  // B-coordinates times group().denominator, each in [0, denominator).
  const std::vector<std::int64_t>& numerators() const noexcept { return current_; }
  // Sum of B-coordinates, as numerator over group().denominator.
  std::int64_t coordinate_sum() const noexcept;
  RatVec coords() const;
  RatVec point() const;

 private:
  void seek(std::uint64_t index);

  QuotientGroup group_;
  std::uint64_t pos_ = 0;
  std::uint64_t last_ = 0;
  bool started_ = false;
  std::vector<std::uint64_t> digits_;
  std::vector<std::int64_t> current_;
};

// Representatives of every coset of ⟨B⟩ in L, with B-coordinates in [0,1)^d.
CosetStream quotient_reps(const Lattice& lattice, const RatMat& sublattice);

}  // namespace toricmld
