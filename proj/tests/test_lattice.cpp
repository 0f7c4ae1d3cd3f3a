#include "doctest.h"
#include "support.hpp"

using namespace toricmld;
using testing::R;

namespace {

Lattice family_lattice(long l) {
  const long r = l * l * l * l + 1;
  return Lattice::from_generators(4, {{R(l, r), R(l * l, r), R(1, r), R(1, r)}});
}

// Every element of L/⟨B⟩ written in B-coordinates reduced into [0,1)^d, by
// closing the lattice basis rows under addition.
std::set<RatVec> coset_oracle(const Lattice& lattice, const RatMat& b) {
  RatMat inv = inverse(b);
  auto reduce = [&](const RatVec& v) {
    RatVec y = v * inv;
    for (auto& c : y) c = frac(c);
    return y;
  };
  std::set<RatVec> seen{RatVec(lattice.dim(), 0)};
  std::vector<RatVec> queue{RatVec(lattice.dim(), 0)};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t r = 0; r < lattice.dim(); ++r) {
      RatVec y = reduce(queue[head] * b + lattice.basis().row_vector(r));
      if (seen.insert(y).second) queue.push_back(y);
    }
  return seen;
}

std::set<RatVec> stream_coords(const Lattice& lattice, const RatMat& b) {
  std::set<RatVec> out;
  CosetStream s = quotient_reps(lattice, b);
  while (s.next()) {
    RatVec y = s.coords();
    for (const auto& c : y) REQUIRE((c >= 0 && c < 1));
    REQUIRE(s.point() == y * b);
    REQUIRE(lattice.contains(s.point()));
    REQUIRE(out.insert(y).second);
  }
  return out;
}

}  // namespace

TEST_CASE("from_generators") {
  SUBCASE("no generators gives Z^d") {
    auto l = Lattice::from_generators(2, {});
    CHECK(l.basis() == RatMat::identity(2));
    CHECK(l == Lattice::standard(2));
  }
  SUBCASE("half point gives the index-2 overlattice") {
    auto l = Lattice::from_generators(2, {{R(1, 2), R(1, 2)}});
    CHECK(l.index_over_standard() == 2);
    CHECK(l.exponent() == 2);
  }
  SUBCASE("the l=2 family lattice has index 17") {
    auto l = Lattice::from_generators(4, {{R(2, 17), R(4, 17), R(1, 17), R(1, 17)}});
    CHECK(l.index_over_standard() == 17);
    CHECK(l == family_lattice(2));
  }
  SUBCASE("the l=3 family lattice has index 82") { CHECK(family_lattice(3).index_over_standard() == 82); }
  SUBCASE("generators of wrong length are rejected") {
    CHECK_THROWS_AS(Lattice::from_generators(2, {{R(1, 2)}}), Error);
  }
}

TEST_CASE("membership") {
  auto z2 = Lattice::standard(2);
  CHECK(z2.contains({R(1), R(3)}));
  CHECK_FALSE(z2.contains({R(1, 2), R(0)}));
  CHECK(family_lattice(2).contains({R(2, 17), R(4, 17), R(1, 17), R(1, 17)}));
  CHECK_FALSE(family_lattice(2).contains({R(1, 17), R(0), R(0), R(0)}));
  CHECK(z2.index_over_standard() == 1);
}

TEST_CASE("canonical basis does not depend on the generators chosen") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(1, 4));
    Lattice l = testing::random_overlattice(d, 30, 400);
    // Mix the basis by a unimodular matrix and add integer noise.
    RatMat mixed = to_rat(testing::random_unimodular(d)) * l.basis();
    std::vector<RatVec> gens = mixed.to_rows();
    RatVec noise(d);
    for (auto& x : noise) x = R(testing::uniform(-3, 3));
    gens.push_back(noise);
    Lattice again = Lattice::from_generators(d, gens);
    REQUIRE(again == l);
    REQUIRE(abs(determinant(l.basis())) * Rat(l.index_over_standard()) == 1);
    REQUIRE(to_rat(l.inverse_basis()) == inverse(l.basis()));
  }
}

TEST_CASE("primitivize") {
  auto z2 = Lattice::standard(2);
  CHECK(z2.primitivize({R(2), R(4)}) == RatVec{R(1), R(2)});
  CHECK(z2.primitivize({R(0), R(-3)}) == RatVec{R(0), R(-1)});
  auto a1 = Lattice::from_generators(2, {{R(1, 2), R(1, 2)}});
  CHECK(a1.primitivize({R(1), R(1)}) == RatVec{R(1, 2), R(1, 2)});
  CHECK_THROWS_AS(z2.primitivize({R(0), R(0)}), Error);
  CHECK_THROWS_AS(z2.primitivize({R(1, 2), R(0)}), Error);
}

TEST_CASE("quotient representatives of small examples") {
  SUBCASE("trivial quotient") {
    auto reps = stream_coords(Lattice::standard(2), RatMat::identity(2));
    CHECK(reps == std::set<RatVec>{{R(0), R(0)}});
  }
  SUBCASE("index 2") {
    auto l = Lattice::from_generators(2, {{R(1, 2), R(1, 2)}});
    auto reps = stream_coords(l, RatMat::identity(2));
    CHECK(reps == std::set<RatVec>{{R(0), R(0)}, {R(1, 2), R(1, 2)}});
  }
  SUBCASE("l=2 lattice over Z^4: multiples of the generator") {
    std::set<RatVec> expected;
    for (long k = 0; k < 17; ++k)
      expected.insert({frac(R(2 * k, 17)), frac(R(4 * k, 17)), frac(R(k, 17)), frac(R(k, 17))});
    auto reps = stream_coords(family_lattice(2), RatMat::identity(4));
    CHECK(reps.size() == 17);
    CHECK(reps == expected);
  }
}

TEST_CASE("quotient representatives agree with closure on random sublattices") {
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = static_cast<std::size_t>(testing::uniform(1, 3));
    Lattice l = testing::random_overlattice(d, 12, 60);
    RatMat b;
    while (true) {
      b = to_rat(testing::random_unimodular(d)) * l.basis();
      for (std::size_t r = 0; r < d; ++r) {
        const long k = testing::uniform(1, 3);
        for (std::size_t c = 0; c < d; ++c) b(r, c) *= k;
      }
      b = to_rat(IntMat(testing::random_unimodular(d))) * b;
      if (determinant(b) != 0) break;
    }
    auto group = quotient_group(l, b);
    auto reps = stream_coords(l, b);
    REQUIRE(reps == coset_oracle(l, b));
    REQUIRE(BigInt(static_cast<unsigned long>(reps.size())) == group.order);
  }
}

TEST_CASE("coset stream blocks partition the numbering") {
  auto l = family_lattice(3);
  auto group = quotient_group(l, RatMat::identity(4));
  const std::uint64_t order = group.order.get_ui();
  std::set<RatVec> all, pieces;
  CosetStream whole(group);
  while (whole.next()) all.insert(whole.coords());
  const std::uint64_t cuts[] = {0, 1, 30, 31, 81, order};
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    CosetStream part(group, cuts[i], cuts[i + 1]);
    std::uint64_t count = 0;
    while (part.next()) {
      REQUIRE(pieces.insert(part.coords()).second);
      ++count;
    }
    REQUIRE(count == cuts[i + 1] - cuts[i]);
  }
  CHECK(pieces == all);
}

TEST_CASE("quotient_group rejects bad sublattices") {
  auto z2 = Lattice::standard(2);
  CHECK_THROWS_AS(quotient_group(z2, RatMat{{R(1, 2), R(0)}, {R(0), R(1)}}), Error);
  CHECK_THROWS_AS(quotient_group(z2, RatMat{{R(1), R(1)}, {R(2), R(2)}}), Error);
}
