#pragma once

// Test-only oracles and generators. The oracles use textbook definitions
// (Laplace expansion, determinantal divisors, naive closure) and share no code
// paths with the library routines they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "toricmld/exactmath.hpp"
#include "toricmld/lattice.hpp"
#include "toricmld/mfs.hpp"
#include "toricmld/toric.hpp"

namespace testing {

using namespace toricmld;

// mld(X) of example_family(l), l = 2..12, frozen from an independent
// brute-force computation.
inline const std::map<long, Rat> kFamilyMldTotal = {
    {2, make_rat(12, 17)},      {3, make_rat(16, 41)},     {4, make_rat(70, 257)},
    {5, make_rat(66, 313)},     {6, make_rat(224, 1297)},  {7, make_rat(176, 1201)},
    {8, make_rat(522, 4097)},   {9, make_rat(370, 3281)},  {10, make_rat(1012, 10001)},
    {11, make_rat(672, 7321)},  {12, make_rat(1742, 20737)},
};

inline Rat R(long p, long q = 1) { return make_rat(BigInt(p), BigInt(q)); }

inline RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

// Determinant by cofactor expansion along the first row.
inline Rat laplace_det(const std::vector<RatVec>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  if (n == 1) return rows[0][0];
  Rat total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (rows[0][c] == 0) continue;
    std::vector<RatVec> minor;
    for (std::size_t r = 1; r < n; ++r) {
      RatVec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(rows[r][k]);
      minor.push_back(std::move(row));
    }
    Rat term = rows[0][c] * laplace_det(minor);
    total += (c % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

inline std::vector<RatVec> rows_of(const RatMat& m) { return m.to_rows(); }

inline std::vector<RatVec> rows_of(const IntMat& m) {
  std::vector<RatVec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_rat(m.row_vector(r)));
  return out;
}

// Solution x of Σ x_i·rows_i = v by Cramer's rule; nullopt if singular.
inline std::optional<RatVec> cramer(const std::vector<RatVec>& rows, const RatVec& v) {
  const Rat det = laplace_det(rows);
  if (det == 0) return std::nullopt;
  RatVec x(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto replaced = rows;
    replaced[i] = v;
    x[i] = laplace_det(replaced) / det;
  }
  return x;
}

// ℓ(v) recomputed with Cramer's rule over every maximal cone; nullopt when v is
// outside the support.
inline std::optional<Rat> independent_ld(const Fan& fan, const RatVec& v) {
  for (const auto& idx : fan.cone_indices()) {
    std::vector<RatVec> rows;
    for (auto i : idx) rows.push_back(fan.rays()[i]);
    auto x = cramer(rows, v);
    if (x && std::all_of(x->begin(), x->end(), [](const Rat& c) { return c >= 0; }))
      return std::accumulate(x->begin(), x->end(), Rat(0));
  }
  return std::nullopt;
}

inline BigInt gcd_of(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt a = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

// Invariant factors from determinantal divisors: s_k = d_k / d_{k-1}, with d_k
// the gcd of all k×k minors.
inline std::vector<BigInt> snf_oracle(const IntMat& m) {
  const std::size_t r = m.rows(), c = m.cols(), k_max = std::min(r, c);
  std::vector<BigInt> divisors{BigInt(1)};
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<BigInt> minors;
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<RatVec> sub;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          RatVec row;
          for (std::size_t j = 0; j < c; ++j)
            if (csel[j]) row.push_back(Rat(m(i, j)));
          sub.push_back(std::move(row));
        }
        minors.push_back(laplace_det(sub).get_num());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    divisors.push_back(gcd_of(minors));
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= k_max; ++k)
    out.push_back(divisors[k] == 0 ? BigInt(0) : BigInt(divisors[k] / divisors[k - 1]));
  return out;
}

// Row-style Hermite axioms: echelon, zero rows last, positive pivots, entries
// above each pivot in [0, pivot).
inline bool hnf_axioms(const IntMat& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false, first = true;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::optional<std::size_t> pivot;
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h(r, c) != 0) {
        pivot = c;
        break;
      }
    if (!pivot) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (!first && *pivot <= last_pivot) return false;
    if (h(r, *pivot) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, *pivot) < 0 || h(above, *pivot) >= h(r, *pivot)) return false;
    last_pivot = *pivot;
    first = false;
  }
  return true;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Product of random elementary integer operations.
inline IntMat random_unimodular(std::size_t d) {
  IntMat u = IntMat::identity(d);
  if (d < 2) {
    if (uniform(0, 1)) u(0, 0) = -1;
    return u;
  }
  for (int step = 0; step < 12; ++step) {
    std::size_t a = static_cast<std::size_t>(uniform(0, static_cast<long>(d) - 1));
    std::size_t b = static_cast<std::size_t>(uniform(0, static_cast<long>(d) - 2));
    if (b >= a) ++b;
    const long k = uniform(-2, 2);
    for (std::size_t c = 0; c < d; ++c) u(a, c) += BigInt(k) * u(b, c);
    if (uniform(0, 3) == 0)
      for (std::size_t c = 0; c < d; ++c) u(a, c) = -u(a, c);
  }
  return u;
}

// Overlattice Z^d + (1/r)·a with r <= max_r, optionally with a second generator
// while the index stays within max_index.
inline Lattice random_overlattice(std::size_t d, long max_r, long max_index) {
  while (true) {
    std::vector<RatVec> gens;
    const int count = uniform(0, 3) == 0 ? 2 : 1;
    for (int g = 0; g < count; ++g) {
      const long r = uniform(2, max_r);
      RatVec v(d);
      for (auto& x : v) x = R(uniform(0, r - 1), r);
      gens.push_back(std::move(v));
    }
    Lattice l = Lattice::from_generators(d, gens);
    if (l.index_over_standard() <= max_index) return l;
  }
}

// A simplicial fan with rays primitive in `lattice`: either the orthant cone,
// the fan of a simplex around the origin, or a random simplicial cone.
inline ToricVariety random_variety(const Lattice& lattice) {
  const std::size_t d = lattice.dim();
  const long kind = uniform(0, 2);
  std::vector<RatVec> rays;
  std::vector<std::vector<std::size_t>> cones;
  if (kind == 0 || d == 1) {
    for (std::size_t i = 0; i < d; ++i) {
      RatVec e(d, 0);
      e[i] = 1;
      rays.push_back(lattice.primitivize(e));
    }
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), 0);
    cones.push_back(all);
    if (d == 1 && uniform(0, 1)) {
      rays.push_back(lattice.primitivize(RatVec{R(-1)}));
      cones.push_back({1});
    }
  } else if (kind == 1) {
    // e_1..e_d and -(w_1..w_d) with positive weights: a complete simplicial fan.
    for (std::size_t i = 0; i < d; ++i) {
      RatVec e(d, 0);
      e[i] = 1;
      rays.push_back(lattice.primitivize(e));
    }
    RatVec last(d);
    for (auto& x : last) x = R(-uniform(1, 3));
    rays.push_back(lattice.primitivize(last));
    for (std::size_t k = 0; k <= d; ++k) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i <= d; ++i)
        if (i != k) s.push_back(i);
      cones.push_back(s);
    }
  } else {
    while (true) {
      rays.clear();
      std::vector<RatVec> rows;
      for (std::size_t i = 0; i < d; ++i) {
        RatVec v(d);
        for (auto& x : v) x = R(uniform(-2, 3));
        rows.push_back(v);
      }
      if (laplace_det(rows) == 0) continue;
      std::set<RatVec> distinct;
      for (auto& v : rows) {
        rays.push_back(lattice.primitivize(v));
        distinct.insert(rays.back());
      }
      if (distinct.size() == d) break;
    }
    std::vector<std::size_t> all(d);
    std::iota(all.begin(), all.end(), 0);
    cones.push_back(all);
  }
  return ToricVariety(lattice, Fan(d, std::move(rays), cones));
}

// Mori fiber space with standard-simplex fiber e_1..e_m, -(1,..,1) over
// A^n / G, with [N_X : Z^{m+n}] <= max_index. The extra generator always has
// a nonzero base part so that Y is singular.
inline ToricMfs random_standard_mfs(std::size_t m, std::size_t n, long max_index) {
  while (true) {
    const long r = uniform(2, max_index);
    RatVec gen(m + n);
    for (auto& x : gen) x = R(uniform(0, r - 1), r);
    bool base_nonzero = false;
    for (std::size_t k = m; k < m + n; ++k)
      if (gen[k] != 0) base_nonzero = true;
    if (!base_nonzero) continue;
    std::vector<RatVec> fiber;
    for (std::size_t i = 0; i < m; ++i) {
      RatVec e(m, 0);
      e[i] = 1;
      fiber.push_back(e);
    }
    fiber.push_back(RatVec(m, R(-1)));
    ToricMfs mfs = make_mfs(m, n, fiber, {}, {gen});
    if (mfs.total.lattice().index_over_standard() > max_index) continue;
    // Re-primitivization can shorten fiber rays; keep the standard simplex.
    bool standard = true;
    for (std::size_t i = 0; i <= m; ++i) {
      RatVec head(mfs.total.fan().rays()[i].begin(), mfs.total.fan().rays()[i].begin() + static_cast<long>(m));
      if (head != fiber[i]) standard = false;
    }
    if (standard) return mfs;
  }
}

// Image of X under the lattice automorphism v ↦ v·U of Z^d.
inline ToricVariety transform(const ToricVariety& x, const IntMat& u) {
  const RatMat ru = to_rat(u);
  std::vector<RatVec> gens;
  for (std::size_t r = 0; r < x.dim(); ++r) gens.push_back(x.lattice().basis().row_vector(r) * ru);
  std::vector<RatVec> rays;
  for (const auto& ray : x.fan().rays()) rays.push_back(ray * ru);
  return ToricVariety(Lattice::from_generators(x.dim(), gens), Fan(x.dim(), std::move(rays), x.fan().cone_indices()));
}

// Validator mutations of a valid mfs. Each breaks exactly one condition.

// Removes the last base ray and every reference to it.
inline ToricMfs drop_last_ray(const ToricMfs& mfs) {
  auto rays = mfs.total.fan().rays();
  const std::size_t gone = rays.size() - 1;
  rays.pop_back();
  auto cones = mfs.total.fan().cone_indices();
  for (auto& c : cones) c.erase(std::remove(c.begin(), c.end(), gone), c.end());
  return mfs_from_fan(mfs.fiber_dim, mfs.base_dim, mfs.total.lattice(), rays, cones, mfs.base.lattice());
}

// Refines N_Y by (1/2)·e_1 so that F(N_X) has index 2 in it.
inline ToricMfs break_surjectivity(const ToricMfs& mfs) {
  auto gens = mfs.base.lattice().basis().to_rows();
  RatVec half(mfs.base_dim, 0);
  half[0] = make_rat(1, 2);
  gens.push_back(half);
  return mfs_from_fan(mfs.fiber_dim, mfs.base_dim, mfs.total.lattice(), mfs.total.fan().rays(),
                      mfs.total.fan().cone_indices(), Lattice::from_generators(mfs.base_dim, gens));
}

// Translates every fiber ray by `shift` in fiber coordinate `axis`.
inline ToricMfs shift_fiber(const ToricMfs& mfs, std::size_t axis, long shift) {
  auto rays = mfs.total.fan().rays();
  for (auto& r : rays) {
    bool fiber = true;
    for (std::size_t k = mfs.fiber_dim; k < r.size(); ++k)
      if (r[k] != 0) fiber = false;
    if (fiber) r[axis] += shift;
  }
  return mfs_from_fan(mfs.fiber_dim, mfs.base_dim, mfs.total.lattice(), rays, mfs.total.fan().cone_indices(),
                      mfs.base.lattice());
}

}  // namespace testing
