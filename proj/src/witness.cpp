#include "toricmld/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace toricmld {

bool RadicalBound::admits(const Rat& x) const {
  if (x <= 0) return true;
  return pow(x, degree) <= pow(coefficient, degree) * radicand;
}

double RadicalBound::approx() const { return coefficient.get_d() * std::pow(radicand.get_d(), 1.0 / degree); }

std::string RadicalBound::to_string() const {
  std::string out = coefficient == 1 ? "" : coefficient.get_str() + "*";
  out += "(" + radicand.get_str() + ")^(1/" + std::to_string(degree) + ")";
  return out;
}

Rat toroidal_distance(const Rat& a, const Rat& b) {
  Rat d = frac(a - b);
  Rat other = Rat(1) - d;
  return d < other ? d : other;
}

namespace {

bool close(const RatVec& a, const RatVec& b, const RadicalBound& threshold) {
  for (std::size_t l = 0; l < a.size(); ++l)
    if (!threshold.admits(toroidal_distance(a[l], b[l]))) return false;
  return true;
}

// Largest g <= cap with g·threshold <= 1 (at least 1).
std::int64_t cells_per_axis(const RadicalBound& threshold) {
  constexpr std::int64_t kCap = std::int64_t{1} << 20;
  auto fits = [&](std::int64_t g) {
    // g·c·r^(1/k) <= 1  <=>  (g·c)^k·r <= 1
    return pow(Rat(BigInt(static_cast<long>(g))) * threshold.coefficient, threshold.degree) * threshold.radicand <= 1;
  };
  double est = 1.0 / threshold.approx();
  std::int64_t g = std::isfinite(est) ? static_cast<std::int64_t>(std::min<double>(est, kCap)) : kCap;
  g = std::max<std::int64_t>(g, 1);
  while (g > 1 && !fits(g)) --g;
  while (g < kCap && fits(g + 1)) ++g;
  return g;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> dirichlet_pair_all_pairs(const std::vector<RatVec>& points,
                                                                            const RadicalBound& threshold) {
  for (std::size_t j = 1; j < points.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (close(points[i], points[j], threshold)) return std::pair{i, j};
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> dirichlet_pair(const std::vector<RatVec>& points, const RadicalBound& threshold) {
  if (points.size() < 2) throw Error(ErrorCode::NoPairFound, "need at least two points");
  const std::size_t m = points.front().size();
  for (const auto& p : points)
    if (p.size() != m) throw Error(ErrorCode::DimensionMismatch, "points of differing dimension");

  if (points.size() <= 16) {
    if (auto p = dirichlet_pair_all_pairs(points, threshold)) return *p;
    throw Error(ErrorCode::NoPairFound, "no pair within the threshold");
  }

  // Cells are 1/g wide with g·threshold <= 1, so a qualifying pair always sits
  // in the same or adjacent cells (cyclically).
  const std::int64_t g = cells_per_axis(threshold);
  using Cell = std::vector<std::int64_t>;
  std::map<Cell, std::vector<std::size_t>> grid;
  auto cell_of = [&](const RatVec& p) {
    Cell c(m);
    for (std::size_t l = 0; l < m; ++l) c[l] = floor(frac(p[l]) * Rat(BigInt(static_cast<long>(g)))).get_si();
    return c;
  };

  std::vector<std::int64_t> offsets{0};
  if (g > 1) offsets.push_back(1);
  if (g > 2) offsets.push_back(g - 1);

  for (std::size_t j = 0; j < points.size(); ++j) {
    Cell home = cell_of(points[j]);
    std::optional<std::size_t> best;
    std::vector<std::size_t> digit(m, 0);
    while (true) {
      Cell c(m);
      for (std::size_t l = 0; l < m; ++l) c[l] = (home[l] + offsets[digit[l]]) % g;
      if (auto it = grid.find(c); it != grid.end())
        for (auto i : it->second) {
          if (best && i >= *best) break;
          if (close(points[i], points[j], threshold)) best = i;
        }
      std::size_t l = 0;
      for (; l < m; ++l) {
        if (++digit[l] < offsets.size()) break;
        digit[l] = 0;
      }
      if (l == m) break;
    }
    if (best) return {*best, j};
    grid[home].push_back(j);
  }
  throw Error(ErrorCode::NoPairFound, "no pair within the threshold");
}

std::pair<std::size_t, std::size_t> dirichlet_pair(const std::vector<RatVec>& points, const Rat& t) {
  if (t <= 0) throw Error(ErrorCode::BadParameter, "t must be positive");
  const unsigned m = points.empty() ? 1 : static_cast<unsigned>(points.front().size());
  return dirichlet_pair(points, RadicalBound{Rat(1), Rat(1) / t, m});
}

Rat EffectiveDelta::delta_of(const Rat& epsilon) const {
  return pow(epsilon / (fiber_constant + 1), static_cast<unsigned>(fiber_dim + 1));
}

std::vector<RatVec> fiber_functionals(const FiberData& fiber) {
  std::vector<RatVec> out;
  for (const auto& cone : fiber.fiber.fan().cones()) {
    RatMat inv = inverse(cone.generators());
    RatVec w(inv.rows(), 0);
    for (std::size_t r = 0; r < inv.rows(); ++r)
      for (std::size_t c = 0; c < inv.cols(); ++c) w[r] += inv(r, c);
    out.push_back(std::move(w));
  }
  return out;
}

EffectiveDelta effective_delta(const FiberData& fiber) {
  Rat best = 0;
  for (const auto& w : fiber_functionals(fiber)) {
    Rat s = 0;
    for (const auto& c : w) s += abs(c);
    if (s > best) best = s;
  }
  return {best, fiber.fiber.dim()};
}

RatVec lift_to_total(const ToricMfs& mfs, const RatVec& base_point) {
  const std::size_t m = mfs.fiber_dim;
  const std::size_t n = mfs.base_dim;
  const std::size_t d = m + n;
  if (base_point.size() != n) throw Error(ErrorCode::DimensionMismatch, "base point must have n coordinates");
  if (is_zero(base_point)) throw Error(ErrorCode::ZeroVector, "base point must be nonzero");
  if (!mfs.base.lattice().contains(base_point))
    throw Error(ErrorCode::NotInBaseLattice, to_string(base_point) + " is not in N_Y");

  const RatMat& basis = mfs.total.lattice().basis();
  BigInt scale = common_denominator(base_point);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < n; ++k) scale = lcm(scale, basis(r, m + k).get_den());
  IntMat image(d, n);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < n; ++k) image(r, k) = Rat(basis(r, m + k) * Rat(scale)).get_num();
  IntVec target(n);
  for (std::size_t k = 0; k < n; ++k) target[k] = Rat(base_point[k] * Rat(scale)).get_num();

  // Solve x·H = target against the echelon rows of H = U·image.
  HermiteForm h = hnf(image);
  IntVec x(h.rank, 0);
  IntVec residual = target;
  std::size_t col = 0;
  for (std::size_t r = 0; r < h.rank; ++r) {
    while (h.h(r, col) == 0) ++col;
    if (residual[col] % h.h(r, col) != 0)
      throw Error(ErrorCode::NotInBaseLattice, to_string(base_point) + " is not in F(N_X)");
    x[r] = residual[col] / h.h(r, col);
    for (std::size_t k = 0; k < n; ++k) residual[k] -= x[r] * h.h(r, k);
  }
  if (std::any_of(residual.begin(), residual.end(), [](const BigInt& v) { return v != 0; }))
    throw Error(ErrorCode::NotInBaseLattice, to_string(base_point) + " is not in F(N_X)");

  RatVec lift(d, 0);
  for (std::size_t r = 0; r < h.rank; ++r)
    for (std::size_t i = 0; i < d; ++i) {
      BigInt c = x[r] * h.u(r, i);
      if (c == 0) continue;
      for (std::size_t col2 = 0; col2 < d; ++col2) lift[col2] += Rat(c) * basis(i, col2);
    }
  // Z^m ⊆ N_Z, so the fiber part may be reduced into [0,1).
  for (std::size_t l = 0; l < m; ++l) lift[l] = frac(lift[l]);
  return lift;
}

bool is_standard_simplex(const std::vector<RatVec>& vertices) {
  if (vertices.empty()) return false;
  const std::size_t m = vertices.front().size();
  if (vertices.size() != m + 1) return false;
  std::set<RatVec> expected;
  for (std::size_t l = 0; l < m; ++l) {
    RatVec e(m, 0);
    e[l] = 1;
    expected.insert(e);
  }
  expected.insert(RatVec(m, Rat(-1)));
  return std::set<RatVec>(vertices.begin(), vertices.end()) == expected;
}

namespace {

// floor(δ^(-m/(m+1))): the largest T >= 0 with T^(m+1)·δ^m <= 1.
BigInt multiples_threshold(const Rat& delta, unsigned m) {
  auto fits = [&](const BigInt& t) { return pow(Rat(t), m + 1) * pow(delta, m) <= 1; };
  double est = std::pow(delta.get_d(), -static_cast<double>(m) / (m + 1));
  BigInt t = std::isfinite(est) ? BigInt(std::max(0.0, std::floor(est))) : BigInt(0);
  while (t > 0 && !fits(t)) --t;
  while (fits(t + 1)) ++t;
  return t;
}

}  // namespace

WitnessReport find_witness(const ToricMfs& mfs, const Rat& delta) {
  if (delta <= 0) throw Error(ErrorCode::BadParameter, "delta must be positive");
  FiberData fiber = generic_fiber(mfs);
  const std::size_t m = mfs.fiber_dim;
  const unsigned root = static_cast<unsigned>(m + 1);
  MldResult base_mld = mld(mfs.base);
  if (base_mld.value > delta)
    throw Error(ErrorCode::PreconditionFailed,
                "mld(Y) = " + to_string(base_mld.value) + " exceeds delta = " + to_string(delta));

  WitnessReport rep;
  rep.delta = delta;
  rep.base_point = base_mld.witness;
  rep.lift = lift_to_total(mfs, rep.base_point);
  rep.t = multiples_threshold(delta, static_cast<unsigned>(m));
  constexpr unsigned long kMaxMultiples = 10'000'000;
  if (rep.t + 1 > kMaxMultiples) throw Error(ErrorCode::TooLarge, "too many multiples for delta " + to_string(delta));
  rep.multiples = std::max<std::size_t>(2, rep.t.get_ui() + 1);

  const RatVec fiber_lift(rep.lift.begin(), rep.lift.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<RatVec> residues;
  residues.reserve(rep.multiples);
  for (std::size_t k = 0; k < rep.multiples; ++k) {
    RatVec p(m);
    for (std::size_t l = 0; l < m; ++l) p[l] = frac(Rat(BigInt(static_cast<unsigned long>(k))) * fiber_lift[l]);
    residues.push_back(std::move(p));
  }
  std::tie(rep.i, rep.j) = dirichlet_pair(residues, RadicalBound{Rat(1), delta, root});

  const Rat steps(BigInt(static_cast<unsigned long>(rep.j - rep.i)));
  rep.fiber_part.resize(m);
  for (std::size_t l = 0; l < m; ++l) {
    Rat diff = residues[rep.j][l] - residues[rep.i][l];
    if (diff >= Rat(1, 2)) diff -= 1;
    else if (diff < Rat(-1, 2)) diff += 1;
    rep.fiber_part[l] = diff;
  }
  rep.point = rep.fiber_part;
  for (const auto& a : rep.base_point) rep.point.push_back(steps * a);

  auto cone = find_containing_cone(mfs.total, rep.point);
  auto ld = log_discrepancy(mfs.total, rep.point);
  if (!cone || !ld) throw Error(ErrorCode::Internal, "witness point lies outside the fan of X");
  rep.cone_index = *cone;
  rep.log_discrepancy = *ld;
  rep.standard_fiber = is_standard_simplex(fiber.simplex_vertices);
  rep.bound = RadicalBound{effective_delta(fiber).fiber_constant + 1, delta, root};
  rep.bound_satisfied = rep.bound.admits(rep.log_discrepancy);
  return rep;
}

WitnessReport find_witness(const ToricMfs& mfs) { return find_witness(mfs, mld(mfs.base).value); }

EpsDeltaCertificate check_eps_delta(const ToricMfs& mfs) {
  FiberData fiber = generic_fiber(mfs);
  EpsDeltaCertificate cert;
  cert.mld_total = mld(mfs.total);
  cert.mld_base = mld(mfs.base);
  cert.constant = effective_delta(fiber).fiber_constant + 1;
  cert.exponent = static_cast<unsigned>(mfs.fiber_dim + 1);
  cert.lhs = pow(cert.mld_total.value, cert.exponent);
  cert.rhs = pow(cert.constant, cert.exponent) * cert.mld_base.value;
  cert.holds = cert.lhs <= cert.rhs;
  return cert;
}

}  // namespace toricmld
