#include "toricmld/toric.hpp"

#include <algorithm>
#include <set>

namespace toricmld {

namespace {

// Positive scalar multiples of each other (both nonzero).
bool same_ray(const RatVec& a, const RatVec& b) {
  Rat ratio = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (a[i] == 0) continue;
    Rat r = a[i] / b[i];
    if (r <= 0) return false;
    if (ratio == 0) ratio = r;
    else if (r != ratio) return false;
  }
  return true;
}

}  // namespace

SimplicialCone::SimplicialCone(std::vector<std::size_t> ray_indices, RatMat generators)
    : ray_indices_(std::move(ray_indices)), generators_(std::move(generators)) {
  const std::size_t k = generators_.rows();
  const std::size_t d = generators_.cols();
  if (k > d || rank(generators_) != k)
    throw Error(ErrorCode::NonSimplicial, "cone generators are linearly dependent");

  // Pivot columns of the row echelon form give a nonsingular k x k minor.
  RatMat a = generators_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < k; ++c) {
    std::size_t p = r;
    while (p < k && a(p, c) == 0) ++p;
    if (p == k) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < k; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < d; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols_.push_back(c);
    ++r;
  }
  RatMat minor(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) minor(i, j) = generators_(i, pivot_cols_[j]);
  pivot_inverse_ = inverse(minor);
}

std::optional<RatVec> SimplicialCone::barycentric(const RatVec& v) const {
  if (v.size() != ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from cone");
  const std::size_t k = dim();
  RatVec restricted(k);
  for (std::size_t j = 0; j < k; ++j) restricted[j] = v[pivot_cols_[j]];
  RatVec x = restricted * pivot_inverse_;
  if (!full_dimensional() && x * generators_ != v) return std::nullopt;
  return x;
}

bool SimplicialCone::contains(const RatVec& v) const {
  auto x = barycentric(v);
  return x && std::all_of(x->begin(), x->end(), [](const Rat& c) { return c >= 0; });
}

Fan::Fan(std::size_t ambient_dim, std::vector<RatVec> rays, const std::vector<std::vector<std::size_t>>& max_cones)
    : ambient_dim_(ambient_dim), rays_(std::move(rays)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "ray has wrong dimension");
    if (is_zero(rays_[i])) throw Error(ErrorCode::ZeroVector, "ray " + std::to_string(i) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (same_ray(rays_[i], rays_[j]))
        throw Error(ErrorCode::BadParameter, "rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  std::vector<bool> used(rays_.size(), false);
  for (const auto& idx : max_cones) {
    std::set<std::size_t> distinct(idx.begin(), idx.end());
    if (distinct.size() != idx.size()) throw Error(ErrorCode::NonSimplicial, "cone lists a ray twice");
    RatMat gens(idx.size(), ambient_dim_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (idx[r] >= rays_.size()) throw Error(ErrorCode::BadParameter, "cone refers to missing ray " + std::to_string(idx[r]));
      used[idx[r]] = true;
      for (std::size_t c = 0; c < ambient_dim_; ++c) gens(r, c) = rays_[idx[r]][c];
    }
    cones_.emplace_back(idx, std::move(gens));
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw Error(ErrorCode::BadParameter, "ray " + std::to_string(i) + " belongs to no cone");
}

std::vector<std::vector<std::size_t>> Fan::cone_indices() const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : cones_) out.push_back(c.ray_indices());
  return out;
}

ToricVariety::ToricVariety(Lattice lattice, Fan fan, NoCheck) : lattice_(std::move(lattice)), fan_(std::move(fan)) {
  if (fan_.ambient_dim() != lattice_.dim()) throw Error(ErrorCode::DimensionMismatch, "fan and lattice dimensions differ");
}

ToricVariety::ToricVariety(Lattice lattice, Fan fan) : ToricVariety(std::move(lattice), std::move(fan), NoCheck{}) {
  for (std::size_t i = 0; i < fan_.rays().size(); ++i) {
    const auto& ray = fan_.rays()[i];
    if (!lattice_.contains(ray)) throw Error(ErrorCode::NotInLattice, "ray " + std::to_string(i) + " is not a lattice point");
    if (lattice_.primitivize(ray) != ray)
      throw Error(ErrorCode::BadParameter, "ray " + std::to_string(i) + " " + to_string(ray) + " is not primitive");
  }
}

ToricVariety ToricVariety::unchecked(Lattice lattice, Fan fan) {
  return ToricVariety(std::move(lattice), std::move(fan), NoCheck{});
}

std::optional<RatVec> barycentric(const SimplicialCone& cone, const RatVec& v) { return cone.barycentric(v); }

std::optional<std::size_t> find_containing_cone(const Fan& fan, const RatVec& v) {
  for (std::size_t i = 0; i < fan.cones().size(); ++i)
    if (fan.cones()[i].contains(v)) return i;
  return std::nullopt;
}

std::optional<std::size_t> find_containing_cone(const ToricVariety& x, const RatVec& v) {
  return find_containing_cone(x.fan(), v);
}

std::optional<Rat> log_discrepancy(const ToricVariety& x, const RatVec& v) {
  if (v.size() != x.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variety");
  if (is_zero(v)) throw Error(ErrorCode::ZeroVector, "log discrepancy is defined on nonzero points");
  if (!x.lattice().contains(v)) throw Error(ErrorCode::NotInLattice, to_string(v) + " is not a lattice point");
  for (const auto& cone : x.fan().cones()) {
    auto coeffs = cone.barycentric(v);
    if (coeffs && std::all_of(coeffs->begin(), coeffs->end(), [](const Rat& c) { return c >= 0; }))
      return sum(*coeffs);
  }
  return std::nullopt;
}

std::optional<RatVec> origin_weights(const std::vector<RatVec>& vertices) {
  const std::size_t n = vertices.size();
  if (n == 0) return std::nullopt;
  const std::size_t d = vertices.front().size();
  if (n != d + 1) throw Error(ErrorCode::WrongShape, "need d+1 vertices in dimension d");
  RatMat a(n, n);
  RatVec b(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i].size() != d) throw Error(ErrorCode::DimensionMismatch, "vertex dimension");
    for (std::size_t r = 0; r < d; ++r) a(r, i) = vertices[i][r];
    a(d, i) = 1;
  }
  b[d] = 1;
  try {
    return solve_exact(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) return std::nullopt;
    throw;
  }
}

bool is_complete(const Fan& fan) {
  const std::size_t d = fan.ambient_dim();
  const std::size_t n = fan.rays().size();
  if (n != d + 1 || fan.cones().size() != d + 1)
    throw Error(ErrorCode::WrongShape, "fan is not the boundary fan of a simplex");
  std::set<std::size_t> omitted;
  for (const auto& cone : fan.cones()) {
    if (cone.dim() != d) throw Error(ErrorCode::WrongShape, "fan is not the boundary fan of a simplex");
    std::vector<bool> present(n, false);
    for (auto i : cone.ray_indices()) present[i] = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!present[i]) omitted.insert(i);
  }
  if (omitted.size() != n) throw Error(ErrorCode::WrongShape, "fan is not the boundary fan of a simplex");
  auto y = origin_weights(fan.rays());
  return y && std::all_of(y->begin(), y->end(), [](const Rat& c) { return c > 0; });
}

}  // namespace toricmld
