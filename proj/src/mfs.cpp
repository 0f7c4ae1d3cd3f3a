#include "toricmld/mfs.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <sstream>

#include "toricmld/mld.hpp"

namespace toricmld {

namespace {

RatVec head(const RatVec& v, std::size_t m) { return RatVec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m)); }
RatVec tail(const RatVec& v, std::size_t m) { return RatVec(v.begin() + static_cast<std::ptrdiff_t>(m), v.end()); }

IntMat coordinate_projection(std::size_t fiber_dim, std::size_t base_dim) {
  IntMat f(base_dim, fiber_dim + base_dim);
  for (std::size_t k = 0; k < base_dim; ++k) f(k, fiber_dim + k) = 1;
  return f;
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

std::vector<std::size_t> kernel_rays(const ToricMfs& mfs) {
  std::vector<std::size_t> out;
  const auto& rays = mfs.total.fan().rays();
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (is_zero(tail(rays[i], mfs.fiber_dim))) out.push_back(i);
  return out;
}

}  // namespace

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ValidationReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

Lattice fiber_lattice(const Lattice& total, std::size_t fiber_dim) {
  const std::size_t d = total.dim();
  const std::size_t n = d - fiber_dim;
  // Integer combinations c of the basis rows with zero base part form the left
  // kernel of the scaled base block; the zero rows of its HNF expose it.
  const BigInt scale = total.exponent();
  IntMat block(d, n);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < n; ++k) block(r, k) = Rat(total.basis()(r, fiber_dim + k) * Rat(scale)).get_num();
  HermiteForm h = hnf(block);
  std::vector<RatVec> gens;
  for (std::size_t r = h.rank; r < d; ++r) {
    RatVec v(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t c = 0; c < d; ++c) v[c] += Rat(h.u(r, i)) * total.basis()(i, c);
    gens.push_back(head(v, fiber_dim));
  }
  return Lattice::from_generators(fiber_dim, gens);
}

Lattice image_lattice(const Lattice& total, std::size_t fiber_dim) {
  std::vector<RatVec> gens;
  for (std::size_t r = 0; r < total.dim(); ++r) gens.push_back(tail(total.basis().row_vector(r), fiber_dim));
  return Lattice::from_generators(total.dim() - fiber_dim, gens);
}

ToricVariety affine_base(const Lattice& base) {
  const std::size_t n = base.dim();
  std::vector<RatVec> rays;
  std::vector<std::size_t> cone;
  for (std::size_t k = 0; k < n; ++k) {
    RatVec e(n, 0);
    e[k] = 1;
    rays.push_back(base.primitivize(e));
    cone.push_back(k);
  }
  return ToricVariety(base, Fan(n, std::move(rays), {cone}));
}

ValidationReport validate(const ToricMfs& mfs) {
  const std::size_t m = mfs.fiber_dim;
  const std::size_t n = mfs.base_dim;
  const std::size_t d = m + n;
  const ToricVariety& x = mfs.total;
  const ToricVariety& y = mfs.base;
  const auto& rays = x.fan().rays();
  ValidationReport report;
  auto add = [&](const char* name, bool ok, std::string detail) {
    report.checks.push_back({name, ok, std::move(detail)});
  };

  {
    bool ok = x.dim() == d && y.dim() == n && mfs.projection == coordinate_projection(m, n) &&
              y.fan().cones().size() == 1 && y.fan().rays().size() == n;
    for (std::size_t k = 0; ok && k < n; ++k) {
      const auto& r = y.fan().rays()[k];
      for (std::size_t j = 0; j < n; ++j)
        if ((j == k) ? r[j] <= 0 : r[j] != 0) ok = false;
    }
    add(check::kNormalForm, ok,
        ok ? "F projects onto the last " + std::to_string(n) + " coordinates; Y is the orthant cone"
           : "F or Y is not in normal form");
  }
  if (x.dim() != d) {
    report.overall = false;
    return report;
  }

  add(check::kRayCount, rays.size() == d + 1,
      std::to_string(rays.size()) + " rays, expected n+m+1 = " + std::to_string(d + 1));

  const auto kernel = kernel_rays(mfs);
  {
    bool ok = kernel.size() == m + 1;
    std::ostringstream detail;
    detail << kernel.size() << " rays in ker F (expected " << m + 1 << ")";
    std::set<std::size_t> targets;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (std::find(kernel.begin(), kernel.end(), i) != kernel.end()) continue;
      RatVec b = tail(rays[i], m);
      std::size_t nonzero = 0, where = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (b[k] != 0) {
          ++nonzero;
          where = k;
        }
      if (nonzero != 1 || b[where] < 0 || !targets.insert(where).second) {
        ok = false;
        detail << "; ray " << i << " does not map onto its own ray of C";
        continue;
      }
      Rat c = b[where] / y.fan().rays()[where][where];
      detail << "; ray " << i << " -> " << c.get_str() << "·e" << where + 1;
    }
    add(check::kRayPlacement, ok, detail.str());
  }

  {
    bool ok = false;
    std::string detail;
    if (kernel.size() != m + 1) {
      detail = "need m+1 kernel rays to form the fiber simplex";
    } else {
      std::vector<RatVec> vertices;
      for (auto i : kernel) vertices.push_back(head(rays[i], m));
      auto w = origin_weights(vertices);
      if (!w) {
        detail = "fiber rays are affinely dependent";
      } else {
        ok = std::all_of(w->begin(), w->end(), [](const Rat& c) { return c > 0; });
        detail = "barycentric coordinates of 0: " + to_string(*w);
      }
    }
    add(check::kFiberSimplex, ok, detail);
  }

  {
    std::set<std::vector<std::size_t>> expected, actual;
    for (auto k : kernel) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (i != k) s.push_back(i);
      expected.insert(s);
    }
    bool duplicate = false;
    for (auto idx : x.fan().cone_indices()) {
      std::sort(idx.begin(), idx.end());
      if (!actual.insert(idx).second) duplicate = true;
    }
    bool ok = !kernel.empty() && !duplicate && expected == actual;
    add(check::kConeStructure, ok,
        ok ? std::to_string(actual.size()) + " maximal cones, each omitting one fiber ray"
           : "maximal cones are not exactly the sets omitting one fiber ray");
  }

  {
    bool ok = false;
    std::string detail;
    IntMat image(d, n);
    bool contained = true;
    for (std::size_t r = 0; r < d && contained; ++r) {
      auto c = to_integer(y.lattice().coordinates(tail(x.lattice().basis().row_vector(r), m)));
      if (!c) {
        contained = false;
        break;
      }
      for (std::size_t k = 0; k < n; ++k) image(r, k) = (*c)[k];
    }
    if (!contained) {
      detail = "F(N_X) is not contained in N_Y";
    } else {
      IntVec factors = snf(image).invariant_factors();
      ok = std::all_of(factors.begin(), factors.end(), [](const BigInt& s) { return s == 1; });
      detail = "invariant factors of F in lattice bases: " + to_string(factors);
    }
    add(check::kLatticeSurjective, ok, detail);
  }

  {
    // Rays off ker F are matched one-to-one with rays of Y by ray_placement, so
    // ρ(X/Y) is the Picard number of the fiber: #(rays in ker F) - m.
    long rho = static_cast<long>(kernel.size()) - static_cast<long>(m);
    add(check::kRelativePicardRank, rho == 1, "#(rays in ker F) - m = " + std::to_string(rho));
  }

  {
    bool ok = true;
    for (const auto& r : rays)
      for (std::size_t k = m; k < d; ++k)
        if (r[k] < 0) ok = false;
    add(check::kProperSupport, ok,
        ok ? "F maps every cone of X into C; preimage coverage follows from fiber_simplex and cone_structure"
           : "some ray of X maps outside C");
  }

  {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (!x.lattice().contains(rays[i]) || x.lattice().primitivize(rays[i]) != rays[i]) bad.push_back(i);
    add(check::kRaysPrimitive, bad.empty(), bad.empty() ? "all rays primitive in N_X" : "not primitive: " + join(bad));
  }

  report.overall = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  return report;
}

FiberData generic_fiber(const ToricMfs& mfs) {
  ValidationReport report = validate(mfs);
  if (!report.overall) throw Error(ErrorCode::InvalidMfs, "validation failed");
  const std::size_t m = mfs.fiber_dim;
  const auto kernel = kernel_rays(mfs);
  std::vector<RatVec> vertices;
  for (auto i : kernel) vertices.push_back(head(mfs.total.fan().rays()[i], m));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i <= m; ++i)
      if (i != k) s.push_back(i);
    cones.push_back(s);
  }
  RatVec weights = *origin_weights(vertices);
  return FiberData{ToricVariety(fiber_lattice(mfs.total.lattice(), m), Fan(m, vertices, cones)), vertices, kernel,
                   std::move(weights)};
}

IntVec generic_fiber_group(const ToricMfs& mfs) {
  FiberData fd = generic_fiber(mfs);
  const std::size_t m = mfs.fiber_dim;
  IntMat coords(fd.simplex_vertices.size(), m);
  for (std::size_t i = 0; i < fd.simplex_vertices.size(); ++i) {
    auto c = to_integer(fd.fiber.lattice().coordinates(fd.simplex_vertices[i]));
    if (!c) throw Error(ErrorCode::Internal, "fiber vertex outside N_Z");
    for (std::size_t j = 0; j < m; ++j) coords(i, j) = (*c)[j];
  }
  return snf(coords).invariant_factors();
}

ToricMfs mfs_from_fan(std::size_t fiber_dim, std::size_t base_dim, Lattice total_lattice, std::vector<RatVec> rays,
                      const std::vector<std::vector<std::size_t>>& max_cones, std::optional<Lattice> base_lattice) {
  if (total_lattice.dim() != fiber_dim + base_dim)
    throw Error(ErrorCode::DimensionMismatch, "lattice dimension must be m+n");
  Lattice base = base_lattice ? std::move(*base_lattice) : image_lattice(total_lattice, fiber_dim);
  if (base.dim() != base_dim) throw Error(ErrorCode::DimensionMismatch, "base lattice dimension must be n");
  Fan fan(fiber_dim + base_dim, std::move(rays), max_cones);
  return ToricMfs{ToricVariety::unchecked(std::move(total_lattice), std::move(fan)), affine_base(base),
                  coordinate_projection(fiber_dim, base_dim), fiber_dim, base_dim, {}};
}

std::vector<Rat> base_multiples(const ToricMfs& mfs) {
  const std::size_t m = mfs.fiber_dim;
  std::vector<Rat> out(mfs.base_dim, 0);
  for (const auto& r : mfs.total.fan().rays()) {
    RatVec b = tail(r, m);
    for (std::size_t k = 0; k < b.size(); ++k)
      if (b[k] != 0) out[k] = b[k] / mfs.base.fan().rays()[k][k];
  }
  return out;
}

ToricMfs make_mfs(std::size_t fiber_dim, std::size_t base_dim, const std::vector<RatVec>& fiber_rays,
                  const std::vector<BigInt>& multiples, const std::vector<RatVec>& extra_generators) {
  const std::size_t m = fiber_dim;
  const std::size_t d = fiber_dim + base_dim;
  if (m == 0 || base_dim == 0) throw Error(ErrorCode::DimensionMismatch, "need m >= 1 and n >= 1");
  if (fiber_rays.size() != m + 1) throw Error(ErrorCode::DimensionMismatch, "need exactly m+1 fiber rays");
  for (const auto& r : fiber_rays)
    if (r.size() != m) throw Error(ErrorCode::DimensionMismatch, "fiber ray must have m coordinates");
  if (!multiples.empty() && multiples.size() != base_dim)
    throw Error(ErrorCode::DimensionMismatch, "need n base multiples");

  auto weights = origin_weights(fiber_rays);
  if (!weights || !std::all_of(weights->begin(), weights->end(), [](const Rat& c) { return c > 0; }))
    throw Error(ErrorCode::DegenerateSimplex, "origin is not strictly inside the fiber simplex");

  Lattice lattice = Lattice::from_generators(d, extra_generators);
  std::vector<std::string> notes;
  std::vector<RatVec> rays;
  auto add_ray = [&](RatVec v) {
    RatVec p = lattice.primitivize(v);
    if (p != v) notes.push_back("ray " + to_string(v) + " replaced by primitive " + to_string(p));
    rays.push_back(std::move(p));
  };
  for (const auto& r : fiber_rays) {
    RatVec v(d, 0);
    std::copy(r.begin(), r.end(), v.begin());
    add_ray(std::move(v));
  }
  for (std::size_t k = 0; k < base_dim; ++k) {
    RatVec v(d, 0);
    v[m + k] = 1;
    add_ray(std::move(v));
  }
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (i != k) s.push_back(i);
    cones.push_back(s);
  }

  ToricMfs out = mfs_from_fan(fiber_dim, base_dim, std::move(lattice), std::move(rays), cones);
  out.notes = std::move(notes);

  ValidationReport report = validate(out);
  if (const auto* c = report.find(check::kLatticeSurjective); !c->passed)
    throw Error(ErrorCode::NonSurjective, c->detail);
  if (!report.overall) throw Error(ErrorCode::Internal, "constructed mfs fails validation");

  if (!multiples.empty()) {
    auto derived = base_multiples(out);
    for (std::size_t k = 0; k < base_dim; ++k)
      if (derived[k] != Rat(multiples[k]))
        throw Error(ErrorCode::BadParameter, "base multiple " + std::to_string(k + 1) + " is " + to_string(derived[k]) +
                                                 " for this lattice, not " + to_string(multiples[k]));
  }
  return out;
}

BigInt example_family_order(long l) {
  BigInt b = l;
  return pow(b, 4) + 1;
}

ToricMfs example_family(long l) {
  if (l < 2) throw Error(ErrorCode::BadParameter, "family parameter l must be at least 2");
  const BigInt r = example_family_order(l);
  const BigInt bl = l;
  std::vector<RatVec> fiber{{Rat(1), Rat(0)}, {Rat(-(l - 1)), Rat(1)}, {Rat(-(l - 1)), Rat(-1)}};
  RatVec gen{make_rat(bl, r), make_rat(bl * bl, r), make_rat(1, r), make_rat(1, r)};
  return make_mfs(2, 2, fiber, {BigInt(1), BigInt(1)}, {gen});
}

std::vector<SweepRow> sweep_family(long l_min, long l_max) {
  if (l_min < 2) throw Error(ErrorCode::BadParameter, "l_min must be at least 2");
  if (l_max < l_min) throw Error(ErrorCode::BadParameter, "l_max must be at least l_min");
  std::vector<std::future<SweepRow>> jobs;
  for (long l = l_min; l <= l_max; ++l)
    jobs.push_back(std::async(std::launch::async, [l] {
      ToricMfs f = example_family(l);
      SweepRow row;
      row.l = l;
      row.r = example_family_order(l);
      row.mld_total = mld(f.total).value;
      row.mld_base = mld(f.base).value;
      row.ratio_approx = Rat(row.mld_base / pow(row.mld_total, 4)).get_d();
      row.bound_check = row.mld_total * Rat(20 * l) >= 9;
      return row;
    }));
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

std::optional<double> loglog_slope(const std::vector<SweepRow>& rows, long l_from, long l_to) {
  std::vector<double> xs, ys;
  for (const auto& r : rows)
    if (r.l >= l_from && r.l <= l_to) {
      xs.push_back(std::log(r.mld_total.get_d()));
      ys.push_back(std::log(r.mld_base.get_d()));
    }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace toricmld
