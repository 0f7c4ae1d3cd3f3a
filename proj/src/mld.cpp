#include "toricmld/mld.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <string>

namespace toricmld {

namespace {

void require_full_dimensional(const Fan& fan) {
  if (fan.cones().empty()) throw Error(ErrorCode::EmptyFan, "fan has no maximal cones");
  for (std::size_t i = 0; i < fan.cones().size(); ++i)
    if (!fan.cones()[i].full_dimensional())
      throw Error(ErrorCode::NonSimplicial, "maximal cone " + std::to_string(i) + " is not full-dimensional");
}

}  // namespace

MldResult mld(const ToricVariety& x) {
  const Fan& fan = x.fan();
  require_full_dimensional(fan);

  Rat best = 1;
  std::set<RatVec> achievers;
  for (const auto& cone : fan.cones()) {
    CosetStream stream(quotient_group(x.lattice(), cone.generators()));
    const std::int64_t denom = stream.group().denominator;
    std::int64_t local_min = std::numeric_limits<std::int64_t>::max();
    std::vector<RatVec> local;
    while (stream.next()) {
      const std::int64_t s = stream.coordinate_sum();
      if (s == 0 || s > local_min) continue;
      if (s < local_min) {
        local_min = s;
        local.clear();
      }
      local.push_back(stream.point());
    }
    if (local.empty()) continue;
    Rat value = make_rat(BigInt(static_cast<long>(local_min)), BigInt(static_cast<long>(denom)));
    if (value > best) continue;
    if (value < best) {
      best = value;
      achievers.clear();
    }
    achievers.insert(local.begin(), local.end());
  }
  if (best == 1)
    for (const auto& ray : fan.rays()) achievers.insert(ray);

  MldResult out;
  out.value = best;
  out.witness = *achievers.begin();
  out.cone_index = *find_containing_cone(fan, out.witness);
  out.method = MldMethod::Parallelepiped;
  return out;
}

ToricVariety cyclic_quotient(const BigInt& r, const IntVec& weights) {
  if (r <= 0) throw Error(ErrorCode::InvalidWeights, "group order must be positive");
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorCode::InvalidWeights, "need at least one weight");
  RatVec gen(n);
  for (std::size_t i = 0; i < n; ++i) gen[i] = make_rat(weights[i], r);
  Lattice lattice = Lattice::from_generators(n, {gen});
  std::vector<RatVec> rays;
  std::vector<std::size_t> cone;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n, 0);
    e[i] = 1;
    rays.push_back(lattice.primitivize(e));
    cone.push_back(i);
  }
  return ToricVariety(lattice, Fan(n, std::move(rays), {cone}));
}

Rat mld_cyclic(const BigInt& r, const IntVec& weights) { return mld(cyclic_quotient(r, weights)).value; }

std::uint64_t brute_force_guard() {
  if (const char* env = std::getenv("TORICMLD_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBruteForceGuard;
}

namespace {

using Residue = std::vector<std::int64_t>;

// All classes of N/Z^d as numerators over the lattice exponent, by breadth-first
// closure under the basis vectors.
std::vector<Residue> residue_classes(const Lattice& lattice, std::uint64_t guard) {
  const std::size_t d = lattice.dim();
  if (lattice.exponent() > BigInt(std::int64_t{1} << 40))
    throw Error(ErrorCode::TooLarge, "lattice exponent too large for brute force");
  const std::int64_t denom = lattice.exponent().get_si();
  std::vector<Residue> steps;
  for (std::size_t r = 0; r < d; ++r) {
    Residue step(d);
    for (std::size_t c = 0; c < d; ++c) {
      BigInt v = Rat(lattice.basis()(r, c) * Rat(lattice.exponent())).get_num();
      mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(denom));
      step[c] = v.get_si();
    }
    steps.push_back(std::move(step));
  }
  std::set<Residue> seen{Residue(d, 0)};
  std::vector<Residue> order{Residue(d, 0)};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& step : steps) {
      Residue next = order[head];
      for (std::size_t c = 0; c < d; ++c) next[c] = (next[c] + step[c]) % denom;
      if (seen.insert(next).second) {
        order.push_back(std::move(next));
        if (order.size() > guard) throw Error(ErrorCode::TooLarge, "residue class count exceeds guard");
      }
    }
  }
  return order;
}

BigInt ceil_rat(const Rat& v) { return -floor(-v); }

}  // namespace

MldResult mld_bruteforce(const ToricVariety& x, const Rat& cap, std::uint64_t guard) {
  if (cap < 1) throw Error(ErrorCode::BadParameter, "cap must be at least 1");
  const Fan& fan = x.fan();
  require_full_dimensional(fan);
  const std::size_t d = x.dim();
  const auto classes = residue_classes(x.lattice(), guard);
  const BigInt denom = x.lattice().exponent();

  struct Box {
    std::vector<Rat> lo, hi;
  };
  std::vector<Box> boxes;
  BigInt total = 0;
  for (const auto& cone : fan.cones()) {
    Box box{std::vector<Rat>(d, 0), std::vector<Rat>(d, 0)};
    for (std::size_t i = 0; i < cone.dim(); ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rat v = cap * cone.generators()(i, j);
        (v < 0 ? box.lo[j] : box.hi[j]) += v;
      }
    BigInt per_class = 1;
    for (std::size_t j = 0; j < d; ++j) per_class *= floor(box.hi[j] - box.lo[j]) + 2;
    total += per_class * static_cast<unsigned long>(classes.size());
    boxes.push_back(std::move(box));
  }
  if (total > BigInt(static_cast<unsigned long>(guard)))
    throw Error(ErrorCode::TooLarge, "brute-force scan of " + to_string(total) + " points exceeds guard " + std::to_string(guard));

  bool found = false;
  Rat best_value;
  RatVec best_point;
  std::size_t best_cone = 0;

  for (std::size_t ci = 0; ci < fan.cones().size(); ++ci) {
    // Scaled inverse: x = w·inv_num / (denom·inv_den) for v = w / denom.
    RatMat inv = inverse(fan.cones()[ci].generators());
    BigInt inv_den = 1;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) inv_den = lcm(inv_den, inv(r, c).get_den());
    IntMat inv_num(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) inv_num(r, c) = Rat(inv(r, c) * Rat(inv_den)).get_num();
    const BigInt scale = denom * inv_den;
    const BigInt upper = floor(cap * Rat(scale));

    const Box& box = boxes[ci];
    for (const auto& cls : classes) {
      std::vector<BigInt> lo(d), hi(d);
      bool empty = false;
      for (std::size_t j = 0; j < d; ++j) {
        Rat r = make_rat(BigInt(static_cast<long>(cls[j])), denom);
        lo[j] = ceil_rat(box.lo[j] - r);
        hi[j] = floor(box.hi[j] - r);
        if (lo[j] > hi[j]) empty = true;
      }
      if (empty) continue;
      IntVec z = lo;
      while (true) {
        IntVec w(d);
        bool zero = true;
        for (std::size_t j = 0; j < d; ++j) {
          w[j] = z[j] * denom + cls[j];
          if (w[j] != 0) zero = false;
        }
        if (!zero) {
          IntVec scaled = w * inv_num;
          bool inside = std::all_of(scaled.begin(), scaled.end(), [&](const BigInt& c) { return c >= 0 && c <= upper; });
          if (inside) {
            BigInt total_num = 0;
            for (const auto& c : scaled) total_num += c;
            Rat value = make_rat(total_num, scale);
            RatVec point(d);
            for (std::size_t j = 0; j < d; ++j) point[j] = make_rat(w[j], denom);
            bool better = !found || value < best_value || (value == best_value && point < best_point);
            if (better) {
              found = true;
              best_value = value;
              best_point = std::move(point);
              best_cone = ci;
            }
          }
        }
        std::size_t j = 0;
        for (; j < d; ++j) {
          if (++z[j] <= hi[j]) break;
          z[j] = lo[j];
        }
        if (j == d) break;
      }
    }
  }
  if (!found) throw Error(ErrorCode::Internal, "brute force found no lattice point");
  return {best_value, best_point, best_cone, MldMethod::BruteForce};
}

}  // namespace toricmld
