#include "toricmld/lattice.hpp"

#include <limits>
#include <numeric>

namespace toricmld {

Lattice Lattice::standard(std::size_t dim) { return from_generators(dim, {}); }

Lattice Lattice::from_generators(std::size_t dim, const std::vector<RatVec>& generators) {
  BigInt scale = 1;
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorCode::DimensionMismatch, "lattice generator has wrong dimension");
    scale = lcm(scale, common_denominator(g));
  }

  IntMat m(dim + generators.size(), dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = scale;
  for (std::size_t k = 0; k < generators.size(); ++k)
    for (std::size_t c = 0; c < dim; ++c) {
      Rat v = generators[k][c] * Rat(scale);
      m(dim + k, c) = v.get_num();
    }

  HermiteForm h = hnf(m);
  Lattice out;
  out.dim_ = dim;
  out.basis_ = RatMat(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out.basis_(r, c) = make_rat(h.h(r, c), scale);

  auto inv = to_integer(inverse(out.basis_));
  if (!inv) throw Error(ErrorCode::Internal, "overlattice basis inverse is not integral");
  out.inverse_ = std::move(*inv);
  out.index_ = abs(determinant(out.inverse_));
  out.exponent_ = 1;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) out.exponent_ = lcm(out.exponent_, out.basis_(r, c).get_den());
  return out;
}

RatVec Lattice::coordinates(const RatVec& v) const {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector dimension differs from lattice");
  RatVec out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) out[j] += v[k] * inverse_(k, j);
  }
  return out;
}

bool Lattice::contains(const RatVec& v) const { return to_integer(coordinates(v)).has_value(); }

RatVec Lattice::primitivize(const RatVec& v) const {
  auto c = to_integer(coordinates(v));
  if (!c) throw Error(ErrorCode::NotInLattice, "cannot primitivize " + to_string(v));
  BigInt g = content(*c);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "zero vector has no primitive generator");
  return Rat(1, 1) / Rat(g) * v;
}

QuotientGroup quotient_group(const Lattice& lattice, const RatMat& sublattice) {
  const std::size_t d = lattice.dim();
  if (sublattice.rows() != d || sublattice.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "sublattice basis must be d x d");

  IntMat coords(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    auto c = to_integer(lattice.coordinates(sublattice.row_vector(r)));
    if (!c) throw Error(ErrorCode::NotSublattice, "row " + std::to_string(r) + " is not in the lattice");
    for (std::size_t j = 0; j < d; ++j) coords(r, j) = (*c)[j];
  }
  if (determinant(coords) == 0) throw Error(ErrorCode::Degenerate, "sublattice rows are linearly dependent");

  // U·C·V = S. The cosets are c·S^{-1}·U (mod 1) in B-coordinates, c_i in [0, s_i).
  SmithForm smith = snf(coords);
  QuotientGroup g;
  g.sublattice = sublattice;
  g.invariant_factors = smith.invariant_factors();
  g.order = 1;
  for (const auto& s : g.invariant_factors) g.order *= s;

  const BigInt& exponent = g.invariant_factors.empty() ? BigInt(1) : g.invariant_factors.back();
  constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 40;
  if (exponent > kMaxDenominator || g.order > BigInt(std::numeric_limits<std::int64_t>::max()))
    throw Error(ErrorCode::TooLarge, "quotient group of order " + to_string(g.order) + " is too large to enumerate");
  g.denominator = exponent.get_si();

  for (std::size_t i = 0; i < d; ++i) {
    const BigInt& s = g.invariant_factors[i];
    if (s == 1) continue;
    BigInt step = exponent / s;
    std::vector<std::int64_t> gen(d);
    for (std::size_t j = 0; j < d; ++j) {
      BigInt v = smith.u(i, j) * step;
      mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(g.denominator));
      gen[j] = v.get_si();
    }
    g.generators.push_back(std::move(gen));
    g.moduli.push_back(s.get_si());
  }
  return g;
}

CosetStream::CosetStream(QuotientGroup group) : CosetStream(std::move(group), 0, 0) {
  last_ = group_.order.get_ui();
}

CosetStream::CosetStream(QuotientGroup group, std::uint64_t first, std::uint64_t last)
    : group_(std::move(group)), pos_(first), last_(last) {
  const std::uint64_t order = group_.order.get_ui();
  if (last_ > order) last_ = order;
  digits_.assign(group_.moduli.size(), 0);
  current_.assign(group_.sublattice.rows(), 0);
}

void CosetStream::seek(std::uint64_t index) {
  const auto e = static_cast<__int128>(group_.denominator);
  std::vector<__int128> acc(current_.size(), 0);
  for (std::size_t i = 0; i < group_.moduli.size(); ++i) {
    const auto m = static_cast<std::uint64_t>(group_.moduli[i]);
    digits_[i] = index % m;
    index /= m;
    for (std::size_t j = 0; j < acc.size(); ++j)
      acc[j] = (acc[j] + static_cast<__int128>(digits_[i]) * group_.generators[i][j]) % e;
  }
  for (std::size_t j = 0; j < acc.size(); ++j) current_[j] = static_cast<std::int64_t>(acc[j]);
}

bool CosetStream::next() {
  if (!started_) {
    started_ = true;
    if (pos_ >= last_) return false;
    seek(pos_);
    return true;
  }
  if (++pos_ >= last_) return false;
  const std::int64_t e = group_.denominator;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    for (std::size_t j = 0; j < current_.size(); ++j) {
      current_[j] += group_.generators[i][j];
      if (current_[j] >= e) current_[j] -= e;
    }
    // s_i steps of generator i return to the start, so a wrapped digit needs
    // no correction, only a carry.
    if (++digits_[i] < static_cast<std::uint64_t>(group_.moduli[i])) break;
    digits_[i] = 0;
  }
  return true;
}

std::int64_t CosetStream::coordinate_sum() const noexcept {
  return std::accumulate(current_.begin(), current_.end(), std::int64_t{0});
}

RatVec CosetStream::coords() const {
  RatVec y(current_.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = make_rat(BigInt(static_cast<long>(current_[j])), BigInt(static_cast<long>(group_.denominator)));
  return y;
}

RatVec CosetStream::point() const { return coords() * group_.sublattice; }

CosetStream quotient_reps(const Lattice& lattice, const RatMat& sublattice) {
  return CosetStream(quotient_group(lattice, sublattice));
}

}  // namespace toricmld
