#include "toricmld/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace toricmld {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::EmptyFan: return "EmptyFan";
    case ErrorCode::NonSimplicial: return "NonSimplicial";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::InvalidMfs: return "InvalidMfs";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::NonSurjective: return "NonSurjective";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotInBaseLattice: return "NotInBaseLattice";
    case ErrorCode::NoPairFound: return "NoPairFound";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::SingularMatrix, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  BigInt num, den = 1;
  bool ok = slash == std::string_view::npos
                ? parse_integer(s, num)
                : parse_integer(trim(s.substr(0, slash)), num) && parse_integer(trim(s.substr(slash + 1)), den);
  if (!ok) throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return make_rat(num, den);
}

std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const Rat& v) { return v.get_str(); }

std::string to_string(const RatVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

std::string to_string(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

BigInt floor(const Rat& v) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

Rat frac(const Rat& v) { return v - Rat(floor(v)); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Rat pow(const Rat& x, unsigned k) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), k);
  return out;
}

BigInt pow(const BigInt& x, unsigned k) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), k);
  return out;
}

BigInt common_denominator(const RatVec& v) {
  BigInt d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

BigInt content(const IntVec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

RatVec to_rat(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

std::optional<IntVec> to_integer(const RatVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) return std::nullopt;
    out.push_back(x.get_num());
  }
  return out;
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

RatVec operator+(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec operator-(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec operator*(const Rat& s, const RatVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat sum(const RatVec& v) {
  Rat s = 0;
  for (const auto& x : v) s += x;
  return s;
}

namespace {

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
std::vector<T> row_times(const std::vector<T>& v, const Matrix<T>& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix product");
  std::vector<T> out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[k] * m(k, j);
  }
  return out;
}

}  // namespace

IntMat operator*(const IntMat& a, const IntMat& b) { return multiply(a, b); }
RatMat operator*(const RatMat& a, const RatMat& b) { return multiply(a, b); }
RatVec operator*(const RatVec& v, const RatMat& m) { return row_times(v, m); }
IntVec operator*(const IntVec& v, const IntMat& m) { return row_times(v, m); }

RatMat to_rat(const IntMat& m) {
  RatMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

std::optional<IntMat> to_integer(const RatMat& m) {
  IntMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1) return std::nullopt;
      out(r, c) = m(r, c).get_num();
    }
  return out;
}

std::size_t rank(const RatMat& m) {
  RatMat a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

BigInt determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  // Clear denominators row by row and reuse the integer routine.
  IntMat scaled(m.rows(), m.cols());
  BigInt scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt d = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) d = lcm(d, m(r, c).get_den());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rat v = m(r, c) * Rat(d);
      scaled(r, c) = v.get_num();
    }
    scale *= d;
  }
  return make_rat(determinant(scaled), scale);
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVec solve_exact(const RatMat& a, const RatVec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "solve_exact expects a square system");
  const std::size_t n = a.rows();
  RatMat aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) throw Error(ErrorCode::SingularMatrix, "determinant is zero");
    aug.swap_rows(p, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (aug(i, c) == 0) continue;
      Rat f = aug(i, c) / aug(c, c);
      for (std::size_t j = c; j <= n; ++j) aug(i, j) -= f * aug(c, j);
    }
  }
  RatVec x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat s = aug(i, n);
    for (std::size_t j = i + 1; j < n; ++j) s -= aug(i, j) * x[j];
    x[i] = s / aug(i, i);
  }
  return x;
}

namespace {

// row_a <- x*row_a + y*row_b, row_b <- u*row_a + v*row_b (simultaneously).
void combine_rows(IntMat& m, std::size_t a, std::size_t b, const BigInt& x, const BigInt& y, const BigInt& u,
                  const BigInt& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    BigInt na = x * m(a, c) + y * m(b, c);
    BigInt nb = u * m(a, c) + v * m(b, c);
    m(a, c) = std::move(na);
    m(b, c) = std::move(nb);
  }
}

void add_row_multiple(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += f * m(src, c);
}

void add_col_multiple(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += f * m(r, src);
}

void negate_row(IntMat& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

HermiteForm hnf(const IntMat& m) {
  HermiteForm out{m, IntMat::identity(m.rows()), 0};
  IntMat& h = out.h;
  IntMat& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(r, c).get_mpz_t(), h(i, c).get_mpz_t());
      BigInt p = h(i, c) / g;
      BigInt q = h(r, c) / g;
      // [s t; -p q] has determinant s*q + t*p = 1.
      BigInt neg_p = -p;
      combine_rows(h, r, i, s, t, neg_p, q);
      combine_rows(u, r, i, s, t, neg_p, q);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt f = -floor_div(h(i, c), h(r, c));
      if (f == 0) continue;
      add_row_multiple(h, i, r, f);
      add_row_multiple(u, i, r, f);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

IntVec SmithForm::invariant_factors() const {
  IntVec d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

SmithForm snf(const IntMat& m) {
  SmithForm out{m, IntMat::identity(m.rows()), IntMat::identity(m.cols())};
  IntMat& s = out.s;
  const std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = s.rows(), pc = s.cols();
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (pr == s.rows() || abs(s(i, j)) < abs(s(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr == s.rows()) return out;
      s.swap_rows(t, pr);
      out.u.swap_rows(t, pr);
      s.swap_cols(t, pc);
      out.v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        BigInt f = -floor_div(s(i, t), s(t, t));
        if (f != 0) {
          add_row_multiple(s, i, t, f);
          add_row_multiple(out.u, i, t, f);
        }
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        BigInt f = -floor_div(s(t, j), s(t, t));
        if (f != 0) {
          add_col_multiple(s, j, t, f);
          add_col_multiple(out.v, j, t, f);
        }
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and repeat.
      bool divides = true;
      for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            add_row_multiple(s, t, i, BigInt(1));
            add_row_multiple(out.u, t, i, BigInt(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(out.u, t);
    }
  }
  return out;
}

}  // namespace toricmld
