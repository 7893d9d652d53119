#pragma once

// Exact polynomials in q and truncated power series in t, and the GL_n(F_q)
// quantities built from them: degree sums, class counts, group orders.
// No floating point here; rationals are exact and rendering happens at the
// output boundary.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repstat/bigint.hpp"
#include "repstat/error.hpp"

namespace repstat {

/// Integer polynomial in q. coeffs()[k] is the coefficient of q^k; no
/// trailing zeros, so the zero polynomial has no coefficients.
class QPolynomial {
 public:
  QPolynomial() = default;
  QPolynomial(int c) : QPolynomial(BigInt(c)) {}  // NOLINT: constants convert
  QPolynomial(BigInt c) {                          // NOLINT
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  explicit QPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static QPolynomial monomial(BigInt c, std::size_t power) {
    std::vector<BigInt> v(power + 1);
    v[power] = std::move(c);
    return QPolynomial(std::move(v));
  }
  /// q^a - q^b.
  static QPolynomial binomial(std::size_t a, std::size_t b) {
    return monomial(1, a) - monomial(1, b);
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
  BigInt leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

  QPolynomial& operator+=(const QPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  QPolynomial& operator-=(const QPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator-(QPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return QPolynomial(std::move(out));
  }
  QPolynomial& operator*=(const QPolynomial& o) { return *this = *this * o; }
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  /// Horner evaluation; T is BigInt or Rational.
  template <typename T>
  T evaluate(const T& q) const {
    T acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + T(*it);
    return acc;
  }

  /// "c0 + c1*q + c2*q^2", nonzero terms only, ascending powers; "0" if zero.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += coeffs_[k].str();
      if (k == 1) s += "*q";
      if (k > 1) s += "*q^" + std::to_string(k);
    }
    return s;
  }

  /// Coefficient array as decimal strings, index = power of q.
  std::vector<std::string> coeff_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.str());
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<BigInt> coeffs_;
};

/// Power series in t truncated at a fixed order N; products drop t^k, k > N.
template <typename Coeff>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

  static TruncatedSeries one(std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = Coeff(1);
    return s;
  }
  /// c * t^power (zero if power exceeds the order).
  static TruncatedSeries monomial(Coeff c, std::size_t power, std::size_t order) {
    TruncatedSeries s(order);
    if (power <= order) s.coeffs_[power] = std::move(c);
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const Coeff& operator[](std::size_t k) const { return coeffs_.at(k); }
  Coeff& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_order(b);
    const std::size_t n = a.order();
    TruncatedSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i] == Coeff{}) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (b.coeffs_[j] == Coeff{}) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  /// sum_{k >= 0} (c t^step)^k = 1 / (1 - c t^step), truncated. step >= 1.
  static TruncatedSeries geometric(const Coeff& c, std::size_t step, std::size_t order) {
    TruncatedSeries s(order);
    Coeff power(1);
    for (std::size_t k = 0; k * step <= order; ++k) {
      s.coeffs_[k * step] = power;
      power = power * c;
    }
    return s;
  }

 private:
  void check_order(const TruncatedSeries& o) const {
    if (o.coeffs_.size() != coeffs_.size())
      throw ValidationError("truncated series of different orders");
  }
  std::vector<Coeff> coeffs_;
};

using QSeries = TruncatedSeries<QPolynomial>;
using IntSeries = TruncatedSeries<BigInt>;

/// C_0(q), ..., C_nmax(q): conjugacy-class counts of GL_n(F_q), read off the
/// expansion of prod_{r >= 1} (1 - t^r) / (1 - q t^r).
inline std::vector<QPolynomial> feit_fine(int nmax) {
  if (nmax < 0) throw ValidationError("feit_fine needs nmax >= 0");
  const auto N = static_cast<std::size_t>(nmax);
  QSeries acc = QSeries::one(N);
  const QPolynomial q = QPolynomial::monomial(1, 1);
  for (std::size_t r = 1; r <= N; ++r) {
    QSeries numer = QSeries::one(N) - QSeries::monomial(QPolynomial(1), r, N);
    acc = acc * numer * QSeries::geometric(q, r, N);
  }
  return acc.coeffs();
}

/// Sum of the irreducible character degrees of GL_n(F_q):
/// q^{m^2+m} (q^{2m+1}-1)(q^{2m-1}-1)...(q-1) for n = 2m+1,
/// q^{m^2+m} (q^{2m-1}-1)...(q-1)           for n = 2m.
inline QPolynomial gow_sum(int n) {
  if (n < 1) throw ValidationError("gow_sum needs n >= 1");
  const auto m = static_cast<std::size_t>(n / 2);
  const std::size_t top = (n % 2) ? 2 * m + 1 : 2 * m - 1;
  QPolynomial p = QPolynomial::monomial(1, m * m + m);
  for (std::size_t k = 1; k <= top; k += 2) p *= QPolynomial::binomial(k, 0);
  return p;
}

/// |GL_n(F_q)| = (q^n - 1)(q^n - q)...(q^n - q^{n-1}).
inline QPolynomial gl_order(int n) {
  if (n < 1) throw ValidationError("gl_order needs n >= 1");
  const auto N = static_cast<std::size_t>(n);
  QPolynomial p(1);
  for (std::size_t i = 0; i < N; ++i) p *= QPolynomial::binomial(N, i);
  return p;
}

namespace detail {

inline bool is_small_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline int mod_pow(int base, int exp, int p) {
  int r = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

/// Rank of a matrix over F_p by Gaussian elimination (destroys the input).
inline int rank_mod_p(std::vector<std::vector<int>>& a, int p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const int inv = mod_pow(a[rank][c], p - 2, p);
    for (auto& v : a[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const int f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace detail

/// Invertible symmetric n x n matrices over F_q, by exhaustive enumeration.
/// Supported for n <= 3 and prime q <= 5.
inline BigInt symmetric_invertible_count(int n, int q) {
  if (n < 1 || n > 3) throw ValidationError("symmetric_invertible_count supports 1 <= n <= 3");
  if (q < 2 || q > 5) throw ValidationError("symmetric_invertible_count supports q <= 5");
  if (!detail::is_small_prime(q))
    throw UnsupportedField("only prime fields are enumerated; q = " + std::to_string(q) +
                           " is not prime");
  const int slots = n * (n + 1) / 2;
  int total = 1;
  for (int i = 0; i < slots; ++i) total *= q;
  std::int64_t hits = 0;
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        m[i][j] = m[j][i] = c % q;
        c /= q;
      }
    auto work = m;
    if (detail::rank_mod_p(work, q) == n) ++hits;
  }
  return hits;
}

/// Coefficient-exact comparison of sum_i t^{i(i+1)/2} with
/// prod_i (1 - t^{2i}) / (1 - t^{2i-1}) up to t^N.
inline bool gauss_identity_check(int N) {
  if (N < 1) throw ValidationError("gauss_identity_check needs N >= 1");
  const auto order = static_cast<std::size_t>(N);
  IntSeries lhs(order);
  for (std::size_t i = 0; i * (i + 1) / 2 <= order; ++i) lhs[i * (i + 1) / 2] = 1;
  IntSeries rhs = IntSeries::one(order);
  for (std::size_t i = 1; 2 * i - 1 <= order; ++i) {
    rhs *= IntSeries::one(order) - IntSeries::monomial(BigInt(1), 2 * i, order);
    rhs *= IntSeries::geometric(BigInt(1), 2 * i - 1, order);
  }
  return lhs == rhs;
}

struct GammaPartial {
  Rational sum;         // sum_{i < terms} q^{-i(i+1)/2}
  Rational tail_bound;  // upper bound on the omitted tail
};

/// Partial sum of gamma(q) = sum_{i >= 0} q^{-i(i+1)/2}. The tail from
/// i = T on is at most q^{-T(T+1)/2} / (1 - q^{-(T+1)}), which is below
/// 2 q^{-T(T+1)/2} whenever q^{T+1} >= 2.
inline GammaPartial gamma_q(const Rational& q, int terms) {
  if (q <= 1) throw ValidationError("gamma_q needs q > 1");
  if (terms < 1) throw ValidationError("gamma_q needs at least one term");
  const Rational inv = 1 / q;
  GammaPartial g;
  Rational term = 1;
  for (int i = 0; i < terms; ++i) {
    g.sum += term;
    for (int k = 0; k <= i; ++k) term *= inv;  // advance exponent by i + 1
  }
  // `term` is now q^{-T(T+1)/2}.
  Rational geo = 1;
  for (int k = 0; k <= terms; ++k) geo *= inv;
  g.tail_bound = term / (1 - geo);
  return g;
}

/// B_n(q)^2 / (C_n(q) D_n(q)) at a rational q > 1.
inline Rational log_constant_ratio(int n, const Rational& q, const std::vector<QPolynomial>& classes) {
  if (n < 1) throw ValidationError("log_constant_ratio needs n >= 1");
  if (q <= 1) throw ValidationError("log_constant_ratio needs q > 1 (q = 1 zeroes the denominator)");
  if (classes.size() <= static_cast<std::size_t>(n))
    throw ValidationError("class-count table too short");
  const Rational b = gow_sum(n).evaluate(q);
  const Rational den = classes[static_cast<std::size_t>(n)].evaluate(q) * gl_order(n).evaluate(q);
  if (den == 0) throw ValidationError("denominator vanishes at this q");
  return b * b / den;
}

inline Rational log_constant_ratio(int n, const Rational& q) {
  return log_constant_ratio(n, q, feit_fine(n));
}

/// The closed-form census of GL_2(F_q): representation rows (count, dim)
/// and class rows (count, size), with the class-equation and
/// sum-of-squares identities checked numerically at q and symbolically.
///
/// The fourth class family (elliptic, diagonalizable only over F_{q^2}) is
/// carried with two candidate sizes: the stated (q^2-q)/2 and the
/// centralizer index q^2-q. Both are checked against |GL_2|.
struct Gl2Census {
  struct Row {
    BigInt count;
    BigInt value;
  };
  BigInt q;
  std::vector<Row> reps;     // value = dimension
  std::vector<Row> classes;  // value = class size, row 4 uses the stated size
  BigInt elliptic_size_stated;
  BigInt elliptic_size_centralizer;
  BigInt group_order;
  BigInt rep_square_sum;
  BigInt class_sum_stated;
  BigInt class_sum_centralizer;
  bool reps_ok = false;                  // sum count*dim^2 == |GL_2|
  bool classes_stated_ok = false;        // class equation with (q^2-q)/2
  bool classes_centralizer_ok = false;   // class equation with q^2-q
  bool class_count_ok = false;           // sum of class counts == C_2(q)
  bool symbolic_reps_ok = false;
  bool symbolic_classes_stated_ok = false;
  bool symbolic_classes_centralizer_ok = false;
};

inline Gl2Census gl2_census(const BigInt& q) {
  if (q < 2) throw ValidationError("gl2_census needs q >= 2");
  Gl2Census c;
  c.q = q;
  const BigInt principal = (q - 1) * (q - 2) / 2;
  const BigInt discrete = (q * q - q) / 2;
  c.reps = {{q - 1, 1}, {q - 1, q}, {principal, q + 1}, {discrete, q - 1}};
  c.elliptic_size_stated = (q * q - q) / 2;
  c.elliptic_size_centralizer = q * q - q;
  c.classes = {{q - 1, 1}, {q - 1, q * q - 1}, {principal, q * (q + 1)},
               {discrete, c.elliptic_size_stated}};
  c.group_order = gl_order(2).evaluate(q);
  for (const auto& r : c.reps) c.rep_square_sum += r.count * r.value * r.value;
  BigInt count_sum = 0;
  for (const auto& r : c.classes) {
    c.class_sum_stated += r.count * r.value;
    count_sum += r.count;
  }
  c.class_sum_centralizer =
      c.class_sum_stated - discrete * c.elliptic_size_stated + discrete * c.elliptic_size_centralizer;
  c.reps_ok = c.rep_square_sum == c.group_order;
  c.classes_stated_ok = c.class_sum_stated == c.group_order;
  c.classes_centralizer_ok = c.class_sum_centralizer == c.group_order;
  c.class_count_ok = count_sum == feit_fine(2)[2].evaluate(q);

  // Symbolic versions, scaled by 4 to clear the halves.
  using P = QPolynomial;
  const P Q = P::monomial(1, 1);
  const P qm1 = Q - 1, qm2 = Q - 2, qp1 = Q + 1, q2mq = Q * Q - Q;
  const P four_order = 4 * gl_order(2);
  const P reps4 = 4 * qm1 + 4 * qm1 * Q * Q + 2 * qm2 * qm1 * qp1 * qp1 + 2 * q2mq * qm1 * qm1;
  const P classes_common = 4 * qm1 + 4 * qm1 * (Q * Q - 1) + 2 * qm1 * qm2 * Q * qp1;
  c.symbolic_reps_ok = reps4 == four_order;
  c.symbolic_classes_stated_ok = classes_common + q2mq * q2mq == four_order;
  c.symbolic_classes_centralizer_ok = classes_common + 2 * q2mq * q2mq == four_order;
  return c;
}

/// Compares 2 d^2 for the two extra SL_2 families (d = (q+-1)/2) with the
/// matching PGL_2 class sizes q(q+1)/2 and (q^2-q)/2.
struct Sl2Pgl2Check {
  struct Pair {
    BigInt twice_dim_sq;
    BigInt class_size;
    Rational ratio;  // twice_dim_sq / class_size
  };
  BigInt q;
  Pair plus;   // d = (q+1)/2
  Pair minus;  // d = (q-1)/2
  bool leading_terms_equal = false;  // symbolic: both sides q^2/2 + ...
};

inline Sl2Pgl2Check sl2_pgl2_leading_check(const BigInt& q) {
  if (q < 3 || q % 2 == 0) throw ValidationError("sl2_pgl2_leading_check needs odd q >= 3");
  Sl2Pgl2Check c;
  c.q = q;
  const BigInt dp = (q + 1) / 2, dm = (q - 1) / 2;
  c.plus = {2 * dp * dp, q * (q + 1) / 2, {}};
  c.minus = {2 * dm * dm, (q * q - q) / 2, {}};
  c.plus.ratio = Rational(c.plus.twice_dim_sq, c.plus.class_size);
  c.minus.ratio = Rational(c.minus.twice_dim_sq, c.minus.class_size);
  // Times 2: (q+1)^2 vs q^2+q, and (q-1)^2 vs q^2-q.
  using P = QPolynomial;
  const P Q = P::monomial(1, 1);
  const P lhs_p = (Q + 1) * (Q + 1), rhs_p = Q * Q + Q;
  const P lhs_m = (Q - 1) * (Q - 1), rhs_m = Q * Q - Q;
  c.leading_terms_equal = lhs_p.degree() == rhs_p.degree() && lhs_p.leading() == rhs_p.leading() &&
                          lhs_m.degree() == rhs_m.degree() && lhs_m.leading() == rhs_m.leading();
  return c;
}

}  // namespace repstat
