#include <gtest/gtest.h>

#include <array>
#include <random>
#include <set>

#include "repstat/qseries.hpp"

using namespace repstat;

namespace {

using Mat = std::vector<int>;  // row-major n x n over F_p

int det_mod(Mat a, int n, int p) {
  int det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (a[r * n + c] % p) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[pivot * n + k]);
      det = (p - det) % p;
    }
    det = det * a[c * n + c] % p;
    int inv = 1;
    while (inv * a[c * n + c] % p != 1) ++inv;
    for (int r = c + 1; r < n; ++r) {
      const int f = a[r * n + c] * inv % p;
      for (int k = 0; k < n; ++k) a[r * n + k] = ((a[r * n + k] - f * a[c * n + k]) % p + p) % p;
    }
  }
  return det;
}

Mat mul(const Mat& a, const Mat& b, int n, int p) {
  Mat c(a.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + a[i * n + k] * b[k * n + j]) % p;
  return c;
}

std::vector<Mat> all_invertible(int n, int p) {
  std::vector<Mat> out;
  int total = 1;
  for (int i = 0; i < n * n; ++i) total *= p;
  for (int code = 0; code < total; ++code) {
    Mat m(static_cast<std::size_t>(n * n));
    for (int i = 0, c = code; i < n * n; ++i, c /= p) m[i] = c % p;
    if (det_mod(m, n, p)) out.push_back(m);
  }
  return out;
}

// Conjugacy classes by orbit enumeration: g ~ h g h^{-1}.
int class_count_brute(int n, int p) {
  const auto group = all_invertible(n, p);
  std::map<Mat, int> index;
  for (std::size_t i = 0; i < group.size(); ++i) index[group[i]] = static_cast<int>(i);
  std::vector<Mat> inverses(group.size());
  for (const auto& g : group)
    for (const auto& h : group) {
      const Mat prod = mul(g, h, n, p);
      bool id = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) id = id && prod[i * n + j] == (i == j);
      if (id) {
        inverses[index[g]] = h;
        break;
      }
    }
  std::vector<bool> seen(group.size(), false);
  int classes = 0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (seen[i]) continue;
    ++classes;
    for (std::size_t h = 0; h < group.size(); ++h)
      seen[index[mul(mul(group[h], group[i], n, p), inverses[h], n, p)]] = true;
  }
  return classes;
}

std::int64_t symmetric_invertible_brute(int n, int p) {
  std::int64_t hits = 0;
  for (const auto& m : all_invertible(n, p)) {
    bool sym = true;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) sym = sym && m[i * n + j] == m[j * n + i];
    hits += sym;
  }
  return hits;
}

QPolynomial random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 6), coef(-20, 20);
  std::vector<BigInt> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return QPolynomial(c);
}

const QPolynomial q = QPolynomial::monomial(1, 1);

}  // namespace

TEST(QPolynomial, Formatting) {
  EXPECT_EQ(QPolynomial().to_string(), "0");
  EXPECT_EQ((q * q - 1).to_string(), "-1 + 1*q^2");
  EXPECT_EQ((q - 1).to_string(), "-1 + 1*q");
  EXPECT_EQ((q * q - 1).coeff_strings(), (std::vector<std::string>{"-1", "0", "1"}));
  EXPECT_EQ(QPolynomial().degree(), -1);
  EXPECT_EQ(QPolynomial(7).degree(), 0);
}

TEST(QPolynomial, RingAxiomsAndEvaluation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    ASSERT_EQ(-(-a), a);
    for (int x : {-3, 0, 2, 5}) {
      const BigInt X = x;
      ASSERT_EQ((a * b).evaluate(X), a.evaluate(X) * b.evaluate(X));
      ASSERT_EQ((a + b).evaluate(X), a.evaluate(X) + b.evaluate(X));
    }
    ASSERT_EQ((a * b).evaluate(Rational(2, 3)), a.evaluate(Rational(2, 3)) * b.evaluate(Rational(2, 3)));
  }
}

TEST(TruncatedSeries, ProductIsAssociativeAndTruncates) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9);
  auto rand_series = [&] {
    IntSeries s(12);
    for (std::size_t k = 0; k <= 12; ++k) s[k] = coef(rng);
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = rand_series(), b = rand_series(), c = rand_series();
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * b, b * a);
  }
  // (1 - t) * sum t^k = 1 up to the order.
  IntSeries one_minus_t = IntSeries::one(10) - IntSeries::monomial(1, 1, 10);
  EXPECT_EQ(one_minus_t * IntSeries::geometric(1, 1, 10), IntSeries::one(10));
  EXPECT_EQ(IntSeries::monomial(5, 11, 10), IntSeries(10));
}

TEST(FeitFine, SmallClassCounts) {
  const auto c = feit_fine(3);
  EXPECT_EQ(c[0], QPolynomial(1));
  EXPECT_EQ(c[1], q - 1);
  EXPECT_EQ(c[2], q * q - 1);
  EXPECT_EQ(c[3], q * q * q - q);
}

TEST(FeitFine, MonicOfDegreeN) {
  const auto c = feit_fine(30);
  for (int n = 0; n <= 30; ++n) {
    EXPECT_EQ(c[n].degree(), n) << n;
    EXPECT_EQ(c[n].leading(), 1) << n;
  }
}

TEST(FeitFine, MatchesBruteForceClassCounts) {
  const auto c = feit_fine(3);
  for (auto [n, p] : {std::pair{1, 2}, {1, 3}, {1, 5}, {2, 2}, {2, 3}, {2, 5}, {3, 2}})
    EXPECT_EQ(c[n].evaluate(BigInt(p)), class_count_brute(n, p)) << n << "," << p;
}

TEST(FeitFine, NormalizedCountsApproachOne) {
  // Not monotone (the error oscillates with parity) but it does shrink.
  const auto c = feit_fine(30);
  auto err = [&](int n) -> Rational { return abs(Rational(c[n].evaluate(BigInt(2)), pow_big(2, n)) - 1); };
  EXPECT_LT(err(30), err(5));
  EXPECT_LT(err(30), Rational(1, 1000));
}

TEST(GlOrder, MatchesBruteForce) {
  for (auto [n, p] : {std::pair{1, 3}, {2, 2}, {2, 3}, {3, 2}})
    EXPECT_EQ(gl_order(n).evaluate(BigInt(p)), BigInt(all_invertible(n, p).size()));
  EXPECT_EQ(gl_order(2), (q * q - 1) * (q * q - q));
}

TEST(Gow, ClosedForms) {
  EXPECT_EQ(gow_sum(1), q - 1);
  EXPECT_EQ(gow_sum(2), q * q * (q - 1));
  EXPECT_EQ(gow_sum(3).evaluate(BigInt(2)), 28);
  // Degree sum over the GL_2 census, doubled to clear the halves in the counts.
  const QPolynomial qm1qm2(std::vector<BigInt>{2, -3, 1});
  EXPECT_EQ(2 * gow_sum(2), 2 * (q - 1) + 2 * (q - 1) * q + qm1qm2 * (q + 1) + (q * q - q) * (q - 1));
}

TEST(Gow, MatchesSymmetricMatrixCounts) {
  for (auto [n, p] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}, {2, 5}, {3, 2}, {3, 3}}) {
    const BigInt expect = gow_sum(n).evaluate(BigInt(p));
    EXPECT_EQ(symmetric_invertible_count(n, p), expect) << n << "," << p;
    EXPECT_EQ(BigInt(symmetric_invertible_brute(n, p)), expect) << n << "," << p;
  }
  EXPECT_EQ(symmetric_invertible_count(2, 2), 4);
  EXPECT_EQ(symmetric_invertible_count(2, 3), 18);
  EXPECT_THROW(symmetric_invertible_count(2, 4), UnsupportedField);
  EXPECT_THROW(symmetric_invertible_count(4, 2), ValidationError);
}

TEST(Gauss, IdentityHoldsAndAgreesWithDirectExpansion) {
  for (int N : {1, 2, 10, 25, 60}) EXPECT_TRUE(gauss_identity_check(N)) << N;
  // Plain int64 expansion of the product side as an oracle.
  const int N = 25;
  std::vector<std::int64_t> prod(N + 1, 0);
  prod[0] = 1;
  for (int i = 1; 2 * i - 1 <= N; ++i) {
    for (int k = N; k >= 2 * i; --k) prod[k] -= prod[k - 2 * i];  // * (1 - t^{2i})
    for (int k = 2 * i - 1; k <= N; ++k) prod[k] += prod[k - (2 * i - 1)];  // / (1 - t^{2i-1})
  }
  std::set<int> triangular;
  for (int i = 0; i * (i + 1) / 2 <= N; ++i) triangular.insert(i * (i + 1) / 2);
  for (int k = 0; k <= N; ++k) EXPECT_EQ(prod[k], triangular.count(k) ? 1 : 0) << k;
  EXPECT_THROW(gauss_identity_check(0), ValidationError);
}

TEST(Gamma, PartialSums) {
  EXPECT_EQ(gamma_q(2, 1).sum, 1);
  const Rational seven = 1 + Rational(1, 2) + Rational(1, 8) + Rational(1, 64) + Rational(1, 1024) +
                         Rational(1, 32768) + Rational(1, 2097152);
  EXPECT_EQ(gamma_q(2, 7).sum, seven);
  EXPECT_NEAR(to_double(1 / gamma_q(2, 10).sum), 0.60914, 1e-5);  // five digits, truncated
  Rational prev = 0;
  for (int t = 1; t <= 12; ++t) {
    const auto g = gamma_q(2, t);
    EXPECT_GT(g.sum, prev);
    // The bound covers the true tail (approximated by many more terms).
    EXPECT_LE(gamma_q(2, 40).sum - g.sum, g.tail_bound);
    EXPECT_LE(g.tail_bound, Rational(2, pow_big(2, static_cast<unsigned>(t * (t + 1) / 2))));
    prev = g.sum;
  }
  EXPECT_THROW(gamma_q(1, 3), ValidationError);
  EXPECT_THROW(gamma_q(2, 0), ValidationError);
}

TEST(LogConstantRatio, Values) {
  for (int qq : {2, 3, 7}) EXPECT_EQ(log_constant_ratio(1, qq), 1);
  EXPECT_EQ(log_constant_ratio(2, 2), Rational(8, 9));
  EXPECT_EQ(log_constant_ratio(20, 2),
            Rational(BigInt("93406541548517177677209141248"), BigInt("153209606471434455543616640625")));
  EXPECT_THROW(log_constant_ratio(3, 1), ValidationError);
  EXPECT_THROW(log_constant_ratio(0, 2), ValidationError);
}

TEST(LogConstantRatio, NearInverseGammaFromFifteenOn) {
  const auto classes = feit_fine(30);
  const auto g = gamma_q(2, 12);
  const Rational inv = 1 / g.sum;
  // 1/gamma lies in [1/(sum + tail), 1/sum].
  const Rational slack = inv - 1 / (g.sum + g.tail_bound);
  for (int n = 15; n <= 30; ++n) {
    const Rational r = log_constant_ratio(n, 2, classes);
    EXPECT_LE(abs(r - inv), slack + Rational(1, 100)) << n;
  }
  EXPECT_LT(abs(log_constant_ratio(20, 2, classes) - inv), Rational(1, 100));
}

TEST(Census, GlTwoAtTwo) {
  const auto c = gl2_census(2);
  ASSERT_EQ(c.reps.size(), 4u);
  const std::vector<std::pair<int, int>> expect = {{1, 1}, {1, 2}, {0, 3}, {1, 1}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(c.reps[i].count, expect[i].first);
    EXPECT_EQ(c.reps[i].value, expect[i].second);
  }
  EXPECT_EQ(c.group_order, 6);
  EXPECT_EQ(c.rep_square_sum, 6);
  EXPECT_TRUE(c.reps_ok);
  EXPECT_TRUE(c.symbolic_reps_ok);
}

TEST(Census, ClassRowsAtThree) {
  const auto c = gl2_census(3);
  ASSERT_EQ(c.classes.size(), 4u);
  const std::vector<std::pair<int, int>> expect = {{2, 1}, {2, 8}, {1, 12}, {3, 3}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(c.classes[i].count, expect[i].first);
    EXPECT_EQ(c.classes[i].value, expect[i].second);
  }
  EXPECT_EQ(c.class_sum_stated, 39);
  EXPECT_EQ(c.class_sum_centralizer, 48);
  EXPECT_EQ(c.group_order, 48);
}

TEST(Census, EllipticClassSizeResolvedByClassEquation) {
  for (int qq : {2, 3, 4, 5, 7, 8, 9, 11, 101}) {
    const auto c = gl2_census(qq);
    EXPECT_TRUE(c.reps_ok) << qq;
    EXPECT_TRUE(c.classes_centralizer_ok) << qq;
    EXPECT_FALSE(c.classes_stated_ok) << qq;
    EXPECT_TRUE(c.class_count_ok) << qq;
  }
  const auto c = gl2_census(5);
  EXPECT_TRUE(c.symbolic_reps_ok);
  EXPECT_TRUE(c.symbolic_classes_centralizer_ok);
  EXPECT_FALSE(c.symbolic_classes_stated_ok);
  EXPECT_THROW(gl2_census(1), ValidationError);
}

TEST(Census, ClassCountMatchesFeitFine) {
  // 4 families: (q-1) + (q-1) + (q-1)(q-2)/2 + (q^2-q)/2 = q^2 - 1.
  const auto c2 = feit_fine(2)[2];
  EXPECT_EQ(c2, q * q - 1);
  for (int qq = 2; qq <= 30; ++qq) {
    BigInt total = 0;
    for (const auto& r : gl2_census(qq).classes) total += r.count;
    EXPECT_EQ(total, c2.evaluate(BigInt(qq)));
  }
}

TEST(Sl2Pgl2, LeadingTerms) {
  const auto c3 = sl2_pgl2_leading_check(3);
  EXPECT_EQ(c3.plus.twice_dim_sq, 8);
  EXPECT_EQ(c3.plus.class_size, 6);
  EXPECT_EQ(c3.plus.ratio, Rational(4, 3));
  EXPECT_EQ(c3.minus.twice_dim_sq, 2);
  EXPECT_EQ(c3.minus.class_size, 3);
  for (int qq = 3; qq <= 101; qq += 2) {
    const auto c = sl2_pgl2_leading_check(qq);
    EXPECT_TRUE(c.leading_terms_equal);
    EXPECT_LE(abs(c.plus.ratio - 1), Rational(5, qq)) << qq;
    EXPECT_LE(abs(c.minus.ratio - 1), Rational(5, qq)) << qq;
  }
  EXPECT_THROW(sl2_pgl2_leading_check(4), ValidationError);
  EXPECT_THROW(sl2_pgl2_leading_check(1), ValidationError);
}
