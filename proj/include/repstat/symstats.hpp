#pragma once

// Dimensions, class sizes and the statistics built on them for S_n.
//
// Everything that is a count is exact (BigInt / Rational). Logarithms are
// derived from the exact values through log_big, never from overflowing
// floating-point conversions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "repstat/bigint.hpp"
#include "repstat/error.hpp"
#include "repstat/partitions.hpp"

namespace repstat {

inline constexpr int kDefaultSweepCap = 50;

/// pi*sqrt(2/3) - 2: the exponent rate in the cosine bound for S_n.
inline double a0_constant() {
  return std::numbers::pi * std::sqrt(2.0 / 3.0) - 2.0;
}

namespace detail {

// Multiplies many small factors into a BigInt, batching them in a 64-bit
// accumulator so the big multiplication count stays low.
class SmallProduct {
 public:
  void mul(std::uint64_t f) {
    if (f == 0) {
      zero_ = true;
      return;
    }
    if (acc_ > std::numeric_limits<std::uint64_t>::max() / f) flush();
    acc_ *= f;
  }
  BigInt value() {
    flush();
    return zero_ ? BigInt(0) : big_;
  }

 private:
  void flush() {
    if (acc_ != 1) big_ *= acc_;
    acc_ = 1;
  }
  BigInt big_ = 1;
  std::uint64_t acc_ = 1;
  bool zero_ = false;
};

inline BigInt hook_product(const Partition& lambda) {
  SmallProduct prod;
  const Partition conj = conjugate(lambda);
  for (std::size_t i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda[i]; ++j)
      prod.mul(static_cast<std::uint64_t>((lambda[i] - j - 1) +
                                          (conj[static_cast<std::size_t>(j)] -
                                           static_cast<int>(i) - 1) + 1));
  return prod.value();
}

inline BigInt centralizer_order(const Partition& lambda) {
  SmallProduct prod;
  for (auto [part, mult] : to_frequency(lambda).freq) {
    for (int k = 0; k < mult; ++k) prod.mul(static_cast<std::uint64_t>(part));
    for (int k = 2; k <= mult; ++k) prod.mul(static_cast<std::uint64_t>(k));
  }
  return prod.value();
}

inline BigInt exact_quotient(const BigInt& num, const BigInt& den, const char* what) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw InvariantViolation(std::string(what) + ": division is not exact");
  return q;
}

inline void check_cap(int n, int cap) {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (n > cap) throw CapExceeded(n, cap);
}

}  // namespace detail

/// d_lambda = n! / (product of hook lengths).
inline BigInt dimension(const Partition& lambda, const BigInt& n_factorial) {
  return detail::exact_quotient(n_factorial, detail::hook_product(lambda),
                                "hook-length formula");
}

inline BigInt dimension(const Partition& lambda) {
  return dimension(lambda, factorial(lambda.n()));
}

/// c_lambda = n! / prod_i (i^{a_i} a_i!).
inline BigInt class_size(const Partition& lambda, const BigInt& n_factorial) {
  return detail::exact_quotient(n_factorial, detail::centralizer_order(lambda),
                                "class size");
}

inline BigInt class_size(const Partition& lambda) {
  return class_size(lambda, factorial(lambda.n()));
}

/// Number of s in S_n with s^2 = 1, from the closed sum over k pairs.
/// Cross-checked against I(n) = I(n-1) + (n-1) I(n-2).
inline BigInt involution_count(int n) {
  if (n < 0) throw ValidationError("involution_count of a negative integer");
  const auto fact = factorial_table(n);
  BigInt sum = 0;
  BigInt two_k = 1;
  for (int k = 0; 2 * k <= n; ++k) {
    sum += fact[n] / (two_k * fact[k] * fact[n - 2 * k]);
    two_k *= 2;
  }
  BigInt prev = 1, cur = 1;  // I(0), I(1)
  for (int m = 2; m <= n; ++m) {
    BigInt next = cur + (m - 1) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  if (sum != cur) throw InvariantViolation("involution count: sum and recurrence disagree");
  return sum;
}

struct DimRecord {
  Partition lambda;
  BigInt dim;
  BigInt class_size;
  double log_dim_sq = 0;  // ln d^2
  double log_class = 0;   // ln c
};

inline DimRecord make_record(const Partition& lambda, const BigInt& n_factorial) {
  DimRecord r{lambda, dimension(lambda, n_factorial), class_size(lambda, n_factorial)};
  r.log_dim_sq = 2.0 * log_big(r.dim);
  r.log_class = log_big(r.class_size);
  return r;
}

/// One record per partition of n, reverse-lex order. Verifies
/// sum d = I(n), sum d^2 = n! and sum c = n! before returning.
inline std::vector<DimRecord> sweep(int n, int cap = kDefaultSweepCap) {
  detail::check_cap(n, cap);
  const BigInt nf = factorial(n);
  std::vector<DimRecord> out;
  BigInt sum_dim = 0, sum_dim_sq = 0, sum_class = 0;
  for_each_partition(n, [&](const Partition& lambda) {
    out.push_back(make_record(lambda, nf));
    const DimRecord& r = out.back();
    sum_dim += r.dim;
    sum_dim_sq += r.dim * r.dim;
    sum_class += r.class_size;
  });
  if (sum_dim_sq != nf) throw InvariantViolation("sum of squared dimensions != n!");
  if (sum_class != nf) throw InvariantViolation("class equation fails");
  if (sum_dim != involution_count(n))
    throw InvariantViolation("sum of dimensions != number of involutions");
  return out;
}

struct MaxDimension {
  BigInt m;
  std::vector<Partition> argmax;  // enumeration order
};

inline MaxDimension max_dimension(std::span<const DimRecord> records) {
  MaxDimension best{0, {}};
  for (const auto& r : records) {
    if (r.dim > best.m) {
      best.m = r.dim;
      best.argmax.clear();
    }
    if (r.dim == best.m) best.argmax.push_back(r.lambda);
  }
  return best;
}

inline MaxDimension max_dimension(int n, int cap = kDefaultSweepCap) {
  return max_dimension(sweep(n, cap));
}

/// d_lambda^2 / n! in lowest terms.
inline Rational plancherel_mass(const Partition& lambda) {
  const BigInt d = dimension(lambda);
  return Rational(d * d, factorial(lambda.n()));
}

/// Shape of the row-insertion tableau of a permutation of 1..n.
inline Partition rsk_shape(std::span<const int> perm) {
  const auto n = static_cast<int>(perm.size());
  std::vector<char> seen(perm.size() + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw ValidationError("rsk_shape needs a permutation of 1..n");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<std::vector<int>> rows;
  for (int x : perm) {
    for (std::size_t r = 0;; ++r) {
      if (r == rows.size()) {
        rows.push_back({x});
        break;
      }
      auto& row = rows[r];
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        break;
      }
      std::swap(x, *it);
    }
  }
  std::vector<Part> shape;
  shape.reserve(rows.size());
  for (const auto& row : rows) shape.push_back(static_cast<Part>(row.size()));
  return Partition(std::move(shape));
}

struct PlancherelSample {
  Partition shape;
  double log_pl = 0;  // ln(d^2 / n!)
};

/// Samples are generated in fixed blocks; block b draws from an mt19937_64
/// seeded by seed_seq{seed_lo, seed_hi, b}. Both engine and seed_seq are
/// fully specified by the C++ standard, and bounded draws use plain
/// rejection, so a (seed, count) pair yields the same stream on every
/// platform and for every worker count.
inline constexpr int kPlancherelBlock = 4096;

namespace detail {

inline std::uint64_t bounded(std::mt19937_64& eng, std::uint64_t range) {
  // Uniform on [0, range). Rejects the top sliver so the modulus is unbiased.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t u;
  do u = eng(); while (u >= limit);
  return u % range;
}

inline std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// Uniform random permutation of 1..n by Fisher-Yates.
inline void shuffle_identity(std::mt19937_64& eng, std::vector<int>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i) + 1;
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = detail::bounded(eng, i);
    std::swap(perm[i - 1], perm[j]);
  }
}

inline std::vector<PlancherelSample> sample_plancherel(int n, std::uint64_t seed, int count,
                                                       int workers = 1) {
  if (n < 1) throw ValidationError("sample_plancherel needs n >= 1");
  if (count < 1) throw ValidationError("sample_plancherel needs count >= 1");
  workers = std::max(1, workers);
  const BigInt nf = factorial(n);
  const double log_nf = log_big(nf);
  const int blocks = (count + kPlancherelBlock - 1) / kPlancherelBlock;

  std::vector<PlancherelSample> out(static_cast<std::size_t>(count));
  std::atomic<int> next_block{0};
  auto work = [&] {
    std::map<Partition, double> cache;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int b; (b = next_block.fetch_add(1)) < blocks;) {
      auto eng = detail::block_engine(seed, static_cast<std::uint64_t>(b));
      const int lo = b * kPlancherelBlock;
      const int hi = std::min(count, lo + kPlancherelBlock);
      for (int i = lo; i < hi; ++i) {
        shuffle_identity(eng, perm);
        Partition shape = rsk_shape(perm);
        auto it = cache.find(shape);
        if (it == cache.end())
          it = cache.emplace(shape, 2.0 * log_big(dimension(shape, nf)) - log_nf).first;
        out[static_cast<std::size_t>(i)] = {std::move(shape), it->second};
      }
    }
  };
  if (workers == 1 || blocks == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, blocks); ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

/// Cosine-squared between (d_lambda) and the all-ones vector.
struct AngleReport {
  int n = 0;
  BigInt sum_dim;     // I(n)
  BigInt sum_dim_sq;  // n!
  BigInt count;       // p(n)
  double cos_sq = 0;
  double log_ratio = 0;
  double predicted_log = 0;
};

inline double predicted_log_ratio(int n) {
  const double x = n;
  return (2.0 - std::numbers::pi * std::sqrt(2.0 / 3.0)) * std::sqrt(x) + std::log(x) / 2.0;
}

inline AngleReport angle_report(std::span<const DimRecord> records) {
  if (records.empty()) throw ValidationError("angle_report needs at least one record");
  AngleReport a;
  a.n = records.front().lambda.n();
  a.count = static_cast<unsigned>(records.size());
  for (const auto& r : records) {
    a.sum_dim += r.dim;
    a.sum_dim_sq += r.dim * r.dim;
  }
  const Rational ratio(a.sum_dim * a.sum_dim, a.count * a.sum_dim_sq);
  a.cos_sq = to_double(ratio);
  a.log_ratio = 2.0 * log_big(a.sum_dim) - log_big(a.count) - log_big(a.sum_dim_sq);
  a.predicted_log = predicted_log_ratio(a.n);
  return a;
}

inline AngleReport angle_report(int n, int cap = kDefaultSweepCap) {
  return angle_report(sweep(n, cap));
}

/// Logarithms (nats) of the classical asymptotic forms for p(n), I(n), n!
/// and of the asymptotic average dimension I(n)/p(n).
struct AsymptoticEstimates {
  double log_alpha = 0;
  double log_beta = 0;
  double log_gamma = 0;
  double log_avg_asym = 0;
};

inline AsymptoticEstimates asymptotic_estimates(int n) {
  if (n < 1) throw ValidationError("asymptotic_estimates needs n >= 1");
  using std::log;
  using std::sqrt;
  const double x = n;
  const double pi = std::numbers::pi;
  AsymptoticEstimates e;
  e.log_alpha = pi * sqrt(2.0 * x / 3.0) - log(4.0 * x * sqrt(3.0));
  e.log_beta = (x / 2.0) * (log(x) - 1.0) + sqrt(x) - 0.5 * log(2.0) - 0.25;
  e.log_gamma = 0.5 * log(2.0 * pi * x) + x * (log(x) - 1.0);
  e.log_avg_asym = log(2.0 * sqrt(6.0)) + (x / 2.0) * (log(x) - 1.0) + log(x) +
                   sqrt(x) * (1.0 - pi * sqrt(2.0 / 3.0)) - 0.25;
  return e;
}

struct IntervalCounts {
  int n = 0;
  double alpha = 0, beta = 0;
  std::int64_t count_A = 0;  // ln d^2 in the window
  std::int64_t count_B = 0;  // ln c in the window
};

inline IntervalCounts interval_counts(std::span<const DimRecord> records, double alpha,
                                      double beta) {
  if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0))
    throw ValidationError("interval needs 0 <= alpha < beta <= 1");
  IntervalCounts c;
  c.n = records.empty() ? 0 : records.front().lambda.n();
  c.alpha = alpha;
  c.beta = beta;
  const double scale = c.n > 1 ? c.n * std::log(static_cast<double>(c.n)) : 0.0;
  // Closed window; values within rounding noise of an end count as inside.
  const double slack = 1e-12 * std::max(1.0, scale);
  const double lo = alpha * scale - slack, hi = beta * scale + slack;
  for (const auto& r : records) {
    if (r.log_dim_sq >= lo && r.log_dim_sq <= hi) ++c.count_A;
    if (r.log_class >= lo && r.log_class <= hi) ++c.count_B;
  }
  return c;
}

inline IntervalCounts interval_counts(int n, double alpha, double beta,
                                      int cap = kDefaultSweepCap) {
  return interval_counts(sweep(n, cap), alpha, beta);
}

/// a = sum of ln d^2, b = sum of ln c, over partitions with first part k.
struct LayerSums {
  double a = 0;
  double b = 0;
};

inline LayerSums layer_sums(std::span<const DimRecord> records, int k) {
  const int n = records.empty() ? 0 : records.front().lambda.n();
  if (k < 1 || k > n) throw ValidationError("layer index k must satisfy 1 <= k <= n");
  LayerSums s;
  for (const auto& r : records) {
    if (r.lambda.first() != k) continue;
    s.a += r.log_dim_sq;
    s.b += r.log_class;
  }
  return s;
}

inline LayerSums layer_sums(int n, int k, int cap = kDefaultSweepCap) {
  return layer_sums(sweep(n, cap), k);
}

struct NearMaxFraction {
  Rational C;              // #{lambda : A m_n <= d <= m_n} / p(n)
  bool bound_ok = false;   // (A C)^2 <= exp(-0.9 a0 sqrt(n))
  double lhs = 0;          // (A C)^2
  double rhs = 0;          // exp(-0.9 a0 sqrt(n))
};

inline NearMaxFraction fraction_near_max(std::span<const DimRecord> records, double A) {
  if (!(A > 0.0 && A < 1.0)) throw ValidationError("A must lie strictly between 0 and 1");
  if (records.empty()) throw ValidationError("fraction_near_max needs records");
  const int n = records.front().lambda.n();
  const BigInt m = max_dimension(records).m;
  // A is compared exactly: A m <= d  <=>  num(A) m <= den(A) d.
  const Rational a = exact_rational(A);
  const BigInt an = boost::multiprecision::numerator(a);
  const BigInt ad = boost::multiprecision::denominator(a);
  std::int64_t hits = 0;
  for (const auto& r : records)
    if (an * m <= ad * r.dim) ++hits;
  NearMaxFraction f;
  f.C = Rational(hits, static_cast<std::int64_t>(records.size()));
  const double ac = A * to_double(f.C);
  f.lhs = ac * ac;
  f.rhs = std::exp(-0.9 * a0_constant() * std::sqrt(static_cast<double>(n)));
  f.bound_ok = f.lhs <= f.rhs;
  return f;
}

inline NearMaxFraction fraction_near_max(int n, double A, int cap = kDefaultSweepCap) {
  return fraction_near_max(sweep(n, cap), A);
}

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
};

/// Equal-width bins over [min, max]. Interior edges belong to the bin on
/// their right; the maximum lands in the last bin. Constant data collapses
/// to a single bin [v - 0.5, v + 0.5].
inline Histogram histogram(std::span<const double> values, int bins) {
  if (values.empty()) throw ValidationError("histogram of an empty sequence");
  if (bins < 1) throw ValidationError("histogram needs at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  Histogram h;
  if (!(hi > lo)) {
    h.bin_edges = {lo - 0.5, lo + 0.5};
    h.counts = {static_cast<std::int64_t>(values.size())};
    return h;
  }
  const double width = (hi - lo) / bins;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.bin_edges[static_cast<std::size_t>(i)] = lo + i * width;
  h.bin_edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  const auto interior_begin = h.bin_edges.begin() + 1;
  const auto interior_end = h.bin_edges.end() - 1;
  for (double v : values) {
    const auto idx = std::upper_bound(interior_begin, interior_end, v) - interior_begin;
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

/// -ln(m_n^2 / n!) / sqrt(n).
inline double vk_ratio(std::span<const DimRecord> records) {
  if (records.empty()) throw ValidationError("vk_ratio needs records");
  const int n = records.front().lambda.n();
  const BigInt m = max_dimension(records).m;
  return (log_big(factorial(n)) - 2.0 * log_big(m)) / std::sqrt(static_cast<double>(n));
}

inline double vk_ratio(int n, int cap = kDefaultSweepCap) { return vk_ratio(sweep(n, cap)); }

}  // namespace repstat
