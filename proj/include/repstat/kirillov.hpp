#pragma once

// Exhaustive coadjoint-orbit and conjugacy-class computations for small
// unitriangular groups over F_p.
//
// The Lie algebra is spanned by matrix units E_ij (i < j) of the strictly
// upper-triangular m x m matrices. A vector x in F_p^dim is both a Lie
// algebra element (sum x_k b_k) and, in the dual basis, a functional. The
// group is N = exp(n); exp and log are the truncated series, which need
// 1/k! for k < m, hence p > nilpotency class.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "repstat/bigint.hpp"
#include "repstat/error.hpp"
#include "repstat/qseries.hpp"

namespace repstat {

using FpVector = std::vector<int>;

/// Strictly upper-triangular matrix algebra with its structure constants.
class NilAlgebra {
 public:
  /// "heis3" (3x3, dim 3) or "ut4" (4x4, dim 6). p must be a prime < 256.
  static NilAlgebra preset(const std::string& name, int p) {
    int m = 0;
    if (name == "heis3") m = 3;
    else if (name == "ut4") m = 4;
    else throw ValidationError("unknown algebra '" + name + "' (expected heis3 or ut4)");
    return NilAlgebra(name, m, p);
  }

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  int matrix_size() const noexcept { return m_; }
  int p() const noexcept { return p_; }
  int nilpotency_class() const noexcept { return class_; }
  int derived_dim() const noexcept { return derived_dim_; }
  /// (row, col) of each basis matrix unit, 0-based.
  const std::vector<std::pair<int, int>>& basis() const noexcept { return basis_; }
  const std::map<std::pair<int, int>, FpVector>& brackets() const noexcept { return brackets_; }

  /// [x, y] in coordinates.
  FpVector bracket(const FpVector& x, const FpVector& y) const {
    FpVector out(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        if (y[j] == 0 || i == j) continue;
        const FpVector c = basis_bracket(i, j);
        const int s = x[i] * y[j] % p_;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = (out[k] + s * c[k]) % p_;
      }
    }
    return out;
  }

  /// Index of the basis unit at (row, col), or -1.
  int basis_index(int row, int col) const noexcept {
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (basis_[k].first == row && basis_[k].second == col) return static_cast<int>(k);
    return -1;
  }

 private:
  NilAlgebra(std::string name, int m, int p) : name_(std::move(name)), m_(m), p_(p) {
    if (p < 2 || p >= 256 || !detail::is_small_prime(p))
      throw ValidationError("p must be a prime below 256, got " + std::to_string(p));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) basis_.emplace_back(i, j);
    const std::size_t d = basis_.size();
    // [E_ab, E_ce] = [b == c] E_ae - [e == a] E_cb
    auto unit_bracket = [&](std::size_t x, std::size_t y) {
      FpVector v(d, 0);
      auto [a, b] = basis_[x];
      auto [c, e] = basis_[y];
      if (b == c) v[static_cast<std::size_t>(basis_index(a, e))] += 1;
      if (e == a) v[static_cast<std::size_t>(basis_index(c, b))] += p - 1;
      for (auto& t : v) t %= p;
      return v;
    };
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) brackets_[{static_cast<int>(i), static_cast<int>(j)}] = unit_bracket(i, j);
    validate(unit_bracket);
    compute_series();
  }

  FpVector basis_bracket(std::size_t i, std::size_t j) const {
    if (i < j) return brackets_.at({static_cast<int>(i), static_cast<int>(j)});
    FpVector v = brackets_.at({static_cast<int>(j), static_cast<int>(i)});
    for (auto& t : v) t = (p_ - t) % p_;
    return v;
  }

  FpVector unit(std::size_t k) const {
    FpVector v(basis_.size(), 0);
    v[k] = 1;
    return v;
  }

  template <typename F>
  void validate(F&& unit_bracket) const {
    const std::size_t d = basis_.size();
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        FpVector ij = unit_bracket(i, j), ji = unit_bracket(j, i);
        for (std::size_t k = 0; k < d; ++k)
          if ((ij[k] + ji[k]) % p_ != 0) throw InvariantViolation("bracket is not antisymmetric");
        if (bracket(unit(i), unit(j)) != ij) throw InvariantViolation("bracket table mismatch");
      }
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          FpVector a = bracket(unit(i), bracket(unit(j), unit(k)));
          FpVector b = bracket(unit(j), bracket(unit(k), unit(i)));
          FpVector c = bracket(unit(k), bracket(unit(i), unit(j)));
          for (std::size_t t = 0; t < d; ++t)
            if ((a[t] + b[t] + c[t]) % p_ != 0) throw InvariantViolation("Jacobi identity fails");
        }
  }

  // Lower central series: g_1 = n, g_{k+1} = [n, g_k]. The class is the
  // number of nonzero terms.
  void compute_series() {
    const std::size_t d = basis_.size();
    std::vector<FpVector> span;
    for (std::size_t k = 0; k < d; ++k) span.push_back(unit(k));
    class_ = 0;
    while (!span.empty()) {
      ++class_;
      std::vector<FpVector> next;
      for (std::size_t i = 0; i < d; ++i)
        for (const auto& v : span) next.push_back(bracket(unit(i), v));
      next = row_basis(std::move(next));
      if (class_ == 1) derived_dim_ = static_cast<int>(next.size());
      span = std::move(next);
    }
  }

  std::vector<FpVector> row_basis(std::vector<FpVector> rows) const {
    std::vector<std::vector<int>> work(rows.begin(), rows.end());
    const int r = work.empty() ? 0 : detail::rank_mod_p(work, p_);
    work.resize(static_cast<std::size_t>(r));
    return work;
  }

  std::string name_;
  int m_;
  int p_;
  int class_ = 0;
  int derived_dim_ = 0;
  std::vector<std::pair<int, int>> basis_;
  std::map<std::pair<int, int>, FpVector> brackets_;
};

/// A functional on the algebra, coordinates in the dual basis.
struct Functional {
  FpVector coords;
};

/// Square matrix over F_p, up to 4x4.
struct FpMatrix {
  int m = 0;
  int p = 2;
  std::array<int, 16> a{};

  int& at(int i, int j) { return a[static_cast<std::size_t>(i * m + j)]; }
  int at(int i, int j) const { return a[static_cast<std::size_t>(i * m + j)]; }

  static FpMatrix identity(int m, int p) {
    FpMatrix r{m, p, {}};
    for (int i = 0; i < m; ++i) r.at(i, i) = 1;
    return r;
  }
  friend FpMatrix operator*(const FpMatrix& x, const FpMatrix& y) {
    FpMatrix r{x.m, x.p, {}};
    for (int i = 0; i < x.m; ++i)
      for (int k = 0; k < x.m; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < x.m; ++j) r.at(i, j) = (r.at(i, j) + x.at(i, k) * y.at(k, j)) % x.p;
      }
    return r;
  }
  friend FpMatrix operator+(FpMatrix x, const FpMatrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] = (x.a[i] + y.a[i]) % x.p;
    return x;
  }
  FpMatrix scaled(int s) const {
    FpMatrix r = *this;
    s = ((s % p) + p) % p;
    for (auto& v : r.a) v = v * s % p;
    return r;
  }
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

namespace detail {

inline void require_exp_log(const NilAlgebra& alg) {
  if (alg.p() <= alg.nilpotency_class())
    throw UnsupportedCharacteristic(
        "exp/log on " + alg.name() + " need p > nilpotency class " +
        std::to_string(alg.nilpotency_class()) + "; p = " + std::to_string(alg.p()) +
        " is excluded (whether orbit sizes still match d^2 there is an open question)");
}

inline void check_vector(const NilAlgebra& alg, std::span<const int> x) {
  if (static_cast<int>(x.size()) != alg.dim())
    throw ValidationError("vector length does not match the algebra dimension");
  for (int v : x)
    if (v < 0 || v >= alg.p()) throw ValidationError("coordinates must lie in [0, p)");
}

inline FpMatrix to_matrix(const NilAlgebra& alg, std::span<const int> x) {
  FpMatrix r{alg.matrix_size(), alg.p(), {}};
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto [i, j] = alg.basis()[k];
    r.at(i, j) = x[k];
  }
  return r;
}

inline FpVector strict_upper_coords(const NilAlgebra& alg, const FpMatrix& g) {
  FpVector x(static_cast<std::size_t>(alg.dim()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto [i, j] = alg.basis()[k];
    x[k] = g.at(i, j);
  }
  return x;
}

inline std::int64_t encode(std::span<const int> x, int p) {
  std::int64_t idx = 0;
  for (auto it = x.rbegin(); it != x.rend(); ++it) idx = idx * p + *it;
  return idx;
}

inline FpVector decode(std::int64_t idx, int dim, int p) {
  FpVector x(static_cast<std::size_t>(dim));
  for (auto& v : x) {
    v = static_cast<int>(idx % p);
    idx /= p;
  }
  return x;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int inverse_mod(int a, int p) { return mod_pow(((a % p) + p) % p, p - 2, p); }

/// (I + N)^{-1} = sum (-N)^k for nilpotent N.
inline FpMatrix unipotent_inverse(const FpMatrix& g) {
  const FpMatrix id = FpMatrix::identity(g.m, g.p);
  FpMatrix n = g + id.scaled(-1);
  FpMatrix neg = n.scaled(-1);
  FpMatrix term = id, sum = id;
  for (int k = 1; k < g.m; ++k) {
    term = term * neg;
    sum = sum + term;
  }
  return sum;
}

}  // namespace detail

/// exp(x) = sum_{k < m} X^k / k!.
inline FpMatrix exp_element(std::span<const int> x, const NilAlgebra& alg) {
  detail::require_exp_log(alg);
  detail::check_vector(alg, x);
  const int p = alg.p();
  const FpMatrix X = detail::to_matrix(alg, x);
  FpMatrix term = FpMatrix::identity(alg.matrix_size(), p);
  FpMatrix sum = term;
  int fact = 1;
  for (int k = 1; k < alg.matrix_size(); ++k) {
    term = term * X;
    fact = fact * k % p;
    sum = sum + term.scaled(detail::inverse_mod(fact, p));
  }
  return sum;
}

/// log(g) = sum_{k < m} (-1)^{k+1} (g - I)^k / k, in coordinates.
inline FpVector log_element(const FpMatrix& g, const NilAlgebra& alg) {
  detail::require_exp_log(alg);
  const int p = alg.p();
  const int m = alg.matrix_size();
  if (g.m != m || g.p != p) throw ValidationError("matrix does not belong to this group");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      if (g.at(i, j) != (i == j ? 1 : 0))
        throw ValidationError("log_element needs a unitriangular matrix");
  const FpMatrix n = g + FpMatrix::identity(m, p).scaled(-1);
  FpMatrix term = FpMatrix::identity(m, p);
  FpMatrix sum{m, p, {}};
  for (int k = 1; k < m; ++k) {
    term = term * n;
    const int coef = (k % 2 == 1 ? 1 : p - 1) * detail::inverse_mod(k, p) % p;
    sum = sum + term.scaled(coef);
  }
  return detail::strict_upper_coords(alg, sum);
}

namespace detail {

// Generators I + E_ij, one per basis unit; they generate the whole group.
inline std::vector<FpMatrix> group_generators(const NilAlgebra& alg) {
  std::vector<FpMatrix> gens;
  for (int k = 0; k < alg.dim(); ++k) {
    FpVector e(static_cast<std::size_t>(alg.dim()), 0);
    e[static_cast<std::size_t>(k)] = 1;
    gens.push_back(exp_element(e, alg));
  }
  return gens;
}

// Orbit sizes of a permutation action given as successor tables, one per
// generator. Breadth-first closure from each unvisited point.
inline std::vector<std::int64_t> orbit_sizes(const std::vector<std::vector<std::int64_t>>& moves,
                                             std::int64_t points) {
  std::vector<char> seen(static_cast<std::size_t>(points), 0);
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> queue;
  for (std::int64_t start = 0; start < points; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    queue.assign(1, start);
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& mv : moves) {
        const std::int64_t nxt = mv[static_cast<std::size_t>(queue[head])];
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = 1;
          queue.push_back(nxt);
        }
      }
    }
    sizes.push_back(static_cast<std::int64_t>(queue.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Coadjoint action of g on functionals: (g.lambda)(x) = lambda(g^{-1} x g).
// Row j of the result holds the coordinates of g^{-1} b_j g.
inline std::vector<FpVector> coadjoint_matrix(const NilAlgebra& alg, const FpMatrix& g) {
  const FpMatrix ginv = unipotent_inverse(g);
  std::vector<FpVector> rows;
  for (int j = 0; j < alg.dim(); ++j) {
    FpVector e(static_cast<std::size_t>(alg.dim()), 0);
    e[static_cast<std::size_t>(j)] = 1;
    rows.push_back(strict_upper_coords(alg, ginv * to_matrix(alg, e) * g));
  }
  return rows;
}

inline FpVector apply_coadjoint(const std::vector<FpVector>& rows, const FpVector& lambda, int p) {
  FpVector out(lambda.size(), 0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    int acc = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) acc = (acc + lambda[i] * rows[j][i]) % p;
    out[j] = acc;
  }
  return out;
}

}  // namespace detail

/// Sorted sizes of the coadjoint orbits on all p^dim functionals.
inline std::vector<std::int64_t> coadjoint_orbits(const NilAlgebra& alg) {
  detail::require_exp_log(alg);
  const int p = alg.p();
  const std::int64_t points = detail::ipow(p, alg.dim());
  std::vector<std::vector<std::int64_t>> moves;
  for (const auto& g : detail::group_generators(alg)) {
    const auto rows = detail::coadjoint_matrix(alg, g);
    std::vector<std::int64_t> mv(static_cast<std::size_t>(points));
    for (std::int64_t idx = 0; idx < points; ++idx) {
      const FpVector lambda = detail::decode(idx, alg.dim(), p);
      mv[static_cast<std::size_t>(idx)] = detail::encode(detail::apply_coadjoint(rows, lambda, p), p);
    }
    moves.push_back(std::move(mv));
  }
  return detail::orbit_sizes(moves, points);
}

/// Size of the coadjoint orbit through one functional.
inline std::int64_t coadjoint_orbit_size(const NilAlgebra& alg, const Functional& lambda) {
  detail::require_exp_log(alg);
  detail::check_vector(alg, lambda.coords);
  std::vector<std::vector<FpVector>> actions;
  for (const auto& g : detail::group_generators(alg)) actions.push_back(detail::coadjoint_matrix(alg, g));
  std::map<FpVector, char> seen{{lambda.coords, 1}};
  std::deque<FpVector> queue{lambda.coords};
  while (!queue.empty()) {
    FpVector cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& rows : actions) {
      FpVector nxt = detail::apply_coadjoint(rows, cur, alg.p());
      if (seen.emplace(nxt, 1).second) queue.push_back(std::move(nxt));
    }
  }
  return static_cast<std::int64_t>(seen.size());
}

/// Sorted conjugacy-class sizes. The group is enumerated as exp of every
/// algebra element; exp must hit each group element exactly once.
inline std::vector<std::int64_t> conjugacy_classes(const NilAlgebra& alg) {
  detail::require_exp_log(alg);
  const int p = alg.p();
  const std::int64_t points = detail::ipow(p, alg.dim());
  // Group elements are keyed by their strictly-upper entries.
  std::vector<FpMatrix> elements(static_cast<std::size_t>(points));
  std::vector<std::int64_t> by_entries(static_cast<std::size_t>(points), -1);
  for (std::int64_t idx = 0; idx < points; ++idx) {
    const FpVector x = detail::decode(idx, alg.dim(), p);
    elements[static_cast<std::size_t>(idx)] = exp_element(x, alg);
    const auto key = detail::encode(detail::strict_upper_coords(alg, elements[static_cast<std::size_t>(idx)]), p);
    if (by_entries[static_cast<std::size_t>(key)] != -1)
      throw InvariantViolation("exp is not injective on " + alg.name());
    by_entries[static_cast<std::size_t>(key)] = idx;
  }
  std::vector<std::vector<std::int64_t>> moves;
  for (const auto& s : detail::group_generators(alg)) {
    const FpMatrix sinv = detail::unipotent_inverse(s);
    std::vector<std::int64_t> mv(static_cast<std::size_t>(points));
    for (std::int64_t idx = 0; idx < points; ++idx) {
      const FpMatrix h = s * elements[static_cast<std::size_t>(idx)] * sinv;
      mv[static_cast<std::size_t>(idx)] =
          by_entries[static_cast<std::size_t>(detail::encode(detail::strict_upper_coords(alg, h), p))];
    }
    moves.push_back(std::move(mv));
  }
  return detail::orbit_sizes(moves, points);
}

struct OrbitReport {
  int p = 0;
  std::string algebra;
  BigInt group_order;                    // p^dim
  std::vector<std::int64_t> orbit_sizes;  // sorted
  std::vector<std::int64_t> class_sizes;  // sorted
  std::vector<std::int64_t> rep_dims;     // sorted square roots of orbit sizes
  std::int64_t one_dim_count = 0;         // orbits of size 1
  std::int64_t abelianization_order = 0;  // p^{dim - dim [n,n]}
  bool even_powers = false;               // every orbit size is p^{2k}
  bool match_kirillov = false;
  bool match_naive = false;
};

inline OrbitReport kirillov_report(const NilAlgebra& alg) {
  OrbitReport r;
  r.p = alg.p();
  r.algebra = alg.name();
  r.group_order = pow_big(alg.p(), static_cast<unsigned>(alg.dim()));
  r.orbit_sizes = coadjoint_orbits(alg);
  r.class_sizes = conjugacy_classes(alg);

  r.even_powers = true;
  BigInt dim_sq_sum = 0;
  for (std::int64_t s : r.orbit_sizes) {
    std::int64_t v = s;
    int e = 0;
    while (v % r.p == 0) {
      v /= r.p;
      ++e;
    }
    if (v != 1 || e % 2 != 0) r.even_powers = false;
    auto d = static_cast<std::int64_t>(boost::multiprecision::sqrt(BigInt(s)));
    r.rep_dims.push_back(d);
    dim_sq_sum += BigInt(d) * d;
    if (s == 1) ++r.one_dim_count;
  }
  r.abelianization_order = detail::ipow(r.p, alg.dim() - alg.derived_dim());
  r.match_kirillov = dim_sq_sum == r.group_order && r.one_dim_count == r.abelianization_order;

  std::vector<std::int64_t> sq;
  for (auto d : r.rep_dims) sq.push_back(d * d);
  std::sort(sq.begin(), sq.end());
  r.match_naive = sq == r.class_sizes;
  return r;
}

}  // namespace repstat
