#pragma once

// Integer partitions: the index set for both conjugacy classes and
// irreducible representations of S_n.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "repstat/bigint.hpp"
#include "repstat/error.hpp"

namespace repstat {

using Part = int;

/// Weakly decreasing sequence of positive parts. The empty partition is the
/// unique partition of 0.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<Part> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw ValidationError("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw ValidationError("partition parts must be weakly decreasing");
    }
    n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  Partition(std::initializer_list<Part> parts)
      : Partition(std::vector<Part>(parts)) {}

  int n() const noexcept { return n_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  const std::vector<Part>& parts() const noexcept { return parts_; }
  Part operator[](std::size_t i) const { return parts_[i]; }
  /// Largest part, 0 for the empty partition.
  Part first() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  auto begin() const noexcept { return parts_.begin(); }
  auto end() const noexcept { return parts_.end(); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  // Constructor for already-validated data (enumeration fast path).
  struct Trusted {};
  Partition(Trusted, std::vector<Part> parts, int n)
      : parts_(std::move(parts)), n_(n) {}
  friend class PartitionGenerator;

  std::vector<Part> parts_;
  int n_ = 0;
};

/// Multiplicity form <1^a1, 2^a2, ...>; absent keys mean multiplicity 0.
struct FrequencyForm {
  std::map<Part, int> freq;

  int n() const {
    int total = 0;
    for (auto [part, mult] : freq) total += part * mult;
    return total;
  }
  friend bool operator==(const FrequencyForm&, const FrequencyForm&) = default;
};

/// Produces partitions of n in reverse-lexicographic order, from (n) down to
/// (1,...,1).
class PartitionGenerator {
 public:
  explicit PartitionGenerator(int n) : n_(n) {
    if (n < 0) throw ValidationError("cannot partition a negative integer");
    if (n > 0) current_.push_back(n);
  }

  const std::vector<Part>& current() const noexcept { return current_; }
  bool done() const noexcept { return done_; }
  Partition value() const { return Partition(Partition::Trusted{}, current_, n_); }

  void advance() {
    // Strip trailing ones, decrement the last part above one, and refill the
    // freed amount greedily with parts no larger than the decremented value.
    int freed = 0;
    while (!current_.empty() && current_.back() == 1) {
      current_.pop_back();
      ++freed;
    }
    if (current_.empty()) {
      done_ = true;
      return;
    }
    const Part v = --current_.back();
    ++freed;
    while (freed >= v) {
      current_.push_back(v);
      freed -= v;
    }
    if (freed > 0) current_.push_back(freed);
  }

 private:
  int n_;
  std::vector<Part> current_;
  bool done_ = false;
};

/// Calls f(const Partition&) for every partition of n in reverse-lex order.
template <typename F>
void for_each_partition(int n, F&& f) {
  PartitionGenerator gen(n);
  while (!gen.done()) {
    f(gen.value());
    gen.advance();
  }
}

inline std::vector<Partition> enumerate(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

/// p(0..n) by Euler's pentagonal-number recurrence.
inline std::vector<BigInt> partition_count_table(int n) {
  if (n < 0) throw ValidationError("partition_count of a negative integer");
  std::vector<BigInt> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const int g2 = k * (3 * k + 1) / 2;
      const bool plus = (k % 2) == 1;
      if (plus) acc += p[m - g1]; else acc -= p[m - g1];
      if (g2 <= m) {
        if (plus) acc += p[m - g2]; else acc -= p[m - g2];
      }
    }
    p[m] = acc;
  }
  return p;
}

inline BigInt partition_count(int n) { return partition_count_table(n).back(); }

inline Partition conjugate(const Partition& lambda) {
  std::vector<Part> out(static_cast<std::size_t>(lambda.first()), 0);
  for (Part row : lambda)
    for (Part j = 0; j < row; ++j) ++out[j];
  return Partition(std::move(out));
}

inline FrequencyForm to_frequency(const Partition& lambda) {
  FrequencyForm f;
  for (Part part : lambda) ++f.freq[part];
  return f;
}

inline Partition from_frequency(const FrequencyForm& f) {
  std::vector<Part> parts;
  for (auto it = f.freq.rbegin(); it != f.freq.rend(); ++it) {
    if (it->first < 1 || it->second < 1)
      throw ValidationError("frequency form needs positive parts and multiplicities");
    parts.insert(parts.end(), static_cast<std::size_t>(it->second), it->first);
  }
  return Partition(std::move(parts));
}

/// Ragged matrix of hook lengths: arm + leg + 1 for every box.
inline std::vector<std::vector<int>> hook_lengths(const Partition& lambda) {
  const Partition conj = conjugate(lambda);
  std::vector<std::vector<int>> h(lambda.length());
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    h[i].resize(static_cast<std::size_t>(lambda[i]));
    for (std::size_t j = 0; j < h[i].size(); ++j)
      h[i][j] = (lambda[i] - static_cast<int>(j) - 1) +
                (conj[j] - static_cast<int>(i) - 1) + 1;
  }
  return h;
}

/// "[5,2]"; the empty partition is "[]".
inline std::string to_string(const Partition& lambda) {
  std::string s = "[";
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    if (i) s += ',';
    s += std::to_string(lambda[i]);
  }
  return s + "]";
}

/// "<1^1,2^3,3^1>", ascending part values.
inline std::string to_string(const FrequencyForm& f) {
  std::string s = "<";
  bool first = true;
  for (auto [part, mult] : f.freq) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(part) + "^" + std::to_string(mult);
  }
  return s + ">";
}

inline Partition parse_partition(std::string_view text) {
  auto fail = [&] { throw ValidationError("malformed partition: '" + std::string(text) + "'"); };
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') fail();
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<Part> parts;
  if (body.empty()) return Partition{};
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    std::string_view tok = body.substr(pos, comma - pos);
    if (tok.empty() || tok.size() > 6) fail();
    int v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
    }
    parts.push_back(v);
    pos = comma + 1;
  }
  return Partition(std::move(parts));
}

}  // namespace repstat
