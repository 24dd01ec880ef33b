#pragma once

// Words over the six-letter alphabet X = {0,...,5} and the combinatorial
// structure of the level-n approximation graphs: the vertex partition into
// classes W_1..W_n, the edge families F_1..F_n, the conjugation bijection
// between the two presentations of the identification rules, and the
// word-metric helpers used by the rest of the library.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hexacarpet {

inline constexpr int kAlphabet = 6;

// Levels are capped so that base-6 vertex indices and all derived quantities
// (eccentricities, BFS queues) stay comfortably inside fixed-width integers.
inline constexpr int kMaxWordLevel = 9;

inline std::uint64_t pow6(int n) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) v *= 6;
  return v;
}

// A nonempty word over X. digits[0] is the leading letter, so the word "035"
// has digits {0,3,5}. Positions in comments are 1-based to match the usual
// indexing of letters in a word.
struct Word {
  std::vector<std::uint8_t> digits;

  Word() = default;

  explicit Word(std::vector<std::uint8_t> d) : digits(std::move(d)) { validate(); }

  // Parses "035" style strings.
  static Word from_string(const std::string& s) {
    std::vector<std::uint8_t> d;
    d.reserve(s.size());
    for (char c : s) {
      if (c < '0' || c > '5') throw std::invalid_argument("word digit out of range: " + s);
      d.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    Word w;
    w.digits = std::move(d);
    w.validate();
    return w;
  }

  // Inverse of value(): the level-n word whose base-6 expansion is v.
  static Word from_index(std::uint64_t v, int level) {
    if (level < 1 || level > kMaxWordLevel) throw std::invalid_argument("word level out of range");
    std::vector<std::uint8_t> d(static_cast<std::size_t>(level));
    for (int i = level - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v % 6);
      v /= 6;
    }
    if (v != 0) throw std::invalid_argument("index too large for level");
    Word w;
    w.digits = std::move(d);
    return w;
  }

  int level() const { return static_cast<int>(digits.size()); }

  // Base-6 value with digits[0] most significant; the canonical vertex index.
  std::uint64_t value() const {
    std::uint64_t v = 0;
    for (auto d : digits) v = v * 6 + d;
    return v;
  }

  std::string str() const {
    std::string s;
    s.reserve(digits.size());
    for (auto d : digits) s.push_back(static_cast<char>('0' + d));
    return s;
  }

  bool operator==(const Word& o) const { return digits == o.digits; }
  bool operator!=(const Word& o) const { return digits != o.digits; }
  // Lexicographic; equals numeric order for words of equal length.
  bool operator<(const Word& o) const { return digits < o.digits; }

  void validate() const {
    if (digits.empty()) throw std::invalid_argument("empty word");
    if (digits.size() > static_cast<std::size_t>(kMaxWordLevel))
      throw std::invalid_argument("word longer than supported level cap");
    for (auto d : digits)
      if (d >= kAlphabet) throw std::invalid_argument("word digit out of range");
  }
};

// Vertex class of a word: k = 1 when every digit from position 2 on lies in
// {0,5}; otherwise the largest position holding a digit outside {0,5}.
// Class-1 vertices have degree 2, all others degree 3.
struct PartitionClass {
  int k = 1;
  bool operator==(const PartitionClass& o) const { return k == o.k; }
};

// Edge family label: an edge either joins two children of one cell that
// differ in the last letter (k = 1) or joins two words whose class-k letters
// differ; both endpoints of a family-k edge lie in vertex class k when k >= 2.
struct EdgeTag {
  int k = 1;
  bool operator==(const EdgeTag& o) const { return k == o.k; }
};

namespace detail {
inline bool frozen_digit(std::uint8_t d) { return d == 0 || d == 5; }
}  // namespace detail

inline PartitionClass partition_class(const Word& w) {
  const int n = w.level();
  for (int i = n; i >= 2; --i) {
    if (!detail::frozen_digit(w.digits[static_cast<std::size_t>(i - 1)])) return PartitionClass{i};
  }
  return PartitionClass{1};
}

namespace detail {

// For a class-k word (k >= 2) with a = digit at position k-1 and alpha = digit
// at position k, the unique cross-cell partner flips a by +1 or -1 mod 6.
// Edges pair (i, i+1) with alpha in {1,2} when i is even and alpha in {3,4}
// when i is odd; whether a plays the role of i or of i+1 follows from the
// parity of a against alpha's range.
inline std::uint8_t partner_digit(std::uint8_t a, std::uint8_t alpha) {
  const bool a_even = (a % 2 == 0);
  const bool low_alpha = (alpha == 1 || alpha == 2);
  if ((a_even && low_alpha) || (!a_even && !low_alpha))
    return static_cast<std::uint8_t>((a + 1) % 6);
  return static_cast<std::uint8_t>((a + 5) % 6);
}

}  // namespace detail

// The two or three graph neighbors of a word at its own level, sorted
// lexicographically. Two neighbors always come from changing the last letter
// by +-1 mod 6; class-k words with k >= 2 additionally have the cross-cell
// partner that flips the letter at position k-1.
inline std::vector<Word> word_neighbors(const Word& w) {
  std::vector<Word> out;
  const int n = w.level();
  Word t = w;
  t.digits[static_cast<std::size_t>(n - 1)] =
      static_cast<std::uint8_t>((w.digits[static_cast<std::size_t>(n - 1)] + 1) % 6);
  out.push_back(t);
  t.digits[static_cast<std::size_t>(n - 1)] =
      static_cast<std::uint8_t>((w.digits[static_cast<std::size_t>(n - 1)] + 5) % 6);
  out.push_back(t);
  const int k = partition_class(w).k;
  if (k >= 2) {
    Word p = w;
    const std::uint8_t a = w.digits[static_cast<std::size_t>(k - 2)];
    const std::uint8_t alpha = w.digits[static_cast<std::size_t>(k - 1)];
    p.digits[static_cast<std::size_t>(k - 2)] = detail::partner_digit(a, alpha);
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Family tag of the edge {u, v}; throws if the pair is not an edge.
inline EdgeTag edge_tag(const Word& u, const Word& v) {
  if (u.level() != v.level()) throw std::invalid_argument("edge endpoints differ in level");
  const int n = u.level();
  int diff = -1;
  for (int i = 0; i < n; ++i) {
    if (u.digits[static_cast<std::size_t>(i)] != v.digits[static_cast<std::size_t>(i)]) {
      if (diff >= 0) throw std::invalid_argument("not an edge: two digit differences");
      diff = i;
    }
  }
  if (diff < 0) throw std::invalid_argument("not an edge: equal words");
  if (diff == n - 1) return EdgeTag{1};
  const int k = diff + 2;  // flipped letter sits at position k-1 for family k
  if (partition_class(u).k != k || partition_class(v).k != k)
    throw std::invalid_argument("not an edge: class mismatch");
  return EdgeTag{k};
}

// Digit-recoding bijection between the two presentations of the gluing rules.
// Output letter m is (-1)^s * u_m + s mod 6 where s is the sum of the input
// letters before position m.
inline Word conjugation_f(const Word& u) {
  Word v = u;
  int s = 0;
  for (int m = 0; m < u.level(); ++m) {
    const int um = u.digits[static_cast<std::size_t>(m)];
    if (m > 0) {
      const int sign = (s % 2 == 0) ? 1 : -1;
      v.digits[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>((((sign * um + s) % 6) + 6) % 6);
    }
    s += um;
  }
  return v;
}

// Inverse recoding: the prefix sums are accumulated over the reconstructed
// input letters as they are produced.
inline Word conjugation_f_inverse(const Word& v) {
  Word u = v;
  int s = 0;
  for (int m = 0; m < v.level(); ++m) {
    const int vm = v.digits[static_cast<std::size_t>(m)];
    if (m > 0) {
      const int sign = (s % 2 == 0) ? 1 : -1;
      u.digits[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>((((sign * (vm - s)) % 6) + 6) % 6);
    }
    s += u.digits[static_cast<std::size_t>(m)];
  }
  return u;
}

// Neighbors under the fixed-point presentation of the gluing rules, obtained
// by conjugating the standard neighbor rule: the recoding maps edges of one
// presentation bijectively onto edges of the other.
inline std::vector<Word> fixedpoint_neighbors(const Word& w) {
  const Word u = conjugation_f_inverse(w);
  std::vector<Word> out;
  for (const Word& x : word_neighbors(u)) out.push_back(conjugation_f(x));
  std::sort(out.begin(), out.end());
  return out;
}

// Ultrametric on equal-length words: r^m with m the first disagreeing
// position (1-based), 0 for equal words. Requires 0 < r < 1 to be a metric,
// but any r is accepted for exploratory use.
inline double delta_metric(const Word& u, const Word& v, double r) {
  if (u.level() != v.level()) throw std::invalid_argument("delta_metric: words differ in length");
  for (int i = 0; i < u.level(); ++i) {
    if (u.digits[static_cast<std::size_t>(i)] != v.digits[static_cast<std::size_t>(i)]) {
      double p = 1.0;
      for (int j = 0; j <= i; ++j) p *= r;
      return p;
    }
  }
  return 0.0;
}

// Removes the leading letter. Shifts family-k edges to family k-1 for k >= 3,
// which is the self-similarity the edge families encode.
inline Word shift(const Word& w) {
  if (w.level() <= 1) throw std::invalid_argument("shift: word of length 1");
  Word out;
  out.digits.assign(w.digits.begin() + 1, w.digits.end());
  return out;
}

// All family-2 edges between the first-letter cells i and j at level n,
// returned as (cell-i word, cell-j word) pairs sorted by the i-side word.
// Non-adjacent cells (j != i +- 1 mod 6) share no such edges; at level 1 the
// cells are single vertices and the family-2 set is empty by definition.
inline std::vector<std::pair<Word, Word>> cell_boundary(int i, int j, int n) {
  if (i < 0 || i >= kAlphabet || j < 0 || j >= kAlphabet || i == j)
    throw std::invalid_argument("cell_boundary: bad cell pair");
  if (n < 1 || n > kMaxWordLevel) throw std::invalid_argument("cell_boundary: bad level");
  std::vector<std::pair<Word, Word>> out;
  if (n == 1) return out;
  int lo, hi;
  if (j == (i + 1) % 6) {
    lo = i;
    hi = j;
  } else if (i == (j + 1) % 6) {
    lo = j;
    hi = i;
  } else {
    return out;
  }
  const bool lo_even = (lo % 2 == 0);
  const std::uint8_t alphas[2] = {static_cast<std::uint8_t>(lo_even ? 1 : 3),
                                  static_cast<std::uint8_t>(lo_even ? 2 : 4)};
  // Suffixes v range over {0,5}^{n-2}; enumerate in lexicographic order.
  const int m = n - 2;
  const std::uint64_t count = 1ull << m;
  for (std::uint8_t alpha : alphas) {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Word a, b;
      a.digits.resize(static_cast<std::size_t>(n));
      a.digits[0] = static_cast<std::uint8_t>(lo);
      a.digits[1] = alpha;
      for (int t = 0; t < m; ++t)
        a.digits[static_cast<std::size_t>(2 + t)] =
            (mask >> (m - 1 - t)) & 1 ? 5 : 0;
      b = a;
      b.digits[0] = static_cast<std::uint8_t>(hi);
      if (lo == i)
        out.emplace_back(std::move(a), std::move(b));
      else
        out.emplace_back(std::move(b), std::move(a));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hexacarpet
