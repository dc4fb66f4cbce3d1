#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace hermlie {

// Increasing index tuples (i_1 < ... < i_k) over {0,...,n-1}, enumerated in
// lexicographic order.  Used as the canonical storage order for antisymmetric
// coefficient arrays throughout the library.

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using Tuple = std::vector<int>;

// Lexicographic rank of an increasing tuple among all k-subsets of {0..n-1}.
inline std::int64_t tuple_rank(const Tuple& t, int n) {
  const int k = static_cast<int>(t.size());
  std::int64_t rank = 0;
  int prev = -1;
  for (int j = 0; j < k; ++j) {
    for (int x = prev + 1; x < t[j]; ++x) rank += binomial(n - 1 - x, k - 1 - j);
    prev = t[j];
  }
  return rank;
}

inline Tuple tuple_unrank(std::int64_t rank, int n, int k) {
  Tuple t(static_cast<std::size_t>(k));
  int x = 0;
  for (int j = 0; j < k; ++j) {
    while (true) {
      std::int64_t c = binomial(n - 1 - x, k - 1 - j);
      if (rank < c) break;
      rank -= c;
      ++x;
    }
    t[static_cast<std::size_t>(j)] = x++;
  }
  return t;
}

// All increasing k-tuples over {0..n-1} in lexicographic order.
inline std::vector<Tuple> all_tuples(int n, int k) {
  std::vector<Tuple> out;
  const std::int64_t count = binomial(n, k);
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t r = 0; r < count; ++r) out.push_back(tuple_unrank(r, n, k));
  return out;
}

// Inserts index i into increasing tuple t.  Returns the number of elements of
// t smaller than i (the transposition count), or -1 if i is already present.
inline int tuple_insert(const Tuple& t, int i, Tuple& out) {
  int pos = 0;
  for (int v : t) {
    if (v == i) return -1;
    if (v < i) ++pos;
  }
  out.clear();
  out.reserve(t.size() + 1);
  out.insert(out.end(), t.begin(), t.begin() + pos);
  out.push_back(i);
  out.insert(out.end(), t.begin() + pos, t.end());
  return pos;
}

// Merges two disjoint increasing tuples; returns the sign of the shuffle
// permutation, or 0 if they intersect.
inline int tuple_merge(const Tuple& a, const Tuple& b, Tuple& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
      inversions += static_cast<int>(a.size() - i);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace hermlie
