#pragma once

// Plain-integer reference arithmetic used to cross-check the library. Nothing
// here calls into lgt beyond reading payloads out of integer matrices.

#include <cstdint>
#include <vector>

#include "lgt/matform.hpp"

namespace oracle {

using IMat = std::vector<std::vector<long long>>;

inline IMat id(std::size_t n) {
  IMat m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IMat mul(const IMat& a, const IMat& b, long long mod = 0) {
  const std::size_t n = a.size(), k = b.size(), p = b[0].size();
  IMat c(n, std::vector<long long>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      long long s = 0;
      for (std::size_t t = 0; t < k; ++t) s += a[i][t] * b[t][j];
      c[i][j] = mod ? ((s % mod) + mod) % mod : s;
    }
  return c;
}

inline IMat transpose(const IMat& a) {
  IMat t(a[0].size(), std::vector<long long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// E_ij with 1-based indices.
inline IMat unit(std::size_t n, int i, int j, long long a) {
  IMat m(n, std::vector<long long>(n, 0));
  m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = a;
  return m;
}

inline IMat add(IMat a, const IMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) a[i][j] += b[i][j];
  return a;
}

// Gram matrices written out blockwise: [[0,1],[-1,0]] resp. [[0,1],[1,0]].
inline IMat psi(std::size_t n, bool symplectic) {
  IMat m(n, std::vector<long long>(n, 0));
  for (std::size_t k = 0; k < n; k += 2) {
    m[k][k + 1] = 1;
    m[k + 1][k] = symplectic ? -1 : 1;
  }
  return m;
}

inline bool preserves(const IMat& m, bool symplectic) {
  const IMat g = psi(m.size(), symplectic);
  return mul(mul(transpose(m), g), m) == g;
}

// Integer matrix out of a Mat over Z.
inline IMat from(const lgt::Mat& m) {
  IMat out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).int_value().get_si();
  return out;
}

// Inverse by exhaustive search in Z/n.
inline long long inverse_mod(long long a, long long n) {
  for (long long b = 0; b < n; ++b)
    if (((a * b) % n + n) % n == 1 % n) return b;
  return -1;
}

// Cheap deterministic generator for hand-rolled property loops.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed * 2862933555777941757ull + 3037000493ull) {}
  long long next(long long lo, long long hi) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return lo + static_cast<long long>((s >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

}  // namespace oracle
