#pragma once

// Hand-rolled generators for property checks. All draws go through Rng so a
// seed fixes every run.

#include <cstdint>
#include <random>

#include "lgt/transvect.hpp"

namespace lgt {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  // Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (g_() & 1u) != 0; }
  std::uint64_t raw() { return g_(); }

private:
  std::mt19937_64 g_;
};

// Small random element of any constructible context; `size` bounds
// coefficients and degrees loosely.
RingElem random_elem(Ctx R, Rng& rng, int size = 3);
RingElem random_nonzero(Ctx R, Rng& rng, int size = 3);

// Random valid (i, j) for the kind.
std::pair<int, int> random_indices(FormKind kind, int n, Rng& rng);
ElemGen random_gen(FormKind kind, int n, Ctx R, Rng& rng, int size = 3);
Word random_word(FormKind kind, int n, Ctx R, std::size_t len, Rng& rng, int size = 3);

// Random word over a polynomial ring W (containing X) that is the identity
// at X = 0: constant conjugators c_1..c_d around X-divisible middle factors,
// closed by the inverse constants. Total length `len` (at least 1).
Word random_based_word(FormKind kind, int n, Ctx W, const std::string& X, std::size_t len, Rng& rng);

// Random valid symplectic or orthogonal transvection of rank n over R
// (Z or Q is enough), with an explicit certificate.
Transvection random_transvection(FormKind kind, int n, Ctx R, Rng& rng);

}  // namespace lgt
