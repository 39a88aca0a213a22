#pragma once

// Commutator calculus on words of elementary generators: the basic
// commutator relation, splitting of squared parameters through a pivot
// index, and the conjugation expansion that keeps parameters divisible by a
// power of a variable.
//
// Conjugation and splitting go through symbolic templates computed once per
// index pattern over Z[c, P] (resp. Q[m, T]), verified by the matrix oracle
// and cached.

#include <optional>
#include <string>

#include "lgt/matform.hpp"

namespace lgt {

struct CommutatorResult {
  bool single = false;  // word is the single generator ge_ij(z x y)
  long z = 0;
  Word word;            // eval(word) = [ge_ik(x), ge_kj(y)]
};

// [ge_ik(x), ge_kj(y)]. Throws IndexClash when i, k, j are not pairwise
// distinct or a generator does not exist for the kind.
CommutatorResult commutator_relation(FormKind kind, int n, int i, int k, int j, const RingElem& x,
                                     const RingElem& y);

// Greedy-with-backtracking factorization of a unipotent matrix into
// generators, C = g_1 ... g_k with k <= max_len. Nullopt when none is found.
std::optional<Word> peel(const Mat& C, FormKind kind, int max_len = 6);

// Same root group: the generators commute and their parameters add.
bool same_root(const ElemGen& a, const ElemGen& b);
bool opposite_root(const ElemGen& a, const ElemGen& b);

// Equivalent generator (sigma j, sigma i, c * conj(a)) for nonlinear
// long roots; identity otherwise.
ElemGen flip_gen(const ElemGen& g);
// Rewrites g so that it has row or column index `pivot` if possible.
ElemGen normalize_to(const ElemGen& g, int pivot);
bool touches(const ElemGen& g, int pivot);

// x g x^-1 as a word whose parameters are multiples of g's parameter.
// Requires x and g not to lie in opposite root groups.
Word conjugate_gen(const ElemGen& x, const ElemGen& g);

// Word whose generators all have row or column index `pivot` (after
// flipping) and whose value is ge_ij(T^2 mu). Throws IndexOne when i or j
// equals the pivot, TwoNotInvertible when a short root has to be split over
// a ring without 1/2.
Word split_square(FormKind kind, int n, int i, int j, const RingElem& mu, const RingElem& T, int pivot = 1);

struct ConjugationExpansion {
  Word output;
  std::vector<RingElem> h;  // output[t].value() = X^m * h[t]
  unsigned m = 1;
};

// eps * ge_pq(X^(2^r m) Y) * eps^-1 with r = |eps|, as a product of
// generators with parameters in (X^m). Y lives in a polynomial ring that
// contains the variable X; eps parameters must embed there. Opposite roots
// are routed through a spare index, so they need n >= 3 (linear) or n >= 6.
ConjugationExpansion conjugation_expand(FormKind kind, int n, const Word& eps, int p, int q, unsigned m,
                                        const RingElem& Y, const std::string& X);

// c in len(output) <= c * 4^r for the expansion above. Measured worst case
// over random eps with r <= 4 and n <= 6 is 2 (reached at r = 1); 4 leaves
// headroom for index patterns the samples miss.
inline constexpr double kConjugationLengthConstant = 4.0;

// Index of a pair different from the pairs (or indices, linear) of p and q;
// 0 when none exists.
int pick_pivot(FormKind kind, int n, int p, int q);

}  // namespace lgt
