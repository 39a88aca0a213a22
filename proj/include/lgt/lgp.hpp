#pragma once

// Local-global machinery: dilation of factorizations over A_s[X], patching
// over a finite comaximal cover, diagonal reduction over local rings, the
// congruence commutator, powers of nil matrices and nil homotopies.

#include <optional>
#include <string>

#include "lgt/commcalc.hpp"

namespace lgt {

struct DilationResult {
  Word word;       // over A[X] (A[X, Y] for the shift variant)
  Ctx ctx = nullptr;
  unsigned l = 0;  // T was rescaled by s^l
  RingElem b;      // s^(l * exponent)
  unsigned d = 0;  // X was replaced by X T^(2d)
  unsigned r = 0;  // longest conjugating prefix
  bool pivot_form = true;  // every generator has row or column index 1

  nlohmann::json to_json() const;
};

// w is a word over A_s[vars] with A_s = Localize(A, Powers s) and eval(w) = I
// at X = 0. Returns a word over A[vars] whose image in A_s[vars] equals
// eval(w) with X replaced by b X.
DilationResult dilate(const Word& w, std::size_t n, Ctx ctx, const std::string& X = "X");

// Shift variant: returns a word over A[X, Y] localizing to w((Y + b) X) w(Y X)^-1.
DilationResult dilate_shift(const Word& w, std::size_t n, Ctx ctx, const std::string& X = "X",
                            const std::string& Y = "Y");

struct ComaximalCover {
  std::vector<RingElem> s;
  std::vector<RingElem> cert;  // sum cert_i s_i = 1

  bool valid() const;
  // c' with sum c'_i s_i^N_i = 1, from the expansion of (sum c_i s_i)^K.
  std::vector<RingElem> power_certificate(const std::vector<unsigned>& N) const;
  nlohmann::json to_json() const;
};

// Localization of a polynomial ring A[vars] at the powers of s: A_s[vars].
Ctx localized_poly(Ctx poly, const RingElem& s);

// Dilation in the variable V of a word over A_s[vars], keeping V. The
// result localizes to w with V replaced by b V.
DilationResult dilate_in(const Word& w, std::size_t n, Ctx ctx, const std::string& V);

// sigma over A[X] with sigma(0) = I; local_words[i] over A_{s_i}[X] with
// eval = sigma localized at s_i. Returns a word over A[X] for sigma.
Word patch(const Mat& sigma, FormKind kind, const ComaximalCover& cover, const std::vector<Word>& local_words);

struct DiagReduction {
  Word eps;
  Mat D;
};

// beta * eval(eps) = D with D diagonal and eps congruent to I modulo the
// ideal generated by `ideal`.
DiagReduction diagonal_reduce(const Mat& beta, const std::vector<RingElem>& ideal, FormKind kind);

struct CongruenceCommutator {
  Word word;           // ge_ij(-a s^(m-1) lambda X), or empty
  unsigned level = 0;  // (word - I) has entries in s^level R[X]
  unsigned m = 0;
  RingElem lambda;
  Ctx ctx = nullptr;   // R[X]
};

// [ge_ij((a/s) X), D] for diagonal D with entries = 1 mod s^l.
CongruenceCommutator congruence_commutator(FormKind kind, int i, int j, const RingElem& a, const RingElem& s,
                                           const Mat& D, unsigned l, const std::string& X = "X");

struct NilpotentPower {
  unsigned e = 1;      // minimal e with alpha^e = 0
  unsigned l = 0;      // max nilpotency index of the entries
  unsigned m = 0;      // 2^m > l r^2
  unsigned long bound = 1;
};

NilpotentPower nilpotent_power(const Mat& alpha);

struct NilHomotopy {
  Mat theta;  // I + X gamma over R[X]
  Ctx ctx = nullptr;
  NilpotentPower power;
};

NilHomotopy nil_homotopy(const Mat& tau, FormKind kind = FormKind::Linear, const std::string& X = "X");

// Lifts a factorization of alpha mod I (word over R/I) to one of alpha.
Word lift_mod_nil(const Mat& alpha, const std::vector<RingElem>& ideal, const Word& word_bar, FormKind kind);

// Four-generator word for the diagonal matrix with u at a, u^-1 at b (and the
// dual entries for nonlinear kinds).
Word whitehead(FormKind kind, int n, int a, int b, const RingElem& u);

// Whether x lies in the ideal generated by gens.
bool ideal_contains(Ctx R, const std::vector<RingElem>& gens, const RingElem& x);

}  // namespace lgt
