#pragma once

// Dense matrices over a ring context, the standard alternating and symmetric
// forms, elementary generators of E(n), ESp(n), EO(n), and words in them.
//
// Indices in ElemGen are 1-based to match the usual ge_ij notation; Mat
// accessors are 0-based.

#include <functional>
#include <string>
#include <vector>

#include "lgt/rings.hpp"

namespace lgt {

enum class FormKind { Linear, Symplectic, Orthogonal };

std::string_view form_name(FormKind k);
FormKind form_from_name(std::string_view s);  // throws InvalidSpec

// Hyperbolic partner of a 1-based index: 2l-1 <-> 2l.
inline int sigma_index(int i) { return (i % 2 == 1) ? i + 1 : i - 1; }

class Mat {
public:
  Mat() = default;
  Mat(Ctx ctx, std::size_t rows, std::size_t cols);  // zero matrix

  static Mat identity(Ctx ctx, std::size_t n);
  static Mat column(Ctx ctx, const std::vector<RingElem>& v);
  static Mat from_rows(Ctx ctx, const std::vector<std::vector<RingElem>>& rows);

  Ctx ctx() const { return ctx_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  RingElem& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const RingElem& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const RingElem& s) const;
  Mat transpose() const;
  Mat conj() const;  // entrywise involution
  // Entrywise image under a ring map.
  Mat map(Ctx target, const std::function<RingElem(const RingElem&)>& f) const;

  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_identity() const;
  bool is_zero() const;
  bool is_diagonal() const;

  std::string str() const;
  nlohmann::json to_json() const;
  static Mat from_json(Ctx ctx, const nlohmann::json& j);

private:
  Ctx ctx_ = nullptr;
  std::size_t r_ = 0, c_ = 0;
  std::vector<RingElem> a_;
};

// Division-free determinant (Berkowitz).
RingElem det(const Mat& m);
// Classical adjoint, via Cayley-Hamilton on the Berkowitz characteristic polynomial.
Mat adjugate(const Mat& m);
// Inverse over a unit determinant; throws NotInvertible.
Mat inverse(const Mat& m);
// A B A^-1 B^-1.
Mat commutator(const Mat& a, const Mat& b);

// psi_{n/2} (Symplectic) or psi~_{n/2} (Orthogonal).
Mat standard_form(FormKind kind, std::size_t n, Ctx ctx);

struct ElemGen {
  FormKind kind = FormKind::Linear;
  int n = 0;
  int i = 0, j = 0;  // 1-based
  RingElem param;
  int sign = 1;  // -1 marks the inverse generator

  // Effective parameter: sign * param.
  RingElem value() const { return sign > 0 ? param : -param; }
  bool short_root() const { return kind != FormKind::Linear && j == sigma_index(i); }
  ElemGen inverse() const {
    ElemGen g = *this;
    g.sign = -sign;
    return g;
  }
};

using Word = std::vector<ElemGen>;

// Sign c of the paired entry in I + a E_ij + c conj(a) E_{sigma j, sigma i}.
// Symplectic: c = -eps(i) eps(j) with eps(odd) = +1, eps(even) = -1.
// Orthogonal: c = -1.
int paired_sign(FormKind kind, int i, int j);

// Validates (kind, n, i, j) and the short-root parameter condition; throws BadIndices / OddSize.
void validate_gen(FormKind kind, int n, int i, int j);
ElemGen make_gen(FormKind kind, int n, int i, int j, const RingElem& a);
Mat elem_gen(FormKind kind, int n, int i, int j, const RingElem& a);
Mat gen_matrix(const ElemGen& g, Ctx ctx);

// Linear: det is a unit (det = 1 when strict). Nonlinear: conj(M)^T psi M = psi,
// and for Orthogonal strict additionally det = 1.
bool check_membership(const Mat& m, FormKind kind, bool strict = true);

// Right-multiplies m in place by the generator (column operations).
void apply_gen_right(Mat& m, const ElemGen& g);
// Left-multiplies m in place by the generator (row operations).
void apply_gen_left(const ElemGen& g, Mat& m);

Mat eval_word(const Word& w, Ctx ctx, std::size_t n);
Word word_inverse(const Word& w);
Word concat(Word a, const Word& b);

nlohmann::json gen_to_json(const ElemGen& g);
ElemGen gen_from_json(Ctx ctx, const nlohmann::json& j);
nlohmann::json word_to_json(const Word& w);
Word word_from_json(Ctx ctx, const nlohmann::json& j);

// Entrywise image of a word's parameters under a ring map.
Word map_word(const Word& w, const std::function<RingElem(const RingElem&)>& f);

}  // namespace lgt
