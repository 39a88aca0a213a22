#include "lgt/matform.hpp"

#include <sstream>

namespace lgt {

std::string_view form_name(FormKind k) {
  switch (k) {
    case FormKind::Linear: return "linear";
    case FormKind::Symplectic: return "symplectic";
    case FormKind::Orthogonal: return "orthogonal";
  }
  return "?";
}

FormKind form_from_name(std::string_view s) {
  if (s == "linear" || s == "Linear") return FormKind::Linear;
  if (s == "symplectic" || s == "Symplectic") return FormKind::Symplectic;
  if (s == "orthogonal" || s == "Orthogonal") return FormKind::Orthogonal;
  throw Error(Errc::InvalidSpec, "unknown form kind '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Mat

Mat::Mat(Ctx ctx, std::size_t rows, std::size_t cols) : ctx_(ctx), r_(rows), c_(cols), a_(rows * cols, ctx->zero()) {}

Mat Mat::identity(Ctx ctx, std::size_t n) {
  Mat m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ctx->one();
  return m;
}

Mat Mat::column(Ctx ctx, const std::vector<RingElem>& v) {
  Mat m(ctx, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = ctx->embed(v[i]);
  return m;
}

Mat Mat::from_rows(Ctx ctx, const std::vector<std::vector<RingElem>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  Mat m(ctx, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = ctx->embed(rows[i][j]);
  }
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
  Mat out(ctx_, r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const RingElem& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const RingElem& y = o(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw Error(Errc::DimensionMismatch, "matrix sum shape mismatch");
  Mat out = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] += o.a_[k];
  return out;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw Error(Errc::DimensionMismatch, "matrix difference shape mismatch");
  Mat out = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] -= o.a_[k];
  return out;
}

Mat Mat::scaled(const RingElem& s) const {
  Mat out = *this;
  RingElem t = ctx_->embed(s);
  for (auto& x : out.a_) x = t * x;
  return out;
}

Mat Mat::transpose() const {
  Mat out(ctx_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Mat Mat::conj() const {
  if (!ctx_->has_involution()) return *this;
  Mat out = *this;
  for (auto& x : out.a_) x = x.conj();
  return out;
}

Mat Mat::map(Ctx target, const std::function<RingElem(const RingElem&)>& f) const {
  Mat out(target, r_, c_);
  for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = target->embed(f(a_[k]));
  return out;
}

bool Mat::operator==(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return false;
  return true;
}

bool Mat::is_identity() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_diagonal() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
  }
  os << "]";
  return os.str();
}

nlohmann::json Mat::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < c_; ++j) row.push_back(ctx_->to_json((*this)(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat Mat::from_json(Ctx ctx, const nlohmann::json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "matrix must be an array of rows");
  std::vector<std::vector<RingElem>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(Errc::ParseError, "matrix row must be an array");
    std::vector<RingElem> row;
    for (const auto& x : r) row.push_back(ctx->from_json(x));
    rows.push_back(std::move(row));
  }
  return from_rows(ctx, rows);
}

// ---------------------------------------------------------------------------
// Determinant and inverse

namespace {

// Coefficients c_0 = 1, c_1, ..., c_n of det(xI - A), highest degree first.
std::vector<RingElem> charpoly(const Mat& A) {
  Ctx R = A.ctx();
  const std::size_t n = A.rows();
  std::vector<RingElem> C{R->one()};
  if (n == 0) return C;
  C.push_back(-A(0, 0));
  for (std::size_t r = 1; r < n; ++r) {
    // Leading block M (r x r), row R_ = A[r][0..r), column S = A[0..r)[r].
    std::vector<RingElem> t{R->one(), -A(r, r)};
    std::vector<RingElem> v(r);  // v = M^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = A(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      RingElem dot = R->zero();
      for (std::size_t i = 0; i < r; ++i) dot += A(r, i) * v[i];
      t.push_back(-dot);
      if (k + 1 < r) {
        std::vector<RingElem> w(r, R->zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!A(i, j).is_zero()) w[i] += A(i, j) * v[j];
        v = std::move(w);
      }
    }
    std::vector<RingElem> next(r + 2, R->zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += t[i - j] * C[j];
    C = std::move(next);
  }
  return C;
}

}  // namespace

RingElem det(const Mat& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  // Elimination on unit pivots is exact over any commutative ring; the
  // characteristic polynomial covers columns without a unit.
  const std::size_t n = m.rows();
  Ctx R = m.ctx();
  Mat a = m;
  RingElem d = R->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    std::optional<RingElem> inv;
    for (std::size_t r = c; r < n && p == n; ++r)
      if (a(r, c).is_one()) {
        p = r;
        inv = R->one();
      }
    for (std::size_t r = c; r < n && p == n; ++r)
      if (!a(r, c).is_zero() && (inv = R->is_unit(a(r, c)))) p = r;
    if (p == n) {
      auto C = charpoly(m);
      return (n % 2 == 0) ? C[n] : -C[n];
    }
    if (p != c) {
      for (std::size_t k = c; k < n; ++k) std::swap(a(p, k), a(c, k));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const RingElem f = a(r, c) * *inv;
      for (std::size_t k = c; k < n; ++k)
        if (!a(c, k).is_zero()) a(r, k) -= f * a(c, k);
    }
  }
  return d;
}

Mat adjugate(const Mat& m) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  Ctx R = m.ctx();
  if (n == 0) return m;
  auto C = charpoly(m);
  // adj(A) = (-1)^(n-1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I), by Horner.
  Mat acc = Mat::identity(R, n);
  for (std::size_t k = 1; k < n; ++k) acc = m * acc + Mat::identity(R, n).scaled(C[k]);
  return (n % 2 == 1) ? acc : acc.scaled(R->from_int(-1));
}

Mat inverse(const Mat& m) {
  RingElem d = det(m);
  auto dinv = m.ctx()->is_unit(d);
  if (!dinv) throw Error(Errc::NotInvertible, "determinant " + d.str() + " is not a unit");
  return adjugate(m).scaled(*dinv);
}

Mat commutator(const Mat& a, const Mat& b) { return a * b * inverse(a) * inverse(b); }

Mat standard_form(FormKind kind, std::size_t n, Ctx ctx) {
  if (kind == FormKind::Linear) throw Error(Errc::LinearHasNoForm, "linear kind carries no form");
  if (n == 0 || n % 2 != 0) throw Error(Errc::OddSize, "form size must be even and positive");
  Mat f(ctx, n, n);
  for (std::size_t k = 0; k < n; k += 2) {
    f(k, k + 1) = ctx->one();
    f(k + 1, k) = kind == FormKind::Symplectic ? ctx->from_int(-1) : ctx->one();
  }
  return f;
}

// ---------------------------------------------------------------------------
// Generators

int paired_sign(FormKind kind, int i, int j) {
  if (kind == FormKind::Orthogonal) return -1;
  auto eps = [](int k) { return (k % 2 == 1) ? 1 : -1; };
  return -eps(i) * eps(j);
}

void validate_gen(FormKind kind, int n, int i, int j) {
  if (n < 1) throw Error(Errc::BadIndices, "matrix size must be positive");
  if (kind != FormKind::Linear && n % 2 != 0) throw Error(Errc::OddSize, "form size must be even");
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw Error(Errc::BadIndices, "bad generator indices (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (kind == FormKind::Orthogonal && j == sigma_index(i))
    throw Error(Errc::BadIndices, "orthogonal kind has no short-root generator");
}

ElemGen make_gen(FormKind kind, int n, int i, int j, const RingElem& a) {
  validate_gen(kind, n, i, j);
  ElemGen g{kind, n, i, j, a, 1};
  if (g.short_root() && a.ctx()->has_involution() && a.conj() != a)
    throw Error(Errc::BadIndices, "short-root parameter must be fixed by the involution");
  return g;
}

Mat gen_matrix(const ElemGen& g, Ctx ctx) {
  Mat m = Mat::identity(ctx, static_cast<std::size_t>(g.n));
  apply_gen_right(m, g);
  return m;
}

Mat elem_gen(FormKind kind, int n, int i, int j, const RingElem& a) {
  return gen_matrix(make_gen(kind, n, i, j, a), a.ctx());
}

void apply_gen_right(Mat& m, const ElemGen& g) {
  Ctx R = m.ctx();
  const RingElem a = R->embed(g.value());
  if (a.is_zero()) return;
  const std::size_t i = g.i - 1, j = g.j - 1;
  // column j += a * column i
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m(r, i).is_zero()) m(r, j) += m(r, i) * a;
  if (g.kind == FormKind::Linear || g.short_root()) return;
  const RingElem b = R->from_int(paired_sign(g.kind, g.i, g.j)) * a.conj();
  const std::size_t si = sigma_index(g.i) - 1, sj = sigma_index(g.j) - 1;
  // column sigma(i) += b * column sigma(j)
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m(r, sj).is_zero()) m(r, si) += m(r, sj) * b;
}

void apply_gen_left(const ElemGen& g, Mat& m) {
  Ctx R = m.ctx();
  const RingElem a = R->embed(g.value());
  if (a.is_zero()) return;
  const std::size_t i = g.i - 1, j = g.j - 1;
  // row i += a * row j
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m(j, c).is_zero()) m(i, c) += a * m(j, c);
  if (g.kind == FormKind::Linear || g.short_root()) return;
  const RingElem b = R->from_int(paired_sign(g.kind, g.i, g.j)) * a.conj();
  const std::size_t si = sigma_index(g.i) - 1, sj = sigma_index(g.j) - 1;
  // row sigma(j) += b * row sigma(i)
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m(si, c).is_zero()) m(sj, c) += b * m(si, c);
}

bool check_membership(const Mat& m, FormKind kind, bool strict) {
  if (!m.square()) return false;
  if (kind == FormKind::Linear) {
    RingElem d = det(m);
    return strict ? d.is_one() : m.ctx()->is_unit(d).has_value();
  }
  if (m.rows() % 2 != 0) return false;
  Mat psi = standard_form(kind, m.rows(), m.ctx());
  if (m.conj().transpose() * psi * m != psi) return false;
  if (kind == FormKind::Orthogonal && strict) return det(m).is_one();
  return true;
}

Mat eval_word(const Word& w, Ctx ctx, std::size_t n) {
  Mat m = Mat::identity(ctx, n);
  for (const auto& g : w) {
    if (static_cast<std::size_t>(g.n) != n) throw Error(Errc::DimensionMismatch, "generator size differs from word size");
    apply_gen_right(m, g);
  }
  return m;
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

nlohmann::json gen_to_json(const ElemGen& g) {
  return {{"kind", form_name(g.kind)}, {"n", g.n}, {"i", g.i}, {"j", g.j},
          {"param", g.param.ctx()->to_json(g.param)}, {"sign", g.sign}};
}

ElemGen gen_from_json(Ctx ctx, const nlohmann::json& j) {
  try {
    FormKind kind = form_from_name(j.at("kind").get<std::string>());
    int n = j.at("n").get<int>(), i = j.at("i").get<int>(), jj = j.at("j").get<int>();
    ElemGen g = make_gen(kind, n, i, jj, ctx->from_json(j.at("param")));
    g.sign = j.value("sign", 1);
    if (g.sign != 1 && g.sign != -1) throw Error(Errc::ParseError, "generator sign must be 1 or -1");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed generator: ") + e.what());
  }
}

nlohmann::json word_to_json(const Word& w) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : w) out.push_back(gen_to_json(g));
  return out;
}

Word word_from_json(Ctx ctx, const nlohmann::json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "word must be an array");
  Word w;
  for (const auto& g : j) w.push_back(gen_from_json(ctx, g));
  return w;
}

Word map_word(const Word& w, const std::function<RingElem(const RingElem&)>& f) {
  Word out;
  out.reserve(w.size());
  for (const auto& g : w) {
    ElemGen h = g;
    h.param = f(g.param);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace lgt
