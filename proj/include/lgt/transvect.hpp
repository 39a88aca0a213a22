#pragma once

// Transvections of free modules with the standard forms, elementary
// transvections of Q = P + A (linear) and Q = P _|_ A^2 (symplectic,
// orthogonal), and unimodularity certificates.

#include <optional>
#include <vector>

#include "lgt/matform.hpp"

namespace lgt {

using Vec = std::vector<RingElem>;

// <x, y> = x^T y (linear) or conj(x)^T psi y.
RingElem form_pair(FormKind kind, const Vec& x, const Vec& y);

// Either a coefficient vector c with sum c_i t_i = 1, or functionals f_j with
// weights w_j and sum w_j f_j(t) = 1 (which collapses to c = sum w_j f_j).
struct UnimodularCert {
  Vec coeffs;
  std::vector<Vec> functionals;
  Vec weights;

  bool empty() const { return coeffs.empty() && functionals.empty(); }
};

// Which datum the certificate speaks about: q (linear) / v (nonlinear), or
// the functional phi (linear) / <u, .> (nonlinear).
enum class CertTarget { Vector, Functional };

bool check_unimodular(const Vec& v, const UnimodularCert& cert);
// Certificate-free decision over Z, fields, Z/N and univariate polynomials
// over a field. Returns a certificate when v is unimodular; throws
// Undecidable elsewhere.
std::optional<Vec> find_unimodular_certificate(const Vec& v);

struct Transvection {
  FormKind kind = FormKind::Linear;
  Vec phi, q;  // linear: p -> p + phi(p) q
  Vec u, v;    // nonlinear
  bool inverted = false;
  CertTarget target = CertTarget::Vector;
  UnimodularCert cert;

  std::size_t dim() const { return kind == FormKind::Linear ? q.size() : u.size(); }
};

// Validates the defining conditions and the certificate. An empty certificate
// is replaced by a certificate-free decision where one is available.
Transvection make_transvection(FormKind kind, Vec a, Vec b, UnimodularCert cert,
                               CertTarget target = CertTarget::Vector);

Vec apply_transvection(const Transvection& t, const Vec& p);
Transvection invert(const Transvection& t);
// Matrix whose k-th column is apply_transvection(t, e_k).
Mat transvection_matrix(const Transvection& t, Ctx ctx);

struct QModule {
  FormKind kind = FormKind::Linear;
  Ctx ctx = nullptr;
  std::size_t rank = 0;        // rank of P (ambient free rank when idempotent)
  std::optional<Mat> idem;     // linear only: P = im(e)

  std::size_t q_size() const { return kind == FormKind::Linear ? rank + 1 : rank + 2; }
};

// Linear: rank >= 2. Nonlinear: P free of even rank >= 4, so that Q has
// size >= 6.
QModule make_qmodule(FormKind kind, Ctx ctx, std::size_t rank, std::optional<Mat> idem = std::nullopt);

enum class ElemShape {
  Column,  // linear (p, a) -> (p + a x, a)
  Row,     // linear (p, a) -> (p, a + f(p))
  First,   // nonlinear, driven by a
  Second   // nonlinear, driven by b
};

// Matrix of an elementary transvection on Q, coordinates (p, a) or (p, b, a).
// Symplectic First:  (p + a q, b - <p,q> + a, a)
// Symplectic Second: (p + b q, b, a + <p,q> - b)
// Orthogonal First:  (p - a q, b + <p,q> - <q,q> a / 2, a)
// Orthogonal Second: (p - b q, b, a + <p,q> - <q,q> b / 2)
Mat elem_transvection(const QModule& Q, ElemShape shape, const Vec& param);

}  // namespace lgt
