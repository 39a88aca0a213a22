#include "lgt/transvect.hpp"

namespace lgt {

namespace {

Ctx common_ctx(const Vec& v) {
  for (const auto& x : v)
    if (x.valid()) return x.ctx();
  throw Error(Errc::DimensionMismatch, "empty vector has no ring");
}

Vec unit_vec(Ctx R, std::size_t n, std::size_t k) {
  Vec e(n, R->zero());
  e[k] = R->one();
  return e;
}


// Univariate polynomial over a field.
bool univariate_over_field(Ctx R) {
  return R->kind() == RingKind::Poly && R->vars().size() == 1 && R->parent()->is_field();
}

std::uint32_t udeg(const RingElem& p) { return p.terms().empty() ? 0 : p.terms().front().mono[0]; }

// Euclidean division in Z or K[x]: a = q b + r with r "smaller" than b.
std::pair<RingElem, RingElem> euclid_divmod(const RingElem& a, const RingElem& b) {
  Ctx R = a.ctx();
  if (R->kind() == RingKind::Z) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.int_value().get_mpz_t(), b.int_value().get_mpz_t());
    return {R->from_int(q), R->from_int(r)};
  }
  Ctx K = R->parent();
  const Term& lb = b.terms().front();
  RingElem lcinv = *K->is_unit(lb.coeff);
  RingElem q = R->zero(), r = a;
  while (!r.is_zero() && udeg(r) >= udeg(b)) {
    const Term& lr = r.terms().front();
    RingElem step = R->monomial(Monomial{lr.mono[0] - lb.mono[0]}, lr.coeff * lcinv);
    q += step;
    r -= step * b;
  }
  return {q, r};
}

// Extended gcd over a Euclidean ring: returns (g, s, t) with s a + t b = g.
std::tuple<RingElem, RingElem, RingElem> ext_gcd(RingElem a, RingElem b) {
  Ctx R = a.ctx();
  RingElem s0 = R->one(), s1 = R->zero(), t0 = R->zero(), t1 = R->one();
  while (!b.is_zero()) {
    auto [q, r] = euclid_divmod(a, b);
    a = b;
    b = r;
    RingElem s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  return {a, s0, t0};
}

}  // namespace

RingElem form_pair(FormKind kind, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error(Errc::DimensionMismatch, "form arguments differ in length");
  Ctx R = common_ctx(x);
  RingElem acc = R->zero();
  if (kind == FormKind::Linear) {
    for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k];
    return acc;
  }
  if (x.size() % 2 != 0) throw Error(Errc::OddSize, "form size must be even");
  const bool symp = kind == FormKind::Symplectic;
  for (std::size_t k = 0; k < x.size(); k += 2) {
    // psi has +1 at (2l-1, 2l) and -1 / +1 at (2l, 2l-1).
    acc += x[k].conj() * y[k + 1];
    RingElem t = x[k + 1].conj() * y[k];
    acc = symp ? acc - t : acc + t;
  }
  return acc;
}

bool check_unimodular(const Vec& v, const UnimodularCert& cert) {
  if (v.empty()) return false;
  Ctx R = common_ctx(v);
  Vec c = cert.coeffs;
  if (c.empty() && !cert.functionals.empty()) {
    if (cert.weights.size() != cert.functionals.size()) return false;
    c.assign(v.size(), R->zero());
    for (std::size_t j = 0; j < cert.functionals.size(); ++j) {
      if (cert.functionals[j].size() != v.size()) return false;
      for (std::size_t k = 0; k < v.size(); ++k) c[k] += R->embed(cert.weights[j]) * R->embed(cert.functionals[j][k]);
    }
  }
  if (c.size() != v.size()) return false;
  RingElem acc = R->zero();
  for (std::size_t k = 0; k < v.size(); ++k) acc += R->embed(c[k]) * v[k];
  return acc.is_one();
}

std::optional<Vec> find_unimodular_certificate(const Vec& v) {
  if (v.empty()) return std::nullopt;
  Ctx R = common_ctx(v);
  const std::size_t n = v.size();
  if (R->is_field()) {
    for (std::size_t k = 0; k < n; ++k)
      if (auto inv = R->is_unit(v[k])) {
        Vec c(n, R->zero());
        c[k] = *inv;
        return c;
      }
    return std::nullopt;
  }
  if (R->kind() == RingKind::Zmod) {
    // Lift to Z, add N as an extra entry, and reduce the Z certificate.
    Ctx Z = ring_Z();
    Vec w;
    for (const auto& x : v) w.push_back(Z->from_int(x.int_value()));
    w.push_back(Z->from_int(R->modulus_n()));
    auto c = find_unimodular_certificate(w);
    if (!c) return std::nullopt;
    Vec out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(R->from_int((*c)[k].int_value()));
    return out;
  }
  if (R->kind() == RingKind::Z || univariate_over_field(R)) {
    RingElem g = R->zero();
    Vec c(n, R->zero());
    for (std::size_t k = 0; k < n; ++k) {
      auto [g2, s, t] = ext_gcd(g, v[k]);
      for (std::size_t i = 0; i < k; ++i) c[i] = c[i] * s;
      c[k] = t;
      g = g2;
    }
    auto ginv = R->is_unit(g);
    if (!ginv) return std::nullopt;
    for (auto& x : c) x = x * *ginv;
    return c;
  }
  throw Error(Errc::Undecidable, "certificate-free unimodularity test unavailable over " + R->key());
}

Transvection make_transvection(FormKind kind, Vec a, Vec b, UnimodularCert cert, CertTarget target) {
  Transvection t;
  t.kind = kind;
  t.target = target;
  if (a.size() != b.size() || a.empty()) throw Error(Errc::DimensionMismatch, "transvection data differ in length");
  Ctx R = common_ctx(a);
  for (auto& x : a) x = R->embed(x);
  for (auto& x : b) x = R->embed(x);
  Vec functional;  // the functional side, as a coefficient row
  Vec vector_side;
  if (kind == FormKind::Linear) {
    t.phi = std::move(a);
    t.q = std::move(b);
    if (!form_pair(kind, t.phi, t.q).is_zero()) throw Error(Errc::OrthogonalityViolated, "phi(q) != 0");
    functional = t.phi;
    vector_side = t.q;
  } else {
    t.u = std::move(a);
    t.v = std::move(b);
    if (t.u.size() % 2 != 0) throw Error(Errc::OddSize, "form size must be even");
    if (!form_pair(kind, t.u, t.v).is_zero()) throw Error(Errc::OrthogonalityViolated, "<u,v> != 0");
    if (kind == FormKind::Orthogonal &&
        (!form_pair(kind, t.u, t.u).is_zero() || !form_pair(kind, t.v, t.v).is_zero()))
      throw Error(Errc::NotIsotropic, "u and v must be isotropic");
    // Coefficients of p -> <u,p>.
    const std::size_t n = t.u.size();
    for (std::size_t k = 0; k < n; ++k) functional.push_back(form_pair(kind, t.u, unit_vec(R, n, k)));
    vector_side = t.v;
  }
  const Vec& checked = target == CertTarget::Vector ? vector_side : functional;
  if (cert.empty()) {
    std::optional<Vec> found;
    try {
      found = find_unimodular_certificate(checked);
    } catch (const Error&) {
      throw Error(Errc::BadCertificate, "no certificate supplied and none can be derived over " + R->key());
    }
    if (!found) throw Error(Errc::BadCertificate, "datum is not unimodular");
    cert.coeffs = *found;
  }
  if (!check_unimodular(checked, cert)) throw Error(Errc::BadCertificate, "certificate does not sum to 1");
  t.cert = std::move(cert);
  return t;
}

Vec apply_transvection(const Transvection& t, const Vec& p) {
  if (p.size() != t.dim()) throw Error(Errc::DimensionMismatch, "vector length differs from module rank");
  Vec out = p;
  const RingElem sgn = common_ctx(p)->from_int(t.inverted ? -1 : 1);
  if (t.kind == FormKind::Linear) {
    RingElem f = sgn * form_pair(FormKind::Linear, t.phi, p);
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += f * t.q[k];
    return out;
  }
  RingElem up = form_pair(t.kind, t.u, p), vp = form_pair(t.kind, t.v, p);
  if (t.kind == FormKind::Symplectic) {
    // p + <u,p> v + <v,p> u + <u,p> u, and minus signs for the inverse.
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += sgn * (up * t.v[k] + vp * t.u[k] + up * t.u[k]);
  } else {
    // p - <u,p> v + <v,p> u; inverse p + <u,p> v - <v,p> u.
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += sgn * (vp * t.u[k] - up * t.v[k]);
  }
  return out;
}

Transvection invert(const Transvection& t) {
  Transvection r = t;
  r.inverted = !t.inverted;
  return r;
}

Mat transvection_matrix(const Transvection& t, Ctx ctx) {
  const std::size_t n = t.dim();
  Mat m(ctx, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec col = apply_transvection(t, unit_vec(ctx, n, k));
    for (std::size_t i = 0; i < n; ++i) m(i, k) = col[i];
  }
  return m;
}

QModule make_qmodule(FormKind kind, Ctx ctx, std::size_t rank, std::optional<Mat> idem) {
  if (kind == FormKind::Linear) {
    if (rank < 2) throw Error(Errc::InvalidSpec, "linear P needs rank >= 2");
    if (idem) {
      if (idem->rows() != rank || idem->cols() != rank) throw Error(Errc::DimensionMismatch, "idempotent has wrong size");
      if (*idem * *idem != *idem) throw Error(Errc::InvalidSpec, "e is not idempotent");
    }
  } else {
    if (idem) throw Error(Errc::InvalidSpec, "nonlinear P must be free");
    if (rank % 2 != 0) throw Error(Errc::OddSize, "nonlinear P must have even rank");
    if (rank < 4) throw Error(Errc::InvalidSpec, "nonlinear P needs rank >= 4");
    if (ctx->has_involution()) throw Error(Errc::InvalidSpec, "elementary transvections need the trivial involution");
  }
  return QModule{kind, ctx, rank, std::move(idem)};
}

Mat elem_transvection(const QModule& Q, ElemShape shape, const Vec& param) {
  Ctx R = Q.ctx;
  const std::size_t n = Q.rank;
  if (param.size() != n) throw Error(Errc::DimensionMismatch, "parameter length differs from rank of P");
  Vec x;
  for (const auto& e : param) x.push_back(R->embed(e));
  Mat m = Mat::identity(R, Q.q_size());
  if (Q.kind == FormKind::Linear) {
    if (shape == ElemShape::Column) {
      if (Q.idem && *Q.idem * Mat::column(R, x) != Mat::column(R, x))
        throw Error(Errc::NotInModule, "x does not lie in im(e)");
      for (std::size_t i = 0; i < n; ++i) m(i, n) = x[i];
    } else if (shape == ElemShape::Row) {
      if (Q.idem) {
        Mat row(R, 1, n);
        for (std::size_t i = 0; i < n; ++i) row(0, i) = x[i];
        if (row * *Q.idem != row) throw Error(Errc::NotInModule, "functional does not factor through im(e)");
      }
      for (std::size_t i = 0; i < n; ++i) m(n, i) = x[i];
    } else {
      throw Error(Errc::InvalidSpec, "linear elementary transvections have shapes column/row");
    }
    return m;
  }
  if (shape != ElemShape::First && shape != ElemShape::Second)
    throw Error(Errc::InvalidSpec, "nonlinear elementary transvections have shapes first/second");
  const std::size_t bi = n, ai = n + 1;
  // <p, q> = sum_k p_k (psi q)_k.
  Mat psi = standard_form(Q.kind, n, R);
  Vec psiq(n, R->zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) psiq[i] += psi(i, k) * x[k];
  const RingElem qq = form_pair(Q.kind, x, x);
  RingElem half_qq = R->zero();
  if (Q.kind == FormKind::Orthogonal && !qq.is_zero()) {
    auto half = R->is_unit(R->from_int(2));
    if (!half) throw Error(Errc::TwoNotInvertible, "non-isotropic q needs 1/2");
    half_qq = qq * *half;
  }
  const std::size_t drive = shape == ElemShape::First ? ai : bi;   // coordinate multiplying q
  const std::size_t other = shape == ElemShape::First ? bi : ai;   // coordinate that absorbs <p,q>
  if (Q.kind == FormKind::Symplectic) {
    // First: b' = b - <p,q> + a.  Second: a' = a + <p,q> - b.
    const RingElem s = R->from_int(shape == ElemShape::First ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, drive) = x[i];
      m(other, i) = s * psiq[i];
    }
    m(other, drive) = -s;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      m(i, drive) = -x[i];
      m(other, i) = psiq[i];
    }
    m(other, drive) = -half_qq;
  }
  return m;
}

}  // namespace lgt
