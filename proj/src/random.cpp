#include "lgt/random.hpp"

#include <algorithm>

namespace lgt {

RingElem random_elem(Ctx R, Rng& rng, int size) {
  switch (R->kind()) {
    case RingKind::Z: return R->from_int(rng.range(-size, size));
    case RingKind::Q: return R->from_rational(mpq_class(rng.range(-size, size), rng.range(1, size)));
    case RingKind::Zmod: {
      mpz_class n = R->modulus_n();
      return R->from_int(mpz_class(static_cast<unsigned long>(rng.raw() % 1000003ul)) % n);
    }
    case RingKind::Poly: {
      RingElem out = R->zero();
      const std::size_t nv = R->vars().size();
      const int terms = static_cast<int>(rng.range(0, 3));
      for (int t = 0; t < terms; ++t) {
        Monomial m(nv, 0);
        int deg = static_cast<int>(rng.range(0, 2));
        for (int d = 0; d < deg; ++d) m[static_cast<std::size_t>(rng.range(0, static_cast<long>(nv) - 1))] += 1;
        out += R->monomial(m, random_elem(R->parent(), rng, size));
      }
      return out;
    }
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      RingElem g = R->var(R->gen_name());
      RingElem out = R->zero(), gp = R->one();
      const std::size_t deg = R->kind() == RingKind::QuadExt ? 2 : R->modulus().size() - 1;
      for (std::size_t k = 0; k < deg; ++k) {
        out += R->embed(random_elem(R->parent(), rng, size)) * gp;
        gp *= g;
      }
      return out;
    }
    case RingKind::Localize: {
      RingElem num = R->embed(random_elem(R->parent(), rng, size));
      const MultSet& ms = R->multset();
      RingElem den = ms.shape == MultShape::Powers
                         ? ms.s.pow(static_cast<std::uint64_t>(rng.range(0, 2)))
                         : R->parent()->one() + ms.s * random_elem(R->parent(), rng, size);
      auto inv = R->is_unit(R->embed(den));
      return inv ? num * *inv : num;
    }
  }
  return R->zero();
}

RingElem random_nonzero(Ctx R, Rng& rng, int size) {
  for (int k = 0; k < 64; ++k) {
    RingElem a = random_elem(R, rng, size);
    if (!a.is_zero()) return a;
  }
  return R->one();
}

std::pair<int, int> random_indices(FormKind kind, int n, Rng& rng) {
  if (n < 2 || (kind == FormKind::Orthogonal && n < 4)) throw Error(Errc::BadIndices, "no generator exists at this size");
  for (;;) {
    int i = static_cast<int>(rng.range(1, n)), j = static_cast<int>(rng.range(1, n));
    if (i == j) continue;
    if (kind == FormKind::Orthogonal && j == sigma_index(i)) continue;
    return {i, j};
  }
}

ElemGen random_gen(FormKind kind, int n, Ctx R, Rng& rng, int size) {
  auto [i, j] = random_indices(kind, n, rng);
  RingElem a = random_elem(R, rng, size);
  if (kind != FormKind::Linear && j == sigma_index(i) && R->has_involution()) a = a + a.conj();
  return make_gen(kind, n, i, j, a);
}

Word random_word(FormKind kind, int n, Ctx R, std::size_t len, Rng& rng, int size) {
  Word w;
  for (std::size_t k = 0; k < len; ++k) w.push_back(random_gen(kind, n, R, rng, size));
  return w;
}

Word random_based_word(FormKind kind, int n, Ctx W, const std::string& X, std::size_t len, Rng& rng) {
  if (len == 0) return {};
  Ctx base = W->parent();
  const RingElem x = W->var(X);
  auto lin = [&]() { return x * W->embed(random_nonzero(base, rng, 2)) * (rng.coin() ? W->one() : W->one() + x); };
  const std::size_t depth = static_cast<std::size_t>(rng.range(0, static_cast<long>(std::min<std::size_t>(2, (len - 1) / 2))));
  Word open, close, mid;
  for (std::size_t k = 0; k < depth; ++k) {
    auto [i, j] = random_indices(kind, n, rng);
    RingElem c = W->embed(random_nonzero(base, rng, 2));
    if (kind != FormKind::Linear && j == sigma_index(i) && W->has_involution()) c = c + c.conj();
    RingElem extra = rng.coin() ? lin() : W->zero();
    if (kind != FormKind::Linear && j == sigma_index(i) && W->has_involution()) extra = extra + extra.conj();
    open.push_back(make_gen(kind, n, i, j, c + extra));
    close.insert(close.begin(), make_gen(kind, n, i, j, -c));
  }
  for (std::size_t k = 0; k < len - 2 * depth; ++k) {
    auto [i, j] = random_indices(kind, n, rng);
    RingElem a = lin();
    if (kind != FormKind::Linear && j == sigma_index(i) && W->has_involution()) a = a + a.conj();
    mid.push_back(make_gen(kind, n, i, j, a));
  }
  return concat(concat(open, mid), close);
}

Transvection random_transvection(FormKind kind, int n, Ctx R, Rng& rng) {
  if (kind == FormKind::Linear) throw Error(Errc::InvalidSpec, "random transvections are nonlinear here");
  const std::size_t N = static_cast<std::size_t>(n);
  Vec u0(N, R->zero()), e1(N, R->zero());
  e1[0] = R->one();
  for (std::size_t k = 0; k < N; ++k) {
    if (k == 1) continue;  // keeps <u0, e1> = 0
    if (kind == FormKind::Orthogonal && k % 2 == 1) continue;  // isotropic span of odd coordinates
    u0[k] = R->from_int(rng.range(-2, 2));
  }
  Word g = random_word(kind, n, R, 3, rng, 2);
  Mat G = eval_word(g, R, N), Gi = eval_word(word_inverse(g), R, N);
  Vec u(N, R->zero()), v(N, R->zero());
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      u[r] += G(r, c) * u0[c];
      v[r] += G(r, c) * e1[c];
    }
  UnimodularCert cert;
  for (std::size_t c = 0; c < N; ++c) cert.coeffs.push_back(Gi(0, c));
  return make_transvection(kind, u, v, cert, CertTarget::Vector);
}

}  // namespace lgt
