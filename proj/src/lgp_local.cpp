#include <algorithm>

#include "lgt/lgp.hpp"

namespace lgt {

namespace {

ElemGen gen(FormKind kind, std::size_t n, int i, int j, const RingElem& a) {
  return make_gen(kind, static_cast<int>(n), i, j, a);
}

RingElem unit_inverse(Ctx R, const RingElem& a, Errc code, const std::string& what) {
  auto inv = R->is_unit(a);
  if (!inv) throw Error(code, what + ": " + a.str() + " is not a unit");
  return *inv;
}

// Ideal generated by gens inside a finite ring, as a list of elements.
std::vector<RingElem> finite_ideal(Ctx R, const std::vector<RingElem>& gens) {
  const auto elems = R->elements();
  std::vector<RingElem> ideal{R->zero()};
  auto has = [&](const RingElem& x) {
    return std::any_of(ideal.begin(), ideal.end(), [&](const RingElem& y) { return R->eq(x, y); });
  };
  bool grew = true;
  while (grew) {
    grew = false;
    const auto cur = ideal;
    for (const auto& g : gens)
      for (const auto& r : elems)
        for (const auto& a : cur) {
          RingElem x = a + r * g;
          if (!has(x)) {
            ideal.push_back(x);
            grew = true;
          }
        }
  }
  return ideal;
}

// Lift of an element of R/I back to R along the canonical representatives.
RingElem lift_elem(const RingElem& a, Ctx R) {
  Ctx c = a.ctx();
  if (R->is_ancestor_or_self(c)) return R->embed(a);
  switch (c->kind()) {
    case RingKind::Zmod: return R->from_int(a.int_value());
    case RingKind::Poly: {
      if (R->kind() != RingKind::Poly || R->vars() != c->vars())
        throw Error(Errc::ContextMismatch, "cannot lift from " + c->key() + " to " + R->key());
      RingElem sum = R->zero();
      for (const auto& t : a.terms()) sum += R->monomial(t.mono, lift_elem(t.coeff, R->parent()));
      return sum;
    }
    default: throw Error(Errc::ContextMismatch, "cannot lift from " + c->key() + " to " + R->key());
  }
}

}  // namespace

bool ideal_contains(Ctx R, const std::vector<RingElem>& gens, const RingElem& x) {
  std::vector<RingElem> g;
  for (const auto& a : gens)
    if (!R->embed(a).is_zero()) g.push_back(R->embed(a));
  const RingElem y = R->embed(x);
  if (g.empty()) return y.is_zero();
  if (R->kind() == RingKind::Z || R->kind() == RingKind::Zmod) {
    mpz_class d = R->kind() == RingKind::Zmod ? R->modulus_n() : mpz_class(0);
    for (const auto& a : g) d = gcd(d, a.int_value());
    return d == 0 ? y.is_zero() : mpz_divisible_p(y.int_value().get_mpz_t(), d.get_mpz_t()) != 0;
  }
  if (R->is_field()) return true;
  if (g.size() == 1) return R->in_ideal(y, g[0]);
  if (R->is_finite()) {
    const auto I = finite_ideal(R, g);
    return std::any_of(I.begin(), I.end(), [&](const RingElem& z) { return R->eq(z, y); });
  }
  throw Error(Errc::Undecidable, "ideal membership with several generators over " + R->key());
}

// ---------------------------------------------------------------------------
// Diagonal reduction

DiagReduction diagonal_reduce(const Mat& beta, const std::vector<RingElem>& ideal, FormKind kind) {
  if (!beta.square()) throw Error(Errc::DimensionMismatch, "beta must be square");
  Ctx R = beta.ctx();
  const std::size_t n = beta.rows();
  if (!R->is_local()) throw Error(Errc::NotLocalRing, R->key() + " is not recognized as local");
  for (const auto& g : ideal)
    if (R->is_unit(R->embed(g))) throw Error(Errc::InvalidSpec, "ideal generator " + g.str() + " is a unit");
  const Mat id = Mat::identity(R, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!ideal_contains(R, ideal, beta(i, j) - id(i, j)))
        throw Error(Errc::NotCongruentToIdentity, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  if (!check_membership(beta, kind, true)) throw Error(Errc::NotInGroup, "beta is not in the group");

  Mat M = beta;
  DiagReduction out;
  auto clear = [&](int row, int col, int piv) {
    // col += a * piv-column, chosen to kill M(row, col).
    const RingElem x = M(row - 1, col - 1);
    if (x.is_zero()) return;
    const RingElem inv = unit_inverse(R, M(row - 1, piv - 1), Errc::NotInGroup, "pivot");
    ElemGen g = gen(kind, n, piv, col, -(x * inv));
    apply_gen_right(M, g);
    out.eps.push_back(g);
  };

  if (kind == FormKind::Linear) {
    for (int p = 1; p <= static_cast<int>(n); ++p)
      for (int j = 1; j <= static_cast<int>(n); ++j)
        if (j != p) clear(p, j, p);
  } else {
    for (int p = 1; p < static_cast<int>(n); p += 2) {
      const int pp = p + 1;
      for (int row : {p, pp}) {
        for (int j = 1; j <= static_cast<int>(n); ++j)
          if (j != p && j != pp) clear(row, j, row);
        const int other = row == p ? pp : p;
        if (M(row - 1, other - 1).is_zero()) continue;
        if (kind == FormKind::Orthogonal) throw Error(Errc::NotInGroup, "hyperbolic block is not diagonal");
        clear(row, other, row);
      }
    }
  }
  if (!M.is_diagonal()) throw Error(Errc::NotInGroup, "elimination did not reach a diagonal matrix");
  for (std::size_t i = 0; i < n; ++i) unit_inverse(R, M(i, i), Errc::NotInGroup, "diagonal entry");
  if (kind != FormKind::Linear)
    for (std::size_t i = 0; i < n; ++i)
      if (!(M(sigma_index(static_cast<int>(i + 1)) - 1, sigma_index(static_cast<int>(i + 1)) - 1) * M(i, i).conj()).is_one())
        throw Error(Errc::NotInGroup, "diagonal does not preserve the form");
  out.D = std::move(M);
  return out;
}

// ---------------------------------------------------------------------------
// Congruence commutator

CongruenceCommutator congruence_commutator(FormKind kind, int i, int j, const RingElem& a, const RingElem& s,
                                           const Mat& D, unsigned l, const std::string& X) {
  if (!D.square() || !D.is_diagonal()) throw Error(Errc::NotDiagonal, "D must be a square diagonal matrix");
  if (l < 2) throw Error(Errc::InsufficientCongruence, "congruence level must be at least 2");
  Ctx R = D.ctx();
  const std::size_t n = D.rows();
  validate_gen(kind, static_cast<int>(n), i, j);
  const RingElem sv = R->embed(s), av = R->embed(a);
  const RingElem sl = sv.pow(l);
  for (std::size_t k = 0; k < n; ++k) {
    if (!R->in_ideal(D(k, k) - R->one(), sl))
      throw Error(Errc::InsufficientCongruence, "diagonal entry " + D(k, k).str() + " is not 1 mod s^" + std::to_string(l));
    unit_inverse(R, D(k, k), Errc::NotDiagonal, "diagonal entry");
  }
  if (kind != FormKind::Linear)
    for (std::size_t k = 0; k < n; ++k)
      if (!(D(sigma_index(static_cast<int>(k + 1)) - 1, sigma_index(static_cast<int>(k + 1)) - 1) * D(k, k).conj()).is_one())
        throw Error(Errc::NotInGroup, "diagonal does not preserve the form");

  if (R->has_var(X)) throw Error(Errc::InvalidSpec, "variable '" + X + "' already in use");
  Ctx RX = ring_poly(R, {X});
  CongruenceCommutator out;
  out.ctx = RX;
  const RingElem d = D(i - 1, i - 1) * unit_inverse(R, D(j - 1, j - 1), Errc::NotDiagonal, "diagonal entry");
  const RingElem dm1 = d - R->one();
  out.lambda = R->zero();
  if (dm1.is_zero()) {
    out.level = l - 1;
    return out;
  }
  // Largest m with s^m | d - 1, starting from l.
  unsigned m = l;
  auto lam = R->exact_div(dm1, sl);
  if (!lam) throw Error(Errc::InsufficientCongruence, "d_i / d_j is not 1 mod s^l");
  for (unsigned cap = 0; cap < 4096; ++cap) {
    auto next = R->exact_div(*lam, sv);
    if (!next) break;
    lam = next;
    ++m;
  }
  out.m = m;
  out.lambda = *lam;
  out.level = m - 1;
  const RingElem param = RX->embed(-(av * sv.pow(m - 1) * *lam)) * RX->var(X);
  if (!param.is_zero()) out.word.push_back(gen(kind, n, i, j, param));

  // Literal commutator over R_s[X].
  Ctx Ls = localized_poly(RX, sv);
  const RingElem sinv = unit_inverse(Ls, Ls->embed(map_into(sv, Ls)), Errc::InvalidSpec, "s in R_s");
  const ElemGen g = gen(kind, n, i, j, map_into(av, Ls) * sinv * Ls->var(X));
  Mat Dl = D.map(Ls, [&](const RingElem& x) { return map_into(x, Ls); });
  Mat Dinv(Ls, n, n);
  for (std::size_t k = 0; k < n; ++k) Dinv(k, k) = unit_inverse(Ls, Dl(k, k), Errc::NotDiagonal, "diagonal entry");
  Mat lit = gen_matrix(g, Ls) * Dl * gen_matrix(g.inverse(), Ls) * Dinv;
  Mat closed = eval_word(map_word(out.word, [&](const RingElem& x) { return map_into(x, Ls); }), Ls, n);
  if (lit != closed) throw Error(Errc::CheckFailed, "closed form disagrees with the commutator");
  return out;
}

// ---------------------------------------------------------------------------
// Nil matrices

NilpotentPower nilpotent_power(const Mat& alpha) {
  if (!alpha.square()) throw Error(Errc::DimensionMismatch, "alpha must be square");
  Ctx R = alpha.ctx();
  const std::size_t r = alpha.rows();
  NilpotentPower out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      auto k = R->is_nilpotent(alpha(i, j));
      if (!k) throw Error(Errc::EntryNotNilpotent, "entry " + alpha(i, j).str() + " is not nilpotent");
      out.l = std::max(out.l, *k);
    }
  const unsigned long lr2 = static_cast<unsigned long>(out.l) * r * r;
  while ((1ul << out.m) <= lr2) ++out.m;
  out.bound = 1ul << out.m;
  Mat P = alpha;
  out.e = 1;
  while (!P.is_zero()) {
    if (out.e >= out.bound) throw Error(Errc::EntryNotNilpotent, "power bound exceeded");
    P = P * alpha;
    ++out.e;
  }
  Mat Q = alpha;
  for (unsigned k = 0; k < out.m; ++k) Q = Q * Q;
  if (!Q.is_zero()) throw Error(Errc::EntryNotNilpotent, "alpha^(2^m) is not zero");
  return out;
}

NilHomotopy nil_homotopy(const Mat& tau, FormKind kind, const std::string& X) {
  if (!tau.square()) throw Error(Errc::DimensionMismatch, "tau must be square");
  Ctx R = tau.ctx();
  const std::size_t n = tau.rows();
  const Mat gamma = tau - Mat::identity(R, n);
  NilHomotopy out;
  try {
    out.power = nilpotent_power(gamma);
  } catch (const Error& e) {
    if (e.code() != Errc::EntryNotNilpotent) throw;
    throw Error(Errc::NotUnipotentModNil, "tau - I has a non-nilpotent entry");
  }
  if (R->has_var(X)) throw Error(Errc::InvalidSpec, "variable '" + X + "' already in use");
  Ctx RX = ring_poly(R, {X});
  out.ctx = RX;
  const RingElem x = RX->var(X);
  out.theta = Mat::identity(RX, n) + gamma.map(RX, [&](const RingElem& a) { return RX->embed(a) * x; });
  if (!RX->is_unit(det(out.theta))) throw Error(Errc::NotUnipotentModNil, "det theta(X) is not a unit");
  if (kind != FormKind::Linear && !check_membership(out.theta, kind, false))
    throw Error(Errc::FormNotPreserved, "I + X gamma does not preserve the form");
  return out;
}

// ---------------------------------------------------------------------------
// Whitehead words and lifting

Word whitehead(FormKind kind, int n, int a, int b, const RingElem& u) {
  Ctx R = u.ctx();
  if (u.is_one()) return {};
  const RingElem ui = unit_inverse(R, u, Errc::NotInvertible, "Whitehead parameter");
  const RingElem one = R->one();
  Word w{make_gen(kind, n, b, a, ui), make_gen(kind, n, a, b, one - u), make_gen(kind, n, b, a, -one),
         make_gen(kind, n, a, b, one - ui)};
  Mat M = eval_word(w, R, static_cast<std::size_t>(n));
  if (!M.is_diagonal() || M(a - 1, a - 1) != u || M(b - 1, b - 1) != ui)
    throw Error(Errc::TemplateNotFound, "Whitehead template failed verification");
  return w;
}

namespace {

RingElem find_sqrt(Ctx R, const RingElem& w) {
  if (w.is_one()) return w;
  if (!R->is_finite()) throw Error(Errc::Undecidable, "square root search needs a finite ring");
  for (const auto& v : R->elements())
    if (v * v == w) return v;
  throw Error(Errc::NotInGroup, w.str() + " is not a square");
}

// Word for an admissible diagonal matrix.
Word diagonal_word(const Mat& D, FormKind kind) {
  Ctx R = D.ctx();
  const int n = static_cast<int>(D.rows());
  Word out;
  if (kind == FormKind::Linear) {
    RingElem u = R->one();
    for (int k = 1; k < n; ++k) {
      u *= D(k - 1, k - 1);
      out = concat(out, whitehead(kind, n, k, k + 1, u));
    }
  } else if (kind == FormKind::Symplectic) {
    for (int p = 1; p < n; p += 2) out = concat(out, whitehead(kind, n, p, p + 1, D(p - 1, p - 1)));
  } else {
    const int L = n / 2;
    RingElem u = R->one();
    for (int l = 1; l < L; ++l) {
      u *= D(2 * l - 2, 2 * l - 2);
      out = concat(out, whitehead(kind, n, 2 * l - 1, 2 * l + 1, u));
    }
    const RingElem w = u * D(n - 2, n - 2);
    if (!w.is_one()) {
      if (L < 2) throw Error(Errc::NotInGroup, "orthogonal diagonal needs two hyperbolic pairs");
      const RingElem v = find_sqrt(R, w);
      out = concat(out, whitehead(kind, n, n - 1, n - 3, v));
      out = concat(out, whitehead(kind, n, n - 1, n - 2, v));
    }
  }
  if (eval_word(out, R, D.rows()) != D) throw Error(Errc::NotInGroup, "diagonal matrix is not elementary");
  return out;
}

}  // namespace

Word lift_mod_nil(const Mat& alpha, const std::vector<RingElem>& ideal, const Word& word_bar, FormKind kind) {
  if (!alpha.square()) throw Error(Errc::DimensionMismatch, "alpha must be square");
  Ctx R = alpha.ctx();
  const std::size_t n = alpha.rows();
  std::vector<RingElem> gens;
  for (const auto& g : ideal) {
    RingElem x = R->embed(g);
    if (x.is_zero()) continue;
    if (!R->is_nilpotent(x)) throw Error(Errc::InvalidSpec, "ideal generator " + x.str() + " is not nilpotent");
    gens.push_back(x);
  }
  if (gens.empty()) {
    Word w = map_word(word_bar, [&](const RingElem& a) { return lift_elem(a, R); });
    if (eval_word(w, R, n) != alpha) throw Error(Errc::BadWord, "word does not evaluate to alpha");
    return word_bar;
  }

  Ctx Rb = nullptr;
  if (!word_bar.empty()) {
    Rb = word_bar[0].param.ctx();
  } else if (R->kind() == RingKind::Zmod) {
    mpz_class g = R->modulus_n();
    for (const auto& x : gens) g = gcd(g, x.int_value());
    Rb = ring_Zmod(g);
  } else {
    throw Error(Errc::InvalidSpec, "cannot infer R/I from an empty word");
  }
  for (const auto& x : gens)
    if (!map_into(x, Rb).is_zero()) throw Error(Errc::InvalidSpec, "word ring is not a quotient by I");
  Mat abar = alpha.map(Rb, [&](const RingElem& a) { return map_into(a, Rb); });
  if (eval_word(word_bar, Rb, n) != abar) throw Error(Errc::BadWord, "word does not evaluate to alpha mod I");

  Word lifted = map_word(word_bar, [&](const RingElem& a) { return lift_elem(a, R); });
  const Mat rho = eval_word(word_inverse(lifted), R, n) * alpha;
  if (!R->is_local()) throw Error(Errc::NotLocalRing, R->key() + " is not recognized as local");
  DiagReduction dr = diagonal_reduce(rho, gens, kind);
  Word out = concat(concat(lifted, diagonal_word(dr.D, kind)), word_inverse(dr.eps));
  if (eval_word(out, R, n) != alpha) throw Error(Errc::BadWord, "lifted word does not evaluate to alpha");
  return out;
}

}  // namespace lgt
