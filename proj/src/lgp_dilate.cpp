#include <algorithm>

#include "lgt/lgp.hpp"

namespace lgt {

namespace {

std::string fresh_var(Ctx c, const std::string& base) {
  std::string v = base;
  while (c->has_var(v)) v += "_";
  return v;
}

Ctx poly_over(Ctx base, std::vector<std::string> vars) { return ring_poly(base, std::move(vars)); }

Word map_word_into(const Word& w, Ctx target, const Assignment& as = {}) {
  return map_word(w, [&](const RingElem& a) { return hom_eval(a, target, as); });
}

// Parameter of a generator with sign folded in.
ElemGen folded(const ElemGen& g, const RingElem& v) { return ElemGen{g.kind, g.n, g.i, g.j, v, 1}; }

}  // namespace

Ctx localized_poly(Ctx poly, const RingElem& s) {
  if (poly->kind() != RingKind::Poly) throw Error(Errc::InvalidSpec, "expected a polynomial ring");
  Ctx A = poly->parent();
  return poly_over(ring_localize(A, MultSet{MultShape::Powers, A->embed(s)}), poly->vars());
}

nlohmann::json DilationResult::to_json() const {
  return {{"word", word_to_json(word)}, {"l", l}, {"b", b.ctx()->to_json(b)}, {"d", d}, {"r", r}, {"pivot_form", pivot_form}};
}

DilationResult dilate_in(const Word& w, std::size_t n, Ctx W, const std::string& V) {
  if (W->kind() != RingKind::Poly || W->parent()->kind() != RingKind::Localize ||
      W->parent()->multset().shape != MultShape::Powers)
    throw Error(Errc::InvalidSpec, "dilation expects a word over A_s[vars]");
  if (W->var_index(V) == std::string::npos) throw Error(Errc::VariableUnknown, "unknown variable '" + V + "'");
  Ctx As = W->parent();
  Ctx A = As->parent();
  const RingElem s = As->multset().s;
  try {
    if (A->is_nilpotent(s)) throw Error(Errc::NilpotentS, s.str() + " is nilpotent");
  } catch (const Error& e) {
    if (e.code() != Errc::Undecidable) throw;
  }
  Ctx G = poly_over(A, W->vars());

  Word w0;
  for (const auto& g : w) w0.push_back(folded(g, W->embed(g.value())));
  const RingElem zero = W->zero();
  Word at0 = map_word(w0, [&](const RingElem& a) { return substitute(a, V, zero); });
  if (!eval_word(at0, W, n).is_identity()) throw Error(Errc::NotBasedAtIdentity, "word is not the identity at " + V + " = 0");

  // w = prod_t gamma_t u_t gamma_t^-1 with gamma_t = c_1 ... c_t.
  struct Piece {
    Word gamma;
    ElemGen u;
  };
  std::vector<Piece> pieces;
  Word gamma;
  unsigned r = 0;
  for (std::size_t t = 0; t < w0.size(); ++t) {
    const RingElem c = at0[t].param;
    const RingElem u = w0[t].param - c;
    if (!c.is_zero()) gamma.push_back(folded(w0[t], c));
    if (!u.is_zero()) {
      pieces.push_back({gamma, folded(w0[t], u)});
      r = std::max<unsigned>(r, static_cast<unsigned>(gamma.size()));
    }
  }
  if (r > 12) throw Error(Errc::InvalidSpec, "word too long for dilation");

  DilationResult res;
  res.r = r;
  res.d = 1u << r;
  const unsigned E = 2 * res.d;
  const FormKind kind = w.empty() ? FormKind::Linear : w[0].kind;

  const std::string Tn = fresh_var(W, "T");
  std::vector<std::string> tv = W->vars();
  tv.push_back(Tn);
  Ctx WT = poly_over(As, tv);
  const RingElem T = WT->var(Tn);
  const RingElem TE = T.pow(E), T2 = T * T;
  const RingElem Vsub = WT->var(V) * TE;

  Word expanded;
  for (const auto& pc : pieces) {
    RingElem uT = hom_eval(pc.u.param, WT, {{V, Vsub}});
    auto Y = WT->exact_div(uT, TE);
    if (!Y) throw Error(Errc::CheckFailed, "dilated parameter is not divisible by T^E");
    const unsigned m = E >> pc.gamma.size();
    auto ce = conjugation_expand(kind, static_cast<int>(n), map_word_into(pc.gamma, WT), pc.u.i, pc.u.j, m, *Y, Tn);
    for (const auto& g : ce.output) {
      ElemGen h = normalize_to(g, 1);
      if (touches(h, 1)) {
        expanded.push_back(h);
        continue;
      }
      auto mu = WT->exact_div(h.value(), T2);
      if (!mu) throw Error(Errc::CheckFailed, "expanded parameter is not divisible by T^2");
      try {
        for (const auto& p : split_square(kind, static_cast<int>(n), h.i, h.j, *mu, T, 1)) expanded.push_back(p);
      } catch (const Error& e) {
        // Without 1/2 a short root stays unsplit; T^2 still clears its denominators.
        if (e.code() != Errc::TwoNotInvertible) throw;
        expanded.push_back(h);
        res.pivot_form = false;
      }
    }
  }

  // Largest s-denominator among the coefficients.
  long kmax = 0;
  for (const auto& g : expanded)
    for (const auto& t : g.param.terms()) kmax = std::max(kmax, t.coeff.loc_exponent());
  res.l = static_cast<unsigned>(std::max<long>(1, kmax));
  const RingElem sl = W->embed(As->embed(s).pow(res.l));
  res.b = s.pow(static_cast<std::uint64_t>(res.l) * E);
  res.ctx = G;
  for (const auto& g : expanded) {
    RingElem a = hom_eval(g.value(), W, {{Tn, sl}});
    if (a.is_zero()) continue;
    res.word.push_back(folded(g, map_into(a, G)));
  }

  // Exact check: the image in A_s[vars] is w with V -> b V.
  Mat lhs = eval_word(map_word_into(res.word, W), W, n);
  const RingElem bV = W->embed(res.b) * W->var(V);
  Mat rhs = eval_word(map_word(w0, [&](const RingElem& a) { return substitute(a, V, bV); }), W, n);
  if (lhs != rhs) throw Error(Errc::CheckFailed, "dilated word does not localize to the rescaled input");
  return res;
}

DilationResult dilate(const Word& w, std::size_t n, Ctx ctx, const std::string& X) { return dilate_in(w, n, ctx, X); }

namespace {

// w((Y + Z) X) w(Y X)^-1 over A_s[vars, Y, Z].
Word shift_word(const Word& w, Ctx W, Ctx W2, const std::string& X, const std::string& Y, const std::string& Z) {
  const RingElem x = W2->var(X), y = W2->var(Y), z = W2->var(Z);
  Word out;
  for (const auto& g : w) {
    RingElem a = hom_eval(W->embed(g.value()), W2, {{X, (y + z) * x}});
    if (!a.is_zero()) out.push_back(folded(g, a));
  }
  Word tail;
  for (const auto& g : w) {
    RingElem a = hom_eval(W->embed(g.value()), W2, {{X, y * x}});
    if (!a.is_zero()) tail.push_back(folded(g, a));
  }
  return concat(out, word_inverse(tail));
}

Ctx shift_ring(Ctx W, const std::string& Y, const std::string& Z) {
  std::vector<std::string> v = W->vars();
  v.push_back(Y);
  v.push_back(Z);
  return poly_over(W->parent(), v);
}

}  // namespace

DilationResult dilate_shift(const Word& w, std::size_t n, Ctx W, const std::string& X, const std::string& Y) {
  if (W->has_var(Y)) throw Error(Errc::InvalidSpec, "shift variable already in use");
  const std::string Z = fresh_var(W, "Z");
  Ctx W2 = shift_ring(W, Y, Z);
  DilationResult res = dilate_in(shift_word(w, W, W2, X, Y, Z), n, W2, Z);
  std::vector<std::string> v = W->vars();
  v.push_back(Y);
  Ctx G = poly_over(W->parent()->parent(), v);
  res.word = map_word_into(res.word, G, {{Z, G->one()}});
  res.ctx = G;
  return res;
}

// ---------------------------------------------------------------------------
// Comaximal covers

bool ComaximalCover::valid() const {
  if (s.empty() || s.size() != cert.size()) return false;
  Ctx A = s[0].ctx();
  RingElem sum = A->zero();
  for (std::size_t i = 0; i < s.size(); ++i) sum += A->embed(cert[i]) * A->embed(s[i]);
  return sum.is_one();
}

std::vector<RingElem> ComaximalCover::power_certificate(const std::vector<unsigned>& N) const {
  if (N.size() != s.size()) throw Error(Errc::DimensionMismatch, "one exponent per cover element");
  if (!valid()) throw Error(Errc::BadCertificate, "cover certificate does not sum to 1");
  Ctx A = s[0].ctx();
  const std::size_t k = s.size();
  unsigned K = 1;
  for (unsigned e : N) K += (e > 0 ? e - 1 : 0);
  // Powers of c_i s_i, and binomial rows for multinomial coefficients.
  std::vector<std::vector<RingElem>> cs(k), sp(k), cp(k);
  for (std::size_t i = 0; i < k; ++i) {
    RingElem ci = A->embed(cert[i]), si = A->embed(s[i]);
    cs[i] = {A->one()};
    sp[i] = {A->one()};
    cp[i] = {A->one()};
    for (unsigned e = 1; e <= K; ++e) {
      cs[i].push_back(cs[i].back() * ci * si);
      sp[i].push_back(sp[i].back() * si);
      cp[i].push_back(cp[i].back() * ci);
    }
  }
  std::vector<RingElem> out(k, A->zero());
  std::vector<unsigned> a(k, 0);
  // Enumerate compositions of K into k parts.
  std::function<void(std::size_t, unsigned, mpz_class)> rec = [&](std::size_t pos, unsigned left, mpz_class coef) {
    if (pos + 1 == k) {
      a[pos] = left;
      std::size_t owner = k;
      for (std::size_t i = 0; i < k; ++i)
        if (a[i] >= N[i]) {
          owner = i;
          break;
        }
      if (owner == k) throw Error(Errc::BadCertificate, "power certificate bookkeeping failed");
      RingElem term = A->from_int(coef);
      for (std::size_t i = 0; i < k; ++i)
        term *= (i == owner) ? cp[i][a[i]] * sp[i][a[i] - N[i]] : cs[i][a[i]];
      out[owner] += term;
      return;
    }
    mpz_class c = coef;
    for (unsigned e = 0; e <= left; ++e) {
      a[pos] = e;
      rec(pos + 1, left - e, c);
      // coef * C(left, e+1) / C(left, e) = (left - e) / (e + 1)
      c = c * (left - e) / (e + 1);
    }
  };
  rec(0, K, mpz_class(1));
  RingElem check = A->zero();
  for (std::size_t i = 0; i < k; ++i) check += out[i] * sp[i][N[i]];
  if (!check.is_one()) throw Error(Errc::BadCertificate, "power certificate does not sum to 1");
  return out;
}

nlohmann::json ComaximalCover::to_json() const {
  nlohmann::json js = nlohmann::json::array(), jc = nlohmann::json::array();
  for (const auto& x : s) js.push_back(x.ctx()->to_json(x));
  for (const auto& x : cert) jc.push_back(x.ctx()->to_json(x));
  return {{"s", js}, {"cert", jc}};
}

// ---------------------------------------------------------------------------
// Patching

Word patch(const Mat& sigma, FormKind kind, const ComaximalCover& cover, const std::vector<Word>& local_words) {
  Ctx G = sigma.ctx();
  if (G->kind() != RingKind::Poly || G->vars().size() != 1)
    throw Error(Errc::InvalidSpec, "patching expects sigma over A[X]");
  if (!cover.valid()) throw Error(Errc::BadCertificate, "cover certificate does not sum to 1");
  if (local_words.size() != cover.s.size()) throw Error(Errc::DimensionMismatch, "one local word per cover element");
  for (const auto& w : local_words)
    for (const auto& g : w)
      if (g.kind != kind || static_cast<std::size_t>(g.n) != sigma.rows())
        throw Error(Errc::BadLocalData, "local word has the wrong kind or size");
  const std::string X = G->vars()[0];
  Ctx A = G->parent();
  const std::size_t n = sigma.rows();
  {
    Mat at0 = sigma.map(G, [&](const RingElem& a) { return substitute(a, X, G->zero()); });
    if (!at0.is_identity()) throw Error(Errc::NotBasedAtIdentity, "sigma(0) is not the identity");
  }

  const std::size_t k = cover.s.size();
  std::vector<DilationResult> dil(k);
  std::vector<unsigned> N(k);
  const std::string Y = "Y", Z = "Z";
  for (std::size_t i = 0; i < k; ++i) {
    Ctx L = localized_poly(G, A->embed(cover.s[i]));
    Word wl = map_word(local_words[i], [&](const RingElem& a) { return map_into(a, L); });
    Mat sl = sigma.map(L, [&](const RingElem& a) { return map_into(a, L); });
    if (eval_word(wl, L, n) != sl)
      throw Error(Errc::BadLocalData, "local word " + std::to_string(i) + " does not match sigma at " + cover.s[i].str());
    Ctx L2 = shift_ring(L, Y, Z);
    dil[i] = dilate_in(shift_word(wl, L, L2, X, Y, Z), n, L2, Z);
    // b_i = s_i^(l E) with E = 2d.
    N[i] = dil[i].l * 2 * dil[i].d;
  }
  const auto cp = cover.power_certificate(N);

  Word out;
  RingElem a_prev = A->zero();
  std::vector<Word> factors(k);
  for (std::size_t i = 0; i < k; ++i) {
    // Z -> c'_i, Y -> a_(i-1): sigma(a_i X) sigma(a_(i-1) X)^-1.
    const Assignment as{{Z, G->embed(cp[i])}, {Y, G->embed(a_prev)}};
    factors[i] = map_word(dil[i].word, [&](const RingElem& p) { return hom_eval(p, G, as); });
    a_prev += cp[i] * A->embed(cover.s[i]).pow(N[i]);
  }
  for (std::size_t i = k; i-- > 0;) out = concat(out, factors[i]);
  if (eval_word(out, G, n) != sigma) throw Error(Errc::CheckFailed, "telescoped word does not reproduce sigma");
  return out;
}

}  // namespace lgt
