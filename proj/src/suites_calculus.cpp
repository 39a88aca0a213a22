#include <cmath>

#include "suite_harness.hpp"

namespace lgt::suites {

namespace {

using nlohmann::json;

// Opposite-root steps need a spare index (linear) or a spare pair, hence the
// lower bounds 3 and 6 wherever expansions run.
int rand_size(Run& run, FormKind kind, int lo_lin, int lo_nl, int hi) {
  hi = std::max(run.cap(hi), kind == FormKind::Linear ? lo_lin : lo_nl);
  if (kind == FormKind::Linear) return static_cast<int>(run.rng.range(lo_lin, std::max(lo_lin, hi)));
  return 2 * static_cast<int>(run.rng.range(lo_nl / 2, std::max(lo_nl / 2, hi / 2)));
}

// Symplectic splitting needs 1/2, so symplectic cases run over Z[1/2].
Ctx base_for(FormKind kind) { return kind == FormKind::Symplectic ? loc_powers(ring_Z(), 2) : ring_Z(); }

bool divisible_by(const RingElem& a, const RingElem& x) { return a.ctx()->exact_div(a, x).has_value(); }

void split_square_suite(Run& run) {
  const int total = run.count(100);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = pick_kind(run.rng);
      const int n = rand_size(run, kind, 3, 6, 6);
      Ctx W = ring_poly(base_for(kind), {"T", "M"});
      int i, j;
      do {
        std::tie(i, j) = random_indices(kind, n, run.rng);
      } while (i == 1 || j == 1 || (kind != FormKind::Linear && (i == 2 || j == 2)));
      const RingElem T = W->var("T");
      const RingElem mu = W->var("M") * W->embed(random_nonzero(W->parent(), run.rng));
      ce = {{"kind", form_name(kind)}, {"n", n}, {"i", i}, {"j", j}, {"mu", enc(mu)}};
      Word w = split_square(kind, n, i, j, mu, T, 1);
      ce["word"] = word_to_json(w);
      bool ok = eval_word(w, W, static_cast<std::size_t>(n)) == elem_gen(kind, n, i, j, T * T * mu);
      for (const auto& g : w) ok = ok && touches(normalize_to(g, 1), 1) && divisible_by(g.param, T);
      return ok;
    });
}

struct ExpandCase {
  FormKind kind;
  int n;
  Word eps;
  int p, q;
  unsigned m;
  Ctx W;
};

ExpandCase random_expand_case(Run& run, unsigned max_r) {
  ExpandCase c;
  c.kind = pick_kind(run.rng);
  c.n = rand_size(run, c.kind, 3, 6, 6);
  Ctx A = base_for(c.kind);
  c.W = ring_poly(A, {"X", "Y"});
  c.eps = random_word(c.kind, c.n, A, static_cast<std::size_t>(run.rng.range(0, max_r)), run.rng, 2);
  std::tie(c.p, c.q) = random_indices(c.kind, c.n, run.rng);
  c.m = static_cast<unsigned>(run.rng.range(1, 2));
  return c;
}

void conjugation_expansion(Run& run) {
  const int total = run.count(100);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      ExpandCase c = random_expand_case(run, 3);
      const RingElem X = c.W->var("X"), Y = c.W->var("Y");
      ce = {{"kind", form_name(c.kind)}, {"n", c.n}, {"eps", word_to_json(c.eps)}, {"p", c.p}, {"q", c.q}, {"m", c.m}};
      auto res = conjugation_expand(c.kind, c.n, c.eps, c.p, c.q, c.m, Y, "X");
      const auto N = static_cast<std::size_t>(c.n);
      Word epsW = map_word(c.eps, [&](const RingElem& a) { return c.W->embed(a); });
      const RingElem D = X.pow(static_cast<std::uint64_t>(c.m) << c.eps.size());
      Mat want = eval_word(epsW, c.W, N) * elem_gen(c.kind, c.n, c.p, c.q, D * Y) * eval_word(word_inverse(epsW), c.W, N);
      bool ok = eval_word(res.output, c.W, N) == want;
      const RingElem Xm = X.pow(c.m);
      for (const auto& g : res.output) ok = ok && divisible_by(g.param, Xm);
      Word at0 = map_word(res.output, [&](const RingElem& a) { return substitute(a, "X", c.W->zero()); });
      ok = ok && eval_word(at0, c.W, N).is_identity();
      ce["length"] = res.output.size();
      return ok;
    });
}

void conjugation_length(Run& run) {
  const int total = run.count(60);
  double worst = 0;
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      ExpandCase c = random_expand_case(run, 4);
      ce = {{"kind", form_name(c.kind)}, {"n", c.n}, {"eps", word_to_json(c.eps)}, {"p", c.p}, {"q", c.q}};
      auto res = conjugation_expand(c.kind, c.n, c.eps, c.p, c.q, c.m, c.W->var("Y"), "X");
      const double ratio = static_cast<double>(res.output.size()) / std::pow(4.0, static_cast<double>(c.eps.size()));
      worst = std::max(worst, ratio);
      ce["length"] = res.output.size();
      return ratio <= kConjugationLengthConstant;
    });
  run.log.push_back({{"worst_ratio", worst}});
}

// ---------------------------------------------------------------------------

struct LocalSetup {
  Ctx G;  // A[X]
  Ctx W;  // A_s[X]
  RingElem s;
};

LocalSetup random_local_setup(Run& run, FormKind kind) {
  Ctx Z = ring_Z();
  Ctx Qy = ring_poly(ring_Q(), {"y"});
  for (;;) {
    const long pick = run.rng.range(0, 2);
    // Without 1/2 in A_s the symplectic short roots cannot be split.
    if (kind == FormKind::Symplectic && pick == 1) continue;
    Ctx A = pick == 2 ? Qy : Z;
    RingElem s = pick == 2 ? Qy->var("y") : Z->from_int(pick == 0 ? 2 : 3);
    Ctx G = ring_poly(A, {"X"});
    return {G, localized_poly(G, s), s};
  }
}

bool denominator_free(const Word& w, Ctx G) {
  for (const auto& g : w)
    if (g.param.ctx() != G) return false;
  return true;
}

void dilation_soundness(Run& run) {
  const int total = run.count(50);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = pick_kind(run.rng);
      const int n = rand_size(run, kind, 3, 6, 6);
      LocalSetup L = random_local_setup(run, kind);
      Word w = random_based_word(kind, n, L.W, "X", static_cast<std::size_t>(run.rng.range(1, run.cap(5))), run.rng);
      ce = {{"ring", L.W->spec()}, {"word", word_to_json(w)}};
      DilationResult d = dilate(w, static_cast<std::size_t>(n), L.W, "X");
      ce["l"] = d.l;
      ce["length"] = d.word.size();
      const auto N = static_cast<std::size_t>(n);
      Word back = map_word(d.word, [&](const RingElem& a) { return map_into(a, L.W); });
      const RingElem bX = L.W->embed(d.b) * L.W->var("X");
      Word scaled = map_word(w, [&](const RingElem& a) { return substitute(a, "X", bX); });
      Ctx A = L.G->parent();
      Word at0 = map_word(d.word, [&](const RingElem& a) { return substitute(a, "X", L.G->zero()); });
      return d.ctx == L.G && denominator_free(d.word, L.G) && eval_word(back, L.W, N) == eval_word(scaled, L.W, N) &&
             A->in_ideal(d.b, A->embed(L.s).pow(d.l)) && eval_word(at0, L.G, N).is_identity();
    });
}

void patch_soundness(Run& run) {
  const int total = run.count(25);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = pick_kind(run.rng);
      const int n = rand_size(run, kind, 3, 6, 6);
      Ctx A = base_for(kind);
      Ctx G = ring_poly(A, {"X"});
      ComaximalCover cover{{A->from_int(2), A->from_int(3)}, {A->from_int(-1), A->one()}};
      Word g = random_based_word(kind, n, G, "X", static_cast<std::size_t>(run.rng.range(1, run.cap(3))), run.rng);
      const auto N = static_cast<std::size_t>(n);
      Mat sigma = eval_word(g, G, N);
      ce = {{"ring", G->spec()}, {"word", word_to_json(g)}};
      std::vector<Word> local;
      for (const auto& s : cover.s) {
        Ctx L = localized_poly(G, s);
        Word wl = map_word(g, [&](const RingElem& a) { return map_into(a, L); });
        // Insert h h^-1 with a genuine denominator.
        ElemGen h = random_gen(kind, n, L->parent(), run.rng, 2);
        h.param = L->embed(h.param * *L->parent()->is_unit(L->parent()->embed(s)));
        const auto at = static_cast<std::ptrdiff_t>(run.rng.range(0, static_cast<long>(wl.size())));
        wl.insert(wl.begin() + at, {h, h.inverse()});
        local.push_back(wl);
      }
      Word out = patch(sigma, kind, cover, local);
      ce["length"] = out.size();
      return denominator_free(out, G) && eval_word(out, G, N) == sigma;
    });
}

// ---------------------------------------------------------------------------

Mat admissible_diagonal(FormKind kind, int n, Ctx R, Rng& rng, const RingElem& ideal_gen) {
  const auto N = static_cast<std::size_t>(n);
  Mat D = Mat::identity(R, N);
  auto unit = [&]() {
    for (;;) {
      // beta has to stay congruent to the identity.
      RingElem u = R->one() + ideal_gen * random_elem(R, rng, 30);
      if (R->is_unit(u)) return u;
    }
  };
  if (kind == FormKind::Linear) {
    RingElem prod = R->one();
    for (std::size_t k = 0; k + 1 < N; ++k) {
      D(k, k) = unit();
      prod *= D(k, k);
    }
    D(N - 1, N - 1) = *R->is_unit(prod);
  } else {
    for (std::size_t k = 0; k < N; k += 2) {
      D(k, k) = unit();
      D(k + 1, k + 1) = *R->is_unit(D(k, k));
    }
  }
  return D;
}

void diagonal_reduction(Run& run) {
  const int total = run.count(50);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const bool nine = run.rng.coin();
      Ctx R = ring_Zmod(nine ? 9 : 25);
      const RingElem p = R->from_int(nine ? 3 : 5);
      const FormKind kind = pick_kind(run.rng);
      const int n = kind == FormKind::Linear ? static_cast<int>(run.rng.range(3, std::max(3, run.cap(5)))) : 6;
      const auto N = static_cast<std::size_t>(n);
      Word noise = map_word(random_word(kind, n, R, static_cast<std::size_t>(run.rng.range(0, 5)), run.rng),
                            [&](const RingElem& a) { return a * p; });
      Mat beta = eval_word(noise, R, N) * admissible_diagonal(kind, n, R, run.rng, p);
      ce = {{"ring", R->spec()}, {"kind", form_name(kind)}, {"beta", beta.to_json()}};
      DiagReduction dr = diagonal_reduce(beta, {p}, kind);
      bool ok = beta * eval_word(dr.eps, R, N) == dr.D && dr.D.is_diagonal();
      for (const auto& g : dr.eps) ok = ok && R->in_ideal(g.param, p);
      for (std::size_t i = 0; i < N; ++i) {
        ok = ok && R->is_unit(dr.D(i, i)).has_value();
        if (kind != FormKind::Linear) {
          const auto si = static_cast<std::size_t>(sigma_index(static_cast<int>(i + 1)) - 1);
          ok = ok && (dr.D(si, si) * dr.D(i, i).conj()).is_one();
        }
      }
      return ok;
    });
}

void congruence_commutator_suite(Run& run) {
  const int total = run.count(100);
  static const long primes[] = {2, 3, 5};
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      Ctx Z = ring_Z();
      const long sv = primes[run.rng.range(0, 2)];
      Ctx R = ring_localize(Z, MultSet{MultShape::OnePlus, Z->from_int(sv)});
      const RingElem s = R->from_int(sv);
      const unsigned l = static_cast<unsigned>(run.rng.range(2, 4));
      const FormKind kind = pick_kind(run.rng);
      const int n = rand_size(run, kind, 2, 4, 4);
      const auto N = static_cast<std::size_t>(n);
      const RingElem sl = s.pow(l);
      Mat D = Mat::identity(R, N);
      for (std::size_t i = 0; i < N; ++i) {
        if (kind != FormKind::Linear && i % 2 == 1) {
          D(i, i) = *R->is_unit(D(i - 1, i - 1));
          continue;
        }
        D(i, i) = R->one() + sl * R->from_int(run.rng.range(-4, 4));
      }
      auto [i, j] = random_indices(kind, n, run.rng);
      const RingElem a = R->from_int(run.rng.range(-5, 5));
      ce = {{"s", sv}, {"l", l}, {"kind", form_name(kind)}, {"i", i}, {"j", j}, {"a", enc(a)}, {"D", D.to_json()}};
      CongruenceCommutator cc = congruence_commutator(kind, i, j, a, s, D, l, "X");
      // Literal commutator over R_s[X].
      Ctx Ls = localized_poly(cc.ctx, s);
      const RingElem X = Ls->var("X");
      const RingElem aX = Ls->embed(map_into(a, Ls)) * *Ls->is_unit(map_into(s, Ls)) * X;
      Mat Dl = D.map(Ls, [&](const RingElem& x) { return map_into(x, Ls); });
      Mat lit = commutator(elem_gen(kind, n, i, j, aX), Dl);
      Mat closed = eval_word(map_word(cc.word, [&](const RingElem& x) { return map_into(x, Ls); }), Ls, N);
      bool ok = lit == closed;
      for (const auto& g : cc.word) ok = ok && cc.ctx->exact_div(g.param, cc.ctx->embed(s).pow(cc.level)).has_value();
      return ok;
    });
}

void nilpotent_power_suite(Run& run) {
  Ctx R = ring_Zmod(8);
  const long nil[] = {0, 2, 4, 6};
  for (int code = 0; code < 256; ++code)
    run.check([&](json& ce) {
      Mat a(R, 2, 2);
      for (std::size_t e = 0; e < 4; ++e) a(e / 2, e % 2) = R->from_int(nil[(code >> (2 * e)) & 3]);
      ce = {{"alpha", a.to_json()}};
      NilpotentPower np = nilpotent_power(a);
      ce["e"] = np.e;
      Mat pw = Mat::identity(R, 2);
      for (unsigned t = 0; t + 1 < np.e; ++t) pw = pw * a;
      const bool minimal = np.e == 0 ? a.is_zero() : !pw.is_zero();
      const unsigned long two_m = 1ul << np.m;
      return (pw * a).is_zero() && minimal && np.e <= two_m && two_m > static_cast<unsigned long>(np.l) * 4;
    });
}

void nil_homotopy_suite(Run& run) {
  const int total = run.count(60);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const bool eight = run.rng.coin();
      Ctx R = eight ? ring_Zmod(8) : ring_Zmod(27);
      const RingElem p = R->from_int(eight ? 2 : 3);
      const FormKind kind = pick_kind(run.rng);
      const int n = rand_size(run, kind, 2, 4, 4);
      const auto N = static_cast<std::size_t>(n);
      Mat tau = Mat::identity(R, N);
      if (kind == FormKind::Linear) {
        for (std::size_t r = 0; r < N; ++r)
          for (std::size_t c = 0; c < N; ++c) tau(r, c) += p * random_elem(R, run.rng);
      } else {
        ElemGen g = random_gen(kind, n, R, run.rng);
        tau = elem_gen(kind, n, g.i, g.j, g.param * p);
      }
      ce = {{"ring", R->spec()}, {"kind", form_name(kind)}, {"tau", tau.to_json()}};
      NilHomotopy h = nil_homotopy(tau, kind, "X");
      auto at = [&](const RingElem& v) {
        return h.theta.map(R, [&](const RingElem& x) { return hom_eval(x, R, {{"X", v}}); });
      };
      return at(R->zero()).is_identity() && at(R->one()) == tau && h.ctx->is_unit(det(h.theta)).has_value();
    });
}

// ---------------------------------------------------------------------------

void report_reproducible(Run& run) {
  const std::vector<json> scenarios{
      {{"ring", {{"kind", "Z"}}}, {"task", "commutator"},
       {"params", {{"kind", "linear"}, {"n", 3}, {"i", 1}, {"k", 2}, {"j", 3}, {"x", "2"}, {"y", "5"}}}},
      {{"ring", {{"kind", "Zmod"}, {"n", "12"}}}, {"task", "stable-range"}, {"params", {{"m", 1}}}},
      {{"ring", {{"kind", "Q"}}}, {"task", "elem-gen"},
       {"params", {{"kind", "symplectic"}, {"n", 4}, {"i", 1}, {"j", 3}, {"param", "1/2"}}}},
  };
  for (const auto& sc : scenarios)
    run.check([&](json& ce) {
      ce = sc;
      return run_scenario(sc).to_json().dump() == run_scenario(sc).to_json().dump();
    });
  for (const char* name : {"standard-form", "nilpotent-power"})
    run.check([&](json& ce) {
      ce = {{"suite", name}};
      SuiteOptions o;
      o.seed = run.opt.seed;
      return run_suite(name, o).to_json().dump() == run_suite(name, o).to_json().dump();
    });
}

}  // namespace

std::vector<Entry> calculus_suites() {
  return {
      {"split-square", split_square_suite},
      {"conjugation-expansion", conjugation_expansion},
      {"conjugation-length", conjugation_length},
      {"dilation-soundness", dilation_soundness},
      {"patch-soundness", patch_soundness},
      {"diagonal-reduction", diagonal_reduction},
      {"congruence-commutator", congruence_commutator_suite},
      {"nilpotent-power", nilpotent_power_suite},
      {"nil-homotopy", nil_homotopy_suite},
      {"report-reproducible", report_reproducible},
  };
}

}  // namespace lgt::suites
