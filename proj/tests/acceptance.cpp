// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <tuple>

#include "lgt/lgp.hpp"
#include "lgt/random.hpp"
#include "oracle.hpp"

using namespace lgt;

namespace {

constexpr FormKind kKinds[] = {FormKind::Linear, FormKind::Symplectic, FormKind::Orthogonal};

struct Tally {
  long cases = 0;
  long failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  // Runs f, counting an exception as a failure.
  void run(const std::string& what, const std::function<bool()>& f) {
    bool ok = false;
    std::string why = what;
    try {
      ok = f();
    } catch (const std::exception& e) {
      why += ": " + std::string(e.what());
    }
    check(ok, why);
  }
};

bool valid_pair(FormKind kind, int i, int j) {
  if (i == j) return false;
  return kind != FormKind::Orthogonal || j != sigma_index(i);
}

bool admissible(FormKind kind, int i, int k, int j) {
  if (i == k || k == j || i == j) return false;
  if (kind == FormKind::Linear) return true;
  if (k == sigma_index(i) || k == sigma_index(j)) return false;
  return kind == FormKind::Symplectic || j != sigma_index(i);
}

FormKind kind_at(int k) { return kKinds[k % 3]; }

std::string tag(FormKind kind, int n) { return std::string(form_name(kind)) + " n=" + std::to_string(n); }

// ---------------------------------------------------------------------------

Tally generator_soundness() {
  Tally t;
  Rng rng(101);
  const std::vector<Ctx> rings{ring_Q(), ring_Zmod(25), ring_poly(ring_Zmod(9), {"x"})};
  for (FormKind kind : kKinds)
    for (int n : {3, 4, 6, 8}) {
      if (kind != FormKind::Linear && n % 2 != 0) continue;
      const auto N = static_cast<std::size_t>(n);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (!valid_pair(kind, i, j)) continue;
          for (Ctx R : rings)
            for (int k = 0; k < 50; ++k) {
              const RingElem a = random_elem(R, rng);
              t.run(tag(kind, n) + " (" + std::to_string(i) + "," + std::to_string(j) + ") a=" + a.str(), [&] {
                const Mat g = elem_gen(kind, n, i, j, a);
                return check_membership(g, kind) && det(g).is_one() &&
                       (g * elem_gen(kind, n, i, j, -a)) == Mat::identity(R, N);
              });
            }
        }
    }
  return t;
}

Tally commutator_relation_check() {
  Tally t;
  Ctx R = ring_poly(ring_Z(), {"x", "y"});
  const RingElem x = R->var("x"), y = R->var("y");
  // The same pattern with other parameters must give the same constant.
  const std::vector<std::pair<RingElem, RingElem>> params{
      {x, y}, {x * x + R->one(), y * R->from_int(3)}, {x * y, x - y}, {R->from_int(2), R->from_int(-5)}};
  for (FormKind kind : kKinds)
    for (int n = kind == FormKind::Linear ? 3 : 4; n <= 6; n += kind == FormKind::Linear ? 1 : 2)
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
          for (int j = 1; j <= n; ++j) {
            if (!admissible(kind, i, k, j)) continue;
            t.run(tag(kind, n) + " (" + std::to_string(i) + "," + std::to_string(k) + "," + std::to_string(j) + ")", [&] {
              auto rel = commutator_relation(kind, n, i, k, j, x, y);
              if (!rel.single || rel.z == 0) return false;
              for (const auto& [a, b] : params) {
                const Mat c = commutator(elem_gen(kind, n, i, k, a), elem_gen(kind, n, k, j, b));
                // Independent reading of z from the (i, j) entry.
                const Mat unit = elem_gen(kind, n, i, j, a * b);
                auto q = R->exact_div(c(i - 1, j - 1), unit(i - 1, j - 1));
                if (!q || *q != R->from_int(rel.z)) return false;
                if (c != elem_gen(kind, n, i, j, R->from_int(rel.z) * a * b)) return false;
              }
              return true;
            });
          }
  return t;
}

Tally conjugation_expansion_check() {
  Tally t;
  Rng rng(303);
  // Symplectic short roots cannot be split without 1/2, so that kind runs
  // over Z[1/2]; the other two run over Z itself.
  Ctx Zh = ring_localize(ring_Z(), MultSet{MultShape::Powers, ring_Z()->from_int(2)});
  for (int k = 0; k < 100; ++k) {
    const FormKind kind = kind_at(k);
    Ctx Z = kind == FormKind::Symplectic ? Zh : ring_Z();
    Ctx W = ring_poly(Z, {"X", "Y"});
    const RingElem X = W->var("X"), Y = W->var("Y");
    const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(3, 6)) : 6;
    const auto N = static_cast<std::size_t>(n);
    const std::size_t r = static_cast<std::size_t>(rng.range(0, 3));
    const Word eps = random_word(kind, n, Z, r, rng, 3);
    auto [p, q] = random_indices(kind, n, rng);
    const unsigned m = static_cast<unsigned>(rng.range(1, 2));
    t.run(Z->key() + " " + tag(kind, n) + " eps=" + word_to_json(eps).dump(), [&] {
      auto res = conjugation_expand(kind, n, eps, p, q, m, Y, "X");
      const Word epsW = map_word(eps, [&](const RingElem& a) { return W->embed(a); });
      const RingElem D = X.pow(static_cast<std::uint64_t>(m) << r);
      const Mat want = eval_word(epsW, W, N) * elem_gen(kind, n, p, q, D * Y) * eval_word(word_inverse(epsW), W, N);
      if (eval_word(res.output, W, N) != want) return false;
      for (const auto& g : res.output)
        if (!W->exact_div(W->embed(g.param), X.pow(m))) return false;
      const Word at0 = map_word(res.output, [&](const RingElem& a) { return substitute(W->embed(a), "X", W->zero()); });
      return eval_word(at0, W, N).is_identity();
    });
  }
  return t;
}

Tally dilation_check() {
  Tally t;
  Rng rng(404);
  Ctx Z = ring_Z(), Qy = ring_poly(ring_Q(), {"y"});
  const std::vector<std::pair<Ctx, RingElem>> bases{{Z, Z->from_int(2)}, {Z, Z->from_int(3)}, {Qy, Qy->var("y")}};
  for (const auto& [A, s] : bases) {
    Ctx G = ring_poly(A, {"X"});
    Ctx W = localized_poly(G, s);
    for (int k = 0; k < 50; ++k) {
      const FormKind kind = kind_at(k);
      const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(3, 6)) : 6;
      const auto N = static_cast<std::size_t>(n);
      const Word w = random_based_word(kind, n, W, "X", static_cast<std::size_t>(rng.range(1, 5)), rng);
      t.run(W->key() + " " + tag(kind, n) + " w=" + word_to_json(w).dump(), [&] {
        DilationResult d = dilate(w, N, W, "X");
        if (d.ctx != G) return false;
        for (const auto& g : d.word)
          if (g.param.ctx() != G) return false;
        const Word back = map_word(d.word, [&](const RingElem& a) { return map_into(a, W); });
        const RingElem bX = W->embed(d.b) * W->var("X");
        const Word scaled = map_word(w, [&](const RingElem& a) { return substitute(a, "X", bX); });
        return A->in_ideal(d.b, s.pow(d.l)) && eval_word(back, W, N) == eval_word(scaled, W, N);
      });
    }
  }
  return t;
}

Tally patching_check() {
  Tally t;
  Rng rng(505);
  Ctx Z = ring_Z();
  Ctx G = ring_poly(Z, {"X"});
  ComaximalCover cover{{Z->from_int(2), Z->from_int(3)}, {Z->from_int(-1), Z->one()}};
  for (int k = 0; k < 25; ++k) {
    const FormKind kind = kind_at(k);
    const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(3, 5)) : 6;
    const auto N = static_cast<std::size_t>(n);
    const Word g = random_based_word(kind, n, G, "X", static_cast<std::size_t>(rng.range(1, 3)), rng);
    const Mat sigma = eval_word(g, G, N);
    std::vector<Word> local;
    for (const auto& s : cover.s) {
      Ctx L = localized_poly(G, s);
      Word wl = map_word(g, [&](const RingElem& a) { return map_into(a, L); });
      // A cancelling pair with a real denominator keeps the local data honest.
      ElemGen h = random_gen(kind, n, L->parent(), rng, 2);
      h.param = L->embed(h.param * *L->parent()->is_unit(L->parent()->embed(s)));
      wl.insert(wl.begin(), {h, h.inverse()});
      local.push_back(wl);
    }
    t.run(tag(kind, n) + " sigma=" + word_to_json(g).dump(), [&] {
      if (!sigma.map(G, [&](const RingElem& a) { return substitute(a, "X", G->zero()); }).is_identity()) return false;
      Word out = patch(sigma, kind, cover, local);
      for (const auto& e : out)
        if (e.param.ctx() != G) return false;
      return eval_word(out, G, N) == sigma;
    });
  }
  return t;
}

Mat admissible_diagonal(FormKind kind, std::size_t N, Ctx R, Rng& rng, const RingElem& p) {
  Mat D = Mat::identity(R, N);
  auto unit = [&] { return R->one() + p * R->from_int(rng.range(0, 30)); };
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

Tally diagonal_reduction_check() {
  Tally t;
  Rng rng(606);
  for (int k = 0; k < 50; ++k) {
    const bool nine = k % 2 == 0;
    Ctx R = ring_Zmod(nine ? 9 : 25);
    const RingElem p = R->from_int(nine ? 3 : 5);
    const FormKind kind = kind_at(k / 2);
    const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(3, 5)) : 6;
    const auto N = static_cast<std::size_t>(n);
    const Word noise = map_word(random_word(kind, n, R, static_cast<std::size_t>(rng.range(1, 5)), rng),
                                [&](const RingElem& a) { return a * p; });
    const Mat beta = eval_word(noise, R, N) * admissible_diagonal(kind, N, R, rng, p);
    t.run(R->key() + " " + tag(kind, n) + " beta=" + beta.to_json().dump(), [&] {
      DiagReduction dr = diagonal_reduce(beta, {p}, kind);
      if (beta * eval_word(dr.eps, R, N) != dr.D || !dr.D.is_diagonal()) return false;
      for (const auto& g : dr.eps)
        if (!R->in_ideal(g.param, p)) return false;
      // Each factor is I modulo the maximal ideal, read off entrywise.
      for (const auto& g : dr.eps) {
        const Mat m = gen_matrix(g, R) - Mat::identity(R, N);
        for (std::size_t a = 0; a < N; ++a)
          for (std::size_t b = 0; b < N; ++b)
            if (m(a, b).int_value() % (nine ? 3 : 5) != 0) return false;
      }
      for (std::size_t i = 0; i < N; ++i) {
        if (!R->is_unit(dr.D(i, i))) return false;
        if (kind != FormKind::Linear) {
          const auto si = static_cast<std::size_t>(sigma_index(static_cast<int>(i + 1)) - 1);
          if (!(dr.D(si, si) * dr.D(i, i).conj()).is_one()) return false;
        }
      }
      return true;
    });
  }
  return t;
}

Tally congruence_check() {
  Tally t;
  Rng rng(707);
  Ctx Z = ring_Z();
  static const long primes[] = {2, 3, 5};
  for (int k = 0; k < 100; ++k) {
    const long sv = primes[k % 3];
    Ctx R = ring_localize(Z, MultSet{MultShape::OnePlus, Z->from_int(sv)});
    const RingElem s = R->from_int(sv);
    const unsigned l = static_cast<unsigned>(rng.range(2, 4));
    const FormKind kind = kind_at(k / 3);
    const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(2, 4)) : 4;
    const auto N = static_cast<std::size_t>(n);
    Mat D = Mat::identity(R, N);
    for (std::size_t i = 0; i < N; ++i)
      D(i, i) = kind != FormKind::Linear && i % 2 == 1 ? *R->is_unit(D(i - 1, i - 1))
                                                        : R->one() + s.pow(l) * R->from_int(rng.range(-4, 4));
    auto [i, j] = random_indices(kind, n, rng);
    const RingElem a = R->from_int(rng.range(-5, 5));
    t.run("s=" + std::to_string(sv) + " l=" + std::to_string(l) + " " + tag(kind, n) + " D=" + D.to_json().dump(), [&] {
      CongruenceCommutator cc = congruence_commutator(kind, i, j, a, s, D, l, "X");
      Ctx Ls = localized_poly(cc.ctx, s);
      const RingElem aX = Ls->embed(map_into(a, Ls)) * *Ls->is_unit(map_into(s, Ls)) * Ls->var("X");
      const Mat Dl = D.map(Ls, [&](const RingElem& x) { return map_into(x, Ls); });
      const Mat g = elem_gen(kind, n, i, j, aX);
      const Mat literal = g * Dl * inverse(g) * inverse(Dl);
      for (const auto& e : cc.word)
        if (e.param.ctx() != cc.ctx) return false;
      return literal == eval_word(map_word(cc.word, [&](const RingElem& x) { return map_into(x, Ls); }), Ls, N);
    });
  }
  return t;
}

Tally nilpotent_power_check() {
  Tally t;
  Ctx R = ring_Zmod(8);
  const long nil[] = {0, 2, 4, 6};
  for (int code = 0; code < 256; ++code) {
    oracle::IMat a(2, std::vector<long long>(2));
    Mat m(R, 2, 2);
    for (std::size_t e = 0; e < 4; ++e) {
      a[e / 2][e % 2] = nil[(code >> (2 * e)) & 3];
      m(e / 2, e % 2) = R->from_int(a[e / 2][e % 2]);
    }
    t.run("alpha=" + m.to_json().dump(), [&] {
      NilpotentPower np = nilpotent_power(m);
      oracle::IMat pw = a;
      for (unsigned k = 1; k < np.e; ++k) pw = oracle::mul(pw, a);
      bool zero = true;
      for (const auto& row : pw)
        for (long long v : row) zero = zero && ((v % 8) + 8) % 8 == 0;
      const unsigned long two_m = 1ul << np.m;
      return zero && np.e <= two_m && two_m > static_cast<unsigned long>(np.l) * 4;
    });
  }
  return t;
}

Tally transvection_check() {
  Tally t;
  Rng rng(909);
  Ctx Z = ring_Z();
  for (int k = 0; k < 200; ++k) {
    const FormKind kind = k % 2 == 0 ? FormKind::Symplectic : FormKind::Orthogonal;
    const int n = 2 * static_cast<int>(rng.range(2, 4));
    const auto N = static_cast<std::size_t>(n);
    t.run(tag(kind, n), [&] {
      Transvection tv = random_transvection(kind, n, Z, rng);
      const oracle::IMat m = oracle::from(transvection_matrix(tv, Z));
      const oracle::IMat mi = oracle::from(transvection_matrix(invert(tv), Z));
      if (!oracle::preserves(m, kind == FormKind::Symplectic)) return false;
      if (oracle::mul(m, mi) != oracle::id(N)) return false;
      Vec p;
      for (std::size_t c = 0; c < N; ++c) p.push_back(Z->from_int(rng.range(-6, 6)));
      return apply_transvection(invert(tv), apply_transvection(tv, p)) == p;
    });
  }
  return t;
}

Tally stable_range_check() {
  Tally t;
  for (long q : {2, 3, 5, 7, 12})
    t.run("Z/" + std::to_string(q), [&] { return stable_range_holds(ring_Zmod(q), 1); });
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 = none
    Tally (*fn)();
    const char* note = nullptr;
  };
  const Criterion all[] = {
      {1, "generator soundness", 10, generator_soundness},
      {2, "commutator relation", 0, commutator_relation_check},
      {3, "conjugation expansion", 30, conjugation_expansion_check, "linear/orthogonal over Z, symplectic over Z[1/2]"},
      {4, "dilation", 30, dilation_check},
      {5, "patching", 0, patching_check},
      {6, "diagonal reduction", 0, diagonal_reduction_check},
      {7, "congruence commutator", 0, congruence_check},
      {8, "nilpotent power", 5, nilpotent_power_check},
      {9, "transvection geometry", 0, transvection_check},
      {10, "stable range", 5, stable_range_check},
  };
  int failed = 0;
  double total = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Tally t = c.fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    const bool ok = t.failures == 0 && t.cases > 0 && (c.budget == 0 || secs < c.budget);
    failed += !ok;
    std::printf("%s  %2d %-24s cases=%ld failures=%ld time=%.2fs%s\n", ok ? "PASS" : "FAIL", c.id, c.name, t.cases,
                t.failures, secs, c.budget > 0 ? (" (limit " + std::to_string(int(c.budget)) + "s)").c_str() : "");
    if (c.note) std::printf("      note: %s\n", c.note);
    if (!t.first.empty()) std::printf("      first failure: %.400s\n", t.first.c_str());
    std::fflush(stdout);
  }
  std::printf("total %.2fs, %d criteria failed\n", total, failed);
  return failed == 0 ? 0 : 1;
}
