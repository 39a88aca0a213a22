#include <cmath>
#include <map>

#include "doctest.h"
#include "lgt/commcalc.hpp"
#include "lgt/random.hpp"

using namespace lgt;

namespace {

Ctx Zxy() { return ring_poly(ring_Z(), {"x", "y"}); }

bool admissible(FormKind kind, int i, int k, int j) {
  if (i == k || k == j || i == j) return false;
  if (kind == FormKind::Linear) return true;
  if (k == sigma_index(i) || k == sigma_index(j)) return false;
  return kind == FormKind::Symplectic || j != sigma_index(i);
}

}  // namespace

TEST_CASE("linear commutator relation") {
  Ctx R = Zxy();
  const RingElem x = R->var("x"), y = R->var("y");
  auto c = commutator_relation(FormKind::Linear, 3, 1, 3, 2, x, y);
  CHECK(c.single);
  CHECK(c.z == 1);
  CHECK(eval_word(c.word, R, 3) == elem_gen(FormKind::Linear, 3, 1, 2, x * y));
  CHECK(commutator(elem_gen(FormKind::Linear, 3, 1, 3, x), elem_gen(FormKind::Linear, 3, 3, 2, y)) ==
        eval_word(c.word, R, 3));
  CHECK_THROWS_AS(commutator_relation(FormKind::Linear, 3, 1, 1, 2, x, y), Error);
}

TEST_CASE("disjoint generators commute") {
  Ctx R = Zxy();
  CHECK(commutator(elem_gen(FormKind::Linear, 4, 1, 2, R->var("x")), elem_gen(FormKind::Linear, 4, 3, 4, R->var("y")))
            .is_identity());
}

TEST_CASE("commutator constants are found and fixed per pattern") {
  Ctx R = Zxy();
  const RingElem x = R->var("x"), y = R->var("y");
  Rng rng(17);
  for (FormKind kind : {FormKind::Linear, FormKind::Symplectic, FormKind::Orthogonal})
    for (int n = kind == FormKind::Linear ? 3 : 4; n <= 6; n += kind == FormKind::Linear ? 1 : 2)
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k)
          for (int j = 1; j <= n; ++j) {
            if (!admissible(kind, i, k, j)) continue;
            auto c = commutator_relation(kind, n, i, k, j, x, y);
            REQUIRE(c.single);
            CHECK(c.z != 0);
            CHECK(commutator(elem_gen(kind, n, i, k, x), elem_gen(kind, n, k, j, y)) ==
                  elem_gen(kind, n, i, j, R->from_int(c.z) * x * y));
            if (kind == FormKind::Symplectic && j == sigma_index(i)) CHECK(std::abs(c.z) == 2);
            // Same z after specializing x, y to random integers.
            Ctx Z = ring_Z();
            const RingElem a = Z->from_int(rng.range(-9, 9)), b = Z->from_int(rng.range(-9, 9));
            CHECK(commutator(elem_gen(kind, n, i, k, a), elem_gen(kind, n, k, j, b)) ==
                  elem_gen(kind, n, i, j, Z->from_int(c.z) * a * b));
          }
}

TEST_CASE("linear split square matches the commutator identity") {
  Ctx W = ring_poly(ring_Z(), {"T", "m"});
  const RingElem T = W->var("T"), mu = W->var("m");
  const Word shown{make_gen(FormKind::Linear, 3, 2, 1, T * mu), make_gen(FormKind::Linear, 3, 1, 3, T),
                   make_gen(FormKind::Linear, 3, 2, 1, -(T * mu)), make_gen(FormKind::Linear, 3, 1, 3, -T)};
  const Mat target = elem_gen(FormKind::Linear, 3, 2, 3, T * T * mu);
  CHECK(eval_word(shown, W, 3) == target);
  Word w = split_square(FormKind::Linear, 3, 2, 3, mu, T, 1);
  CHECK(eval_word(w, W, 3) == target);
  for (const auto& g : w) CHECK(touches(g, 1));
  CHECK(split_square(FormKind::Linear, 3, 2, 3, W->zero(), T, 1).empty());
  CHECK_THROWS_AS(split_square(FormKind::Linear, 3, 1, 3, mu, T, 1), Error);
}

TEST_CASE("symplectic short root split") {
  Ctx W = ring_poly(ring_Q(), {"T", "m"});
  const RingElem T = W->var("T"), mu = W->var("m");
  Word w = split_square(FormKind::Symplectic, 6, 3, 4, mu, T, 1);
  CHECK(eval_word(w, W, 6) == elem_gen(FormKind::Symplectic, 6, 3, 4, T * T * mu));
  for (const auto& g : w) CHECK(touches(normalize_to(g, 1), 1));
  // Over Z the same split needs 1/2.
  Ctx WZ = ring_poly(ring_Z(), {"T", "m"});
  CHECK_THROWS_AS(split_square(FormKind::Symplectic, 6, 3, 4, WZ->var("m"), WZ->var("T"), 1), Error);
}

TEST_CASE("conjugation expansion examples") {
  Ctx W = ring_poly(ring_Z(), {"X", "Y"});
  const RingElem X = W->var("X"), Y = W->var("Y");
  auto r0 = conjugation_expand(FormKind::Linear, 3, {}, 1, 3, 1, Y, "X");
  REQUIRE(r0.output.size() == 1);
  CHECK(r0.output[0].value() == X * Y);
  CHECK(r0.h[0] == Y);

  const Word eps{make_gen(FormKind::Linear, 3, 1, 2, ring_Z()->one())};
  auto r1 = conjugation_expand(FormKind::Linear, 3, eps, 1, 3, 1, Y, "X");
  const Mat want = elem_gen(FormKind::Linear, 3, 1, 2, W->one()) * elem_gen(FormKind::Linear, 3, 1, 3, X * X * Y) *
                   elem_gen(FormKind::Linear, 3, 1, 2, -W->one());
  CHECK(eval_word(r1.output, W, 3) == want);
  for (std::size_t t = 0; t < r1.output.size(); ++t) {
    CHECK(W->exact_div(r1.output[t].value(), X).has_value());
    CHECK(r1.output[t].value() == X * r1.h[t]);
  }
}

TEST_CASE("conjugation expansion over Z (property)") {
  Rng rng(29);
  Ctx Z = ring_Z();
  Ctx W = ring_poly(Z, {"X", "Y"});
  const RingElem X = W->var("X"), Y = W->var("Y");
  for (int k = 0; k < 60; ++k) {
    const FormKind kind = rng.coin() ? FormKind::Linear : FormKind::Orthogonal;
    const int n = kind == FormKind::Linear ? static_cast<int>(rng.range(3, 6)) : 6;
    const Word eps = random_word(kind, n, Z, static_cast<std::size_t>(rng.range(0, 3)), rng, 2);
    auto [p, q] = random_indices(kind, n, rng);
    const unsigned m = static_cast<unsigned>(rng.range(1, 2));
    auto res = conjugation_expand(kind, n, eps, p, q, m, Y, "X");
    const auto N = static_cast<std::size_t>(n);
    const Word epsW = map_word(eps, [&](const RingElem& a) { return W->embed(a); });
    const RingElem D = X.pow(static_cast<std::uint64_t>(m) << eps.size());
    CHECK(eval_word(res.output, W, N) ==
          eval_word(epsW, W, N) * elem_gen(kind, n, p, q, D * Y) * eval_word(word_inverse(epsW), W, N));
    for (const auto& g : res.output) CHECK(W->exact_div(g.param, X.pow(m)).has_value());
    const Word at0 = map_word(res.output, [&](const RingElem& a) { return substitute(a, "X", W->zero()); });
    CHECK(eval_word(at0, W, N).is_identity());
  }
}

TEST_CASE("conjugation length stays within c 4^r") {
  Rng rng(31);
  for (int k = 0; k < 120; ++k) {
    const int pick = static_cast<int>(rng.range(0, 2));
    const FormKind kind = pick == 0 ? FormKind::Linear : pick == 1 ? FormKind::Symplectic : FormKind::Orthogonal;
    Ctx A = kind == FormKind::Symplectic ? ring_Q() : ring_Z();
    Ctx W = ring_poly(A, {"X", "Y"});
    const int n = kind == FormKind::Linear ? 4 : 6;
    const Word eps = random_word(kind, n, A, static_cast<std::size_t>(rng.range(0, 4)), rng, 2);
    auto [p, q] = random_indices(kind, n, rng);
    auto res = conjugation_expand(kind, n, eps, p, q, 1, W->var("Y"), "X");
    CHECK(static_cast<double>(res.output.size()) <= kConjugationLengthConstant * std::pow(4.0, double(eps.size())));
  }
}

TEST_CASE("pivot choice") {
  CHECK(pick_pivot(FormKind::Linear, 3, 2, 3) == 1);
  CHECK(pick_pivot(FormKind::Linear, 3, 1, 3) == 2);
  CHECK(pick_pivot(FormKind::Linear, 2, 1, 2) == 0);
  CHECK(pick_pivot(FormKind::Symplectic, 6, 1, 3) == 5);
  CHECK(pick_pivot(FormKind::Orthogonal, 4, 1, 3) == 0);
}
