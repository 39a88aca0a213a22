#include "doctest.h"
#include "lgt/lgp.hpp"
#include "lgt/random.hpp"
#include "oracle.hpp"

using namespace lgt;

namespace {

Ctx ZX() { return ring_poly(ring_Z(), {"X"}); }

ElemGen lin(int n, int i, int j, const RingElem& a) { return make_gen(FormKind::Linear, n, i, j, a); }

Word to(Ctx R, const Word& w) {
  return map_word(w, [&](const RingElem& a) { return map_into(a, R); });
}

}  // namespace

TEST_CASE("dilation of a single denominator") {
  Ctx W = localized_poly(ZX(), ring_Z()->from_int(2));
  auto r = dilate({lin(3, 1, 2, W->parse("X/2"))}, 3, W);
  CHECK(r.l == 1);
  CHECK(r.ctx == ZX());
  CHECK(r.b == ring_Z()->from_int(2).pow(2 * r.d));
  for (const auto& g : r.word) CHECK(g.param.ctx() == ZX());
  // b X / 2 with b = 2^(2d), compared after localizing.
  const RingElem bX2 = W->embed(r.b) * W->parse("X/2");
  CHECK(eval_word(to(W, r.word), W, 3) == elem_gen(FormKind::Linear, 3, 1, 2, bX2));
  CHECK(eval_word(r.word, ZX(), 3) == elem_gen(FormKind::Linear, 3, 1, 2, ZX()->from_int(2).pow(2 * r.d - 1) * ZX()->var("X")));
}

TEST_CASE("dilation of global and trivial words") {
  Ctx W = localized_poly(ZX(), ring_Z()->from_int(2));
  auto r = dilate({lin(3, 1, 2, W->var("X"))}, 3, W);
  CHECK(r.l == 1);
  CHECK(eval_word(to(W, r.word), W, 3) == elem_gen(FormKind::Linear, 3, 1, 2, W->embed(r.b) * W->var("X")));

  Ctx W3 = localized_poly(ZX(), ring_Z()->from_int(3));
  auto id = dilate({lin(3, 2, 1, W3->parse("X/3")), lin(3, 2, 1, W3->parse("-X/3"))}, 3, W3);
  CHECK(eval_word(id.word, ZX(), 3).is_identity());

  CHECK_THROWS_AS(dilate({lin(3, 1, 2, W->one())}, 3, W), Error);
}

TEST_CASE("dilation through conjugators") {
  Ctx W = localized_poly(ZX(), ring_Z()->from_int(2));
  const Word w{lin(3, 2, 1, W->parse("1/2")), lin(3, 1, 3, W->parse("X/4 + X^2")), lin(3, 2, 1, W->parse("-1/2"))};
  auto r = dilate(w, 3, W);
  const RingElem bX = W->embed(r.b) * W->var("X");
  CHECK(eval_word(to(W, r.word), W, 3) == eval_word(map_word(w, [&](const RingElem& a) { return substitute(a, "X", bX); }), W, 3));
  CHECK(r.pivot_form);
  for (const auto& g : r.word) CHECK(touches(g, 1));

  auto sh = dilate_shift(w, 3, W);
  Ctx G2 = sh.ctx;
  REQUIRE(G2->has_var("Y"));
  // Y = 0 leaves w(b X) w(0)^-1 = w(b X).
  Ctx L2 = localized_poly(G2, ring_Z()->from_int(2));
  const Word y0 = map_word(sh.word, [&](const RingElem& a) { return substitute(map_into(a, L2), "Y", L2->zero()); });
  const RingElem bX2 = L2->embed(sh.b) * L2->var("X");
  CHECK(eval_word(y0, L2, 3) ==
        eval_word(map_word(w, [&](const RingElem& a) { return substitute(map_into(a, L2), "X", bX2); }), L2, 3));
}

TEST_CASE("patching e12(X) over the cover {2, 3}") {
  Ctx Z = ring_Z(), G = ZX();
  ComaximalCover cover{{Z->from_int(2), Z->from_int(3)}, {Z->from_int(-1), Z->one()}};
  CHECK(cover.valid());
  Ctx L2 = localized_poly(G, Z->from_int(2)), L3 = localized_poly(G, Z->from_int(3));
  const Mat sigma = elem_gen(FormKind::Linear, 3, 1, 2, G->var("X"));
  Word out = patch(sigma, FormKind::Linear, cover, {{lin(3, 1, 2, L2->var("X"))}, {lin(3, 1, 2, L3->var("X"))}});
  CHECK(eval_word(out, G, 3) == sigma);

  Word idw = patch(Mat::identity(G, 3), FormKind::Linear, cover, {{}, {}});
  CHECK(eval_word(idw, G, 3).is_identity());

  CHECK_THROWS_AS(patch(sigma, FormKind::Linear, cover, {{lin(3, 1, 2, L2->parse("2*X"))}, {lin(3, 1, 2, L3->var("X"))}}),
                  Error);
  ComaximalCover bad{{Z->from_int(2), Z->from_int(4)}, {Z->one(), Z->one()}};
  CHECK_FALSE(bad.valid());
}

TEST_CASE("power certificates") {
  Ctx Z = ring_Z();
  ComaximalCover cover{{Z->from_int(2), Z->from_int(3)}, {Z->from_int(-1), Z->one()}};
  for (auto N : std::vector<std::vector<unsigned>>{{1, 1}, {2, 3}, {4, 4}, {8, 2}}) {
    auto c = cover.power_certificate(N);
    RingElem s = Z->zero();
    for (std::size_t i = 0; i < 2; ++i) s += c[i] * cover.s[i].pow(N[i]);
    CHECK(s.is_one());
  }
}

TEST_CASE("diagonal reduction") {
  Ctx R = ring_Zmod(9);
  const RingElem three = R->from_int(3);
  auto dr0 = diagonal_reduce(Mat::identity(R, 3), {three}, FormKind::Linear);
  CHECK(dr0.eps.empty());
  CHECK(dr0.D.is_identity());

  const Mat beta = eval_word({lin(3, 1, 2, three), lin(3, 2, 1, R->from_int(6))}, R, 3);
  auto dr = diagonal_reduce(beta, {three}, FormKind::Linear);
  CHECK(beta * eval_word(dr.eps, R, 3) == dr.D);
  CHECK(dr.D.is_diagonal());
  long long prod = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    const long long d = dr.D(i, i).int_value().get_si();
    CHECK(d % 3 == 1);
    prod = prod * d % 9;
  }
  CHECK(prod == 1);

  const Mat sp = elem_gen(FormKind::Symplectic, 6, 1, 3, three);
  auto ds = diagonal_reduce(sp, {three}, FormKind::Symplectic);
  CHECK(ds.D.is_identity());
  REQUIRE(ds.eps.size() == 1);
  CHECK(ds.eps[0].i == 1);
  CHECK(ds.eps[0].j == 3);
  CHECK(ds.eps[0].value() == R->from_int(-3));

  CHECK_THROWS_AS(diagonal_reduce(elem_gen(FormKind::Linear, 3, 1, 2, R->one()), {three}, FormKind::Linear), Error);
  CHECK_THROWS_AS(diagonal_reduce(beta, {three}, FormKind::Symplectic), Error);
}

TEST_CASE("congruence commutator") {
  Ctx Z = ring_Z();
  Ctx R = ring_localize(Z, MultSet{MultShape::OnePlus, Z->from_int(2)});
  const RingElem nine = R->from_int(9);
  Mat D = Mat::identity(R, 3);
  D(0, 0) = nine;
  D(2, 2) = *R->is_unit(nine);
  auto cc = congruence_commutator(FormKind::Linear, 1, 2, R->one(), R->from_int(2), D, 3);
  REQUIRE(cc.word.size() == 1);
  // d - 1 = 8 = 2^3 * 1, so the parameter is -(1/2) 8 X = -4 X.
  CHECK(cc.m == 3);
  CHECK(cc.lambda.is_one());
  CHECK(cc.word[0].value() == cc.ctx->parse("-4*X"));
  CHECK(cc.level >= 2);

  auto triv = congruence_commutator(FormKind::Linear, 1, 2, R->one(), R->from_int(2), Mat::identity(R, 3), 2);
  CHECK(triv.word.empty());
  CHECK_THROWS_AS(congruence_commutator(FormKind::Linear, 1, 2, R->one(), R->from_int(2), D, 1), Error);
}

TEST_CASE("nilpotent powers") {
  Ctx R = ring_Zmod(8);
  const RingElem two = R->from_int(2);
  auto np = nilpotent_power(Mat::from_rows(R, {{two, two}, {two, two}}));
  CHECK(np.e == 2);
  CHECK(np.l == 3);
  CHECK((1ul << np.m) > 12);
  CHECK(np.e <= (1ul << np.m));
  CHECK(nilpotent_power(Mat(R, 2, 2)).e == 1);

  // Strictly upper triangular with nilpotent entries.
  Mat up(R, 3, 3);
  up(0, 1) = two;
  up(0, 2) = R->from_int(4);
  up(1, 2) = R->from_int(-2);
  CHECK(nilpotent_power(up).e <= 3);
  // Entrywise nilpotency is required even when the matrix is nilpotent.
  Ctx Z = ring_Z();
  Mat upz(Z, 2, 2);
  upz(0, 1) = Z->one();
  CHECK_THROWS_AS(nilpotent_power(upz), Error);
  CHECK_THROWS_AS(nilpotent_power(Mat::identity(R, 2)), Error);
}

TEST_CASE("nilpotent powers over Z/8 exhaustively") {
  Ctx R = ring_Zmod(8);
  const long nil[] = {0, 2, 4, 6};
  for (int code = 0; code < 256; ++code) {
    oracle::IMat a(2, std::vector<long long>(2));
    Mat m(R, 2, 2);
    for (int t = 0; t < 4; ++t) {
      a[t / 2][t % 2] = nil[(code >> (2 * t)) & 3];
      m(t / 2, t % 2) = R->from_int(a[t / 2][t % 2]);
    }
    unsigned e = 1;
    oracle::IMat p = a;
    while (p != oracle::IMat(2, std::vector<long long>(2, 0))) {
      p = oracle::mul(p, a, 8);
      ++e;
    }
    CHECK(nilpotent_power(m).e == e);
  }
}

TEST_CASE("nil homotopy") {
  Ctx R = ring_Zmod(8);
  auto h0 = nil_homotopy(Mat::identity(R, 3));
  CHECK(h0.theta.is_identity());

  const Mat tau = elem_gen(FormKind::Linear, 3, 1, 2, R->from_int(2));
  auto h = nil_homotopy(tau);
  CHECK(h.theta == elem_gen(FormKind::Linear, 3, 1, 2, h.ctx->parse("2*X")));
  CHECK(h.theta.map(R, [&](const RingElem& x) { return hom_eval(x, R, {{"X", R->one()}}); }) == tau);

  // A product of two symplectic generators: the straight-line path leaves the group.
  const Mat prod = eval_word({make_gen(FormKind::Symplectic, 6, 1, 3, R->from_int(2)),
                              make_gen(FormKind::Symplectic, 6, 3, 1, R->from_int(2))},
                             R, 6);
  CHECK_THROWS_AS(nil_homotopy(prod, FormKind::Symplectic), Error);
  CHECK_THROWS_AS(nil_homotopy(elem_gen(FormKind::Linear, 3, 1, 2, R->one())), Error);
}

TEST_CASE("lifting modulo a nilpotent ideal") {
  Ctx R = ring_Zmod(8);
  const RingElem two = R->from_int(2);
  const Mat alpha = elem_gen(FormKind::Linear, 3, 1, 2, R->from_int(3));
  Ctx Rb = ring_Zmod(2);
  Word lifted = lift_mod_nil(alpha, {two}, {lin(3, 1, 2, Rb->one())}, FormKind::Linear);
  CHECK(eval_word(lifted, R, 3) == alpha);

  Mat diag = Mat::identity(R, 3);
  diag(0, 0) = R->from_int(3);
  diag(1, 1) = R->from_int(3);  // 3 * 3 = 9 = 1 mod 8
  Word wd = lift_mod_nil(diag, {two}, {}, FormKind::Linear);
  CHECK(eval_word(wd, R, 3) == diag);

  // Zero ideal hands the word back.
  Word same = lift_mod_nil(alpha, {R->zero()}, {lin(3, 1, 2, R->from_int(3))}, FormKind::Linear);
  CHECK(eval_word(same, R, 3) == alpha);
}

TEST_CASE("Whitehead words") {
  Ctx R = ring_Zmod(8);
  Word w = whitehead(FormKind::Linear, 3, 1, 2, R->from_int(3));
  Mat want = Mat::identity(R, 3);
  want(0, 0) = R->from_int(3);
  want(1, 1) = R->from_int(3);
  CHECK(eval_word(w, R, 3) == want);
  CHECK(w.size() == 4);
}

TEST_CASE("dilation soundness (property)") {
  Rng rng(41);
  Ctx Z = ring_Z();
  for (int k = 0; k < 20; ++k) {
    const long s = rng.coin() ? 2 : 3;
    const FormKind kind = rng.coin() ? FormKind::Linear : FormKind::Orthogonal;
    const int n = kind == FormKind::Linear ? 3 : 6;
    Ctx W = localized_poly(ZX(), Z->from_int(s));
    Word w = random_based_word(kind, n, W, "X", static_cast<std::size_t>(rng.range(1, 5)), rng);
    auto r = dilate(w, static_cast<std::size_t>(n), W);
    for (const auto& g : r.word) CHECK(g.param.ctx() == ZX());
    const RingElem bX = W->embed(r.b) * W->var("X");
    CHECK(eval_word(to(W, r.word), W, static_cast<std::size_t>(n)) ==
          eval_word(map_word(w, [&](const RingElem& a) { return substitute(a, "X", bX); }), W, static_cast<std::size_t>(n)));
    CHECK(Z->in_ideal(r.b, Z->from_int(s).pow(r.l)));
  }
}
