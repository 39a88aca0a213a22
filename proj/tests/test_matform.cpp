#include "doctest.h"
#include "lgt/random.hpp"
#include "oracle.hpp"

using namespace lgt;
using oracle::IMat;

TEST_CASE("standard forms") {
  Ctx Z = ring_Z();
  CHECK(oracle::from(standard_form(FormKind::Symplectic, 2, Z)) == IMat{{0, 1}, {-1, 0}});
  CHECK(oracle::from(standard_form(FormKind::Orthogonal, 2, Z)) == IMat{{0, 1}, {1, 0}});
  CHECK(oracle::from(standard_form(FormKind::Symplectic, 4, Z)) ==
        IMat{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
  CHECK_THROWS_AS(standard_form(FormKind::Symplectic, 3, Z), Error);
  CHECK_THROWS_AS(standard_form(FormKind::Linear, 4, Z), Error);
}

TEST_CASE("generator matrices") {
  Ctx Z = ring_Z();
  CHECK(oracle::from(elem_gen(FormKind::Linear, 3, 1, 2, Z->from_int(7))) ==
        oracle::add(oracle::id(3), oracle::unit(3, 1, 2, 7)));
  // Symplectic (1,3): the only sign in {+1, -1} on E_42 that preserves psi is -1.
  const IMat base = oracle::add(oracle::id(4), oracle::unit(4, 1, 3, 5));
  CHECK(oracle::preserves(oracle::add(base, oracle::unit(4, 4, 2, -5)), true));
  CHECK_FALSE(oracle::preserves(oracle::add(base, oracle::unit(4, 4, 2, 5)), true));
  CHECK(oracle::from(elem_gen(FormKind::Symplectic, 4, 1, 3, Z->from_int(5))) == oracle::add(base, oracle::unit(4, 4, 2, -5)));
  // Short root.
  const IMat sr = oracle::from(elem_gen(FormKind::Symplectic, 4, 1, 2, Z->from_int(5)));
  CHECK(sr == oracle::add(oracle::id(4), oracle::unit(4, 1, 2, 5)));
  CHECK(oracle::preserves(sr, true));
}

TEST_CASE("generator symbolic membership") {
  Ctx Qa = ring_poly(ring_Q(), {"a"});
  Mat m = elem_gen(FormKind::Symplectic, 4, 1, 3, Qa->var("a"));
  CHECK(check_membership(m, FormKind::Symplectic));
  CHECK(m(0, 2) == Qa->var("a"));
  CHECK(m(3, 1) == -Qa->var("a"));
}

TEST_CASE("invalid generators") {
  Ctx Z = ring_Z();
  CHECK_THROWS_AS(elem_gen(FormKind::Linear, 3, 2, 2, Z->one()), Error);
  CHECK_THROWS_AS(elem_gen(FormKind::Linear, 3, 1, 4, Z->one()), Error);
  CHECK_THROWS_AS(elem_gen(FormKind::Symplectic, 5, 1, 3, Z->one()), Error);
  CHECK_THROWS_AS(elem_gen(FormKind::Orthogonal, 4, 1, 2, Z->one()), Error);
}

TEST_CASE("membership") {
  Ctx Z = ring_Z(), Q = ring_Q();
  CHECK(check_membership(elem_gen(FormKind::Linear, 3, 1, 2, Z->from_int(5)), FormKind::Linear));
  Mat d = Mat::identity(Q, 3);
  d(0, 0) = Q->from_int(2);
  CHECK_FALSE(check_membership(d, FormKind::Linear, true));
  CHECK(check_membership(d, FormKind::Linear, false));
}

TEST_CASE("words") {
  Ctx Z = ring_Z();
  Ctx Zx = ring_poly(Z, {"x"});
  const RingElem x = Zx->var("x");
  CHECK(eval_word({make_gen(FormKind::Linear, 3, 1, 2, x), make_gen(FormKind::Linear, 3, 1, 2, -x)}, Zx, 3).is_identity());
  CHECK(eval_word({}, Z, 4).is_identity());
  Mat m = eval_word({make_gen(FormKind::Linear, 3, 1, 3, Z->one()), make_gen(FormKind::Linear, 3, 3, 2, Z->one())}, Z, 3);
  const IMat want = oracle::mul(oracle::add(oracle::id(3), oracle::unit(3, 1, 3, 1)),
                                oracle::add(oracle::id(3), oracle::unit(3, 3, 2, 1)));
  CHECK(oracle::from(m) == want);
  CHECK(want == IMat{{1, 1, 1}, {0, 1, 0}, {0, 1, 1}});
}

TEST_CASE("matrix commutators") {
  Ctx R = ring_poly(ring_Z(), {"x", "y"});
  const RingElem x = R->var("x"), y = R->var("y");
  Mat A = elem_gen(FormKind::Linear, 4, 1, 3, x);
  CHECK(commutator(A, Mat::identity(R, 4)).is_identity());
  CHECK(commutator(A, elem_gen(FormKind::Linear, 4, 3, 2, y)) == elem_gen(FormKind::Linear, 4, 1, 2, x * y));
  CHECK(commutator(elem_gen(FormKind::Linear, 4, 1, 2, x), elem_gen(FormKind::Linear, 4, 3, 4, y)).is_identity());
}

TEST_CASE("integer generators preserve the form (property)") {
  Rng rng(3);
  Ctx Z = ring_Z();
  for (int k = 0; k < 300; ++k) {
    const FormKind kind = rng.coin() ? FormKind::Symplectic : FormKind::Orthogonal;
    const int n = 2 * static_cast<int>(rng.range(2, 4));
    ElemGen g = random_gen(kind, n, Z, rng, 6);
    const IMat m = oracle::from(gen_matrix(g, Z));
    CHECK(oracle::preserves(m, kind == FormKind::Symplectic));
    CHECK(oracle::mul(m, oracle::from(gen_matrix(g.inverse(), Z))) == oracle::id(static_cast<std::size_t>(n)));
  }
}

TEST_CASE("inverse and determinant") {
  Ctx Z = ring_Z();
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    Word w = random_word(FormKind::Linear, 4, Z, 5, rng);
    Mat m = eval_word(w, Z, 4);
    CHECK(det(m).is_one());
    CHECK(inverse(m) == eval_word(word_inverse(w), Z, 4));
    CHECK((adjugate(m) * m).is_identity());
  }
  Mat two = Mat::identity(Z, 2).scaled(Z->from_int(2));
  CHECK_THROWS_AS(inverse(two), Error);
}

TEST_CASE("word json round trip") {
  Rng rng(6);
  Ctx R = ring_poly(ring_Zmod(9), {"x"});
  for (int k = 0; k < 20; ++k) {
    Word w = random_word(FormKind::Symplectic, 6, R, 4, rng);
    Word back = word_from_json(R, word_to_json(w));
    CHECK(eval_word(back, R, 6) == eval_word(w, R, 6));
    CHECK(word_to_json(back) == word_to_json(w));
  }
}

TEST_CASE("determinant over Z/12 against cofactor expansion (property)") {
  Rng rng(8);
  Ctx R = ring_Zmod(12);
  for (int k = 0; k < 200; ++k) {
    IMat a(3, std::vector<long long>(3));
    Mat m(R, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        // Mostly units and zero divisors, so both pivot paths get exercised.
        a[i][j] = rng.range(0, 11);
        m(i, j) = R->from_int(a[i][j]);
      }
    const long long d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    CHECK(det(m) == R->from_int(((d % 12) + 12) % 12));
  }
}
