#include "suite_harness.hpp"

namespace lgt::suites {

namespace {

using nlohmann::json;

std::vector<Ctx> zoo() {
  Ctx Z = ring_Z(), Q = ring_Q();
  Ctx Zt = ring_poly(Z, {"t"});
  return {
      Z,
      Q,
      ring_Zmod(12),
      ring_Zmod(25),
      ring_poly(Z, {"x", "y"}),
      ring_poly(ring_Zmod(9), {"x"}),
      ring_quotient(Z, "t", {Z->from_int(1), Z->zero(), Z->one()}),
      ring_quotient(ring_Zmod(4), "e", {ring_Zmod(4)->zero(), ring_Zmod(4)->zero(), ring_Zmod(4)->one()}),
      loc_powers(Z, 6),
      ring_localize(Z, MultSet{MultShape::OnePlus, Z->from_int(3)}),
      loc_powers(ring_Zmod(12), 2),
      ring_localize(Zt, MultSet{MultShape::Powers, Zt->var("t")}),
      ring_quadext(Z, Z->from_int(2)),
      ring_quadext(Q, Q->from_int(-1)),
  };
}

void ring_axioms(Run& run) {
  const auto rings = zoo();
  const int per = std::max(1, run.count(280) / static_cast<int>(rings.size()));
  for (Ctx R : rings)
    for (int k = 0; k < per; ++k)
      run.check([&](json& ce) {
        RingElem a = random_elem(R, run.rng), b = random_elem(R, run.rng), c = random_elem(R, run.rng);
        ce = {{"ring", R->spec()}, {"a", enc(a)}, {"b", enc(b)}, {"c", enc(c)}};
        return (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && (a + b) + c == a + (b + c) &&
               a * b == b * a && R->one() * a == a && a + (-a) == R->zero() && a - b == a + (-b);
      });
}

void involution(Run& run) {
  const auto rings = zoo();
  const int per = std::max(1, run.count(280) / static_cast<int>(rings.size()));
  for (Ctx R : rings)
    for (int k = 0; k < per; ++k)
      run.check([&](json& ce) {
        RingElem a = random_elem(R, run.rng), b = random_elem(R, run.rng);
        ce = {{"ring", R->spec()}, {"a", enc(a)}, {"b", enc(b)}};
        bool ok = a.conj().conj() == a && (a * b).conj() == a.conj() * b.conj() && (a + b).conj() == a.conj() + b.conj() &&
                  R->one().conj() == R->one();
        if (R->kind() == RingKind::QuadExt) {
          RingElem base = R->embed(random_elem(R->parent(), run.rng));
          ok = ok && base.conj() == base && R->var(R->gen_name()).conj() == -R->var(R->gen_name());
        } else {
          ok = ok && a.conj() == a;
        }
        return ok;
      });
}

// Two differently built representatives of the same element.
RingElem detour(const RingElem& a, Rng& rng) {
  Ctx R = a.ctx();
  RingElem c = random_elem(R, rng);
  return a * (R->one() + c) - a * c;
}

void equality(Run& run) {
  const auto rings = zoo();
  const int per = std::max(1, run.count(280) / static_cast<int>(rings.size()));
  for (Ctx R : rings)
    for (int k = 0; k < per; ++k)
      run.check([&](json& ce) {
        RingElem a = random_elem(R, run.rng);
        RingElem b = detour(a, run.rng), c = detour(b, run.rng), other = random_elem(R, run.rng);
        ce = {{"ring", R->spec()}, {"a", enc(a)}, {"other", enc(other)}};
        bool ok = a == a && (a == b) && (b == a) && (b == c) && (a == c);
        ok = ok && ((a == other) == (other == a)) && ((a == other) == (a - other).is_zero());
        if (R->kind() == RingKind::Poly) {
          const std::string v = R->vars()[0];
          RingElem val = random_elem(R, run.rng);
          ok = ok && substitute(a, v, val) == substitute(b, v, val);
        }
        return ok;
      });
}

void units_nilpotents(Run& run) {
  Ctx Z = ring_Z(), Q = ring_Q();
  const std::vector<Ctx> rings{Z, Q, ring_Zmod(72), ring_Zmod(8), ring_Zmod(25), ring_poly(Q, {"x"}),
                               loc_powers(Z, 6), ring_localize(Z, MultSet{MultShape::OnePlus, Z->from_int(3)}),
                               ring_quotient(ring_Zmod(4), "e", {ring_Zmod(4)->zero(), ring_Zmod(4)->zero(), ring_Zmod(4)->one()})};
  const int per = std::max(1, run.count(270) / static_cast<int>(rings.size()));
  for (Ctx R : rings)
    for (int k = 0; k < per; ++k)
      run.check([&](json& ce) {
        RingElem a = random_elem(R, run.rng, 6);
        ce = {{"ring", R->spec()}, {"a", enc(a)}};
        bool ok = true;
        if (auto inv = R->is_unit(a)) {
          ce["inverse"] = enc(*inv);
          ok = (a * *inv).is_one();
        }
        if (auto l = R->is_nilpotent(a)) {
          ce["index"] = *l;
          ok = ok && *l >= 1 && a.pow(*l).is_zero() && !a.pow(*l - 1).is_zero();
        }
        return ok;
      });
}

// ---------------------------------------------------------------------------

const std::vector<int>& sizes_for(FormKind kind) {
  static const std::vector<int> lin{3, 4, 6, 8}, even{4, 6, 8};
  return kind == FormKind::Linear ? lin : even;
}

void form_preservation(Run& run) {
  const std::vector<Ctx> rings{ring_Q(), ring_Zmod(25), ring_poly(ring_Zmod(9), {"x"})};
  const int total = run.count(200);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = pick_kind(run.rng);
      const auto& ns = sizes_for(kind);
      int n = ns[static_cast<std::size_t>(run.rng.range(0, static_cast<long>(ns.size()) - 1))];
      n = run.cap(n);
      if (kind != FormKind::Linear) n = std::max(2, n - n % 2);
      if (n < 2) n = 2;
      Ctx R = rings[static_cast<std::size_t>(run.rng.range(0, 2))];
      ElemGen g = random_gen(kind, n, R, run.rng);
      ce = {{"ring", R->spec()}, {"gen", gen_to_json(g)}};
      Mat m = gen_matrix(g, R);
      return check_membership(m, kind, true) && det(m).is_one() && (m * gen_matrix(g.inverse(), R)).is_identity();
    });
}

void standard_form_suite(Run& run) {
  const std::vector<Ctx> rings{ring_Z(), ring_Q(), ring_Zmod(9)};
  for (Ctx R : rings)
    for (int n = 2; n <= run.cap(8); n += 2)
      run.check([&](json& ce) {
        ce = {{"ring", R->spec()}, {"n", n}};
        const Mat I = Mat::identity(R, static_cast<std::size_t>(n));
        Mat sp = standard_form(FormKind::Symplectic, static_cast<std::size_t>(n), R);
        Mat ot = standard_form(FormKind::Orthogonal, static_cast<std::size_t>(n), R);
        return sp.transpose() == sp.scaled(R->from_int(-1)) && sp * sp == I.scaled(R->from_int(-1)) &&
               ot.transpose() == ot && ot * ot == I;
      });
}

void word_homomorphism(Run& run) {
  const std::vector<Ctx> rings{ring_Z(), ring_Zmod(25), ring_poly(ring_Z(), {"x"})};
  const int total = run.count(100);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = pick_kind(run.rng);
      const int n = kind == FormKind::Linear ? static_cast<int>(run.rng.range(2, run.cap(5)))
                                             : 2 * static_cast<int>(run.rng.range(2, std::max(2, run.cap(6) / 2)));
      Ctx R = rings[static_cast<std::size_t>(run.rng.range(0, 2))];
      Word a = random_word(kind, n, R, static_cast<std::size_t>(run.rng.range(0, 4)), run.rng);
      Word b = random_word(kind, n, R, static_cast<std::size_t>(run.rng.range(0, 4)), run.rng);
      ce = {{"ring", R->spec()}, {"w1", word_to_json(a)}, {"w2", word_to_json(b)}};
      const auto N = static_cast<std::size_t>(n);
      return eval_word(concat(a, b), R, N) == eval_word(a, R, N) * eval_word(b, R, N) &&
             eval_word({}, R, N).is_identity() && (eval_word(a, R, N) * eval_word(word_inverse(a), R, N)).is_identity();
    });
}

// ---------------------------------------------------------------------------

Vec random_vec(Ctx R, std::size_t n, Rng& rng) {
  Vec v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(random_elem(R, rng));
  return v;
}

FormKind nonlinear(Rng& rng) { return rng.coin() ? FormKind::Symplectic : FormKind::Orthogonal; }

int nonlinear_size(Run& run) { return 2 * static_cast<int>(run.rng.range(2, std::max(2, run.cap(8) / 2))); }

void transvection_form(Run& run) {
  const int total = run.count(200);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = nonlinear(run.rng);
      const int n = nonlinear_size(run);
      Ctx R = run.rng.coin() ? ring_Z() : ring_Q();
      Transvection t = random_transvection(kind, n, R, run.rng);
      Vec p = random_vec(R, t.dim(), run.rng), p2 = random_vec(R, t.dim(), run.rng);
      ce = {{"kind", form_name(kind)}, {"n", n}, {"u", json::array()}, {"v", json::array()}};
      for (std::size_t i = 0; i < t.dim(); ++i) {
        ce["u"].push_back(enc(t.u[i]));
        ce["v"].push_back(enc(t.v[i]));
      }
      return form_pair(kind, apply_transvection(t, p), apply_transvection(t, p2)) == form_pair(kind, p, p2);
    });
}

void transvection_inverse(Run& run) {
  const int total = run.count(200);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      const FormKind kind = nonlinear(run.rng);
      const int n = nonlinear_size(run);
      Ctx R = run.rng.coin() ? ring_Z() : ring_Q();
      Transvection t = random_transvection(kind, n, R, run.rng);
      Vec p = random_vec(R, t.dim(), run.rng);
      ce = {{"kind", form_name(kind)}, {"n", n}};
      Transvection ti = invert(t);
      const Mat M = transvection_matrix(t, R), Mi = transvection_matrix(ti, R);
      return apply_transvection(ti, apply_transvection(t, p)) == p && (M * Mi).is_identity() &&
             check_membership(M, kind, false);
    });
}

struct ElemCase {
  QModule Q;
  ElemShape shape;
  Vec param;
};

ElemCase random_elem_case(Run& run, Ctx R) {
  const FormKind kind = pick_kind(run.rng);
  std::size_t rank;
  ElemShape shape;
  if (kind == FormKind::Linear) {
    rank = static_cast<std::size_t>(run.rng.range(2, std::max(2, run.cap(6))));
    shape = run.rng.coin() ? ElemShape::Column : ElemShape::Row;
  } else {
    rank = static_cast<std::size_t>(2 * run.rng.range(2, std::max(2, run.cap(6) / 2)));
    shape = run.rng.coin() ? ElemShape::First : ElemShape::Second;
  }
  return {make_qmodule(kind, R, rank), shape, random_vec(R, rank, run.rng)};
}

json elem_case_json(const ElemCase& c) {
  json p = json::array();
  for (const auto& e : c.param) p.push_back(enc(e));
  return {{"kind", form_name(c.Q.kind)}, {"rank", c.Q.rank}, {"shape", static_cast<int>(c.shape)}, {"param", p}};
}

void elem_transvection_membership(Run& run) {
  Ctx R = loc_powers(ring_Z(), 2);
  const int total = run.count(100);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      ElemCase c = random_elem_case(run, R);
      ce = elem_case_json(c);
      Mat m = elem_transvection(c.Q, c.shape, c.param);
      return det(m).is_one() && check_membership(m, c.Q.kind, true);
    });
}

void elem_transvection_lift(Run& run) {
  Ctx R = loc_powers(ring_Z(), 2);
  const std::vector<Ctx> quotients{ring_Zmod(9), ring_Zmod(25), ring_Zmod(3)};
  const int total = run.count(100);
  for (int k = 0; k < total; ++k)
    run.check([&](json& ce) {
      ElemCase c = random_elem_case(run, R);
      Ctx Rb = quotients[static_cast<std::size_t>(run.rng.range(0, 2))];
      ce = elem_case_json(c);
      ce["quotient"] = Rb->spec();
      auto red = [&](const RingElem& a) { return map_into(a, Rb); };
      Mat lifted = elem_transvection(c.Q, c.shape, c.param).map(Rb, red);
      Vec pb;
      for (const auto& e : c.param) pb.push_back(red(e));
      return lifted == elem_transvection(make_qmodule(c.Q.kind, Rb, c.Q.rank), c.shape, pb);
    });
}

}  // namespace

std::vector<Entry> algebra_suites() {
  return {
      {"ring-axioms", ring_axioms},
      {"involution", involution},
      {"equality", equality},
      {"units-nilpotents", units_nilpotents},
      {"form-preservation", form_preservation},
      {"standard-form", standard_form_suite},
      {"word-homomorphism", word_homomorphism},
      {"transvection-form", transvection_form},
      {"transvection-inverse", transvection_inverse},
      {"elem-transvection-membership", elem_transvection_membership},
      {"elem-transvection-lift", elem_transvection_lift},
  };
}

}  // namespace lgt::suites
