#include <fstream>
#include <map>
#include <sstream>

#include "lgt/cli.hpp"
#include "lgt/lgp.hpp"

namespace lgt {

using nlohmann::json;

void Report::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

void Report::finish() {
  if (status == "invalid") return;
  status = "pass";
  for (const auto& c : checks)
    if (!c.pass) status = "fail";
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    json o{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    cs.push_back(std::move(o));
  }
  return {{"status", status}, {"witness", witness}, {"checks", cs}};
}

int Report::exit_code() const {
  if (status == "pass") return 0;
  if (status == "fail") return 1;
  return 2;
}

namespace {

bool is_input_error(Errc c) {
  switch (c) {
    case Errc::ParseError:
    case Errc::InvalidSpec:
    case Errc::VariableUnknown:
    case Errc::BadIndices:
    case Errc::OddSize:
    case Errc::DimensionMismatch:
    case Errc::ContextMismatch:
    case Errc::LinearHasNoForm:
    case Errc::IndexClash:
    case Errc::IndexOne:
      return true;
    default:
      return false;
  }
}

std::string check_for(Errc c) {
  static const std::map<Errc, std::string> names{
      {Errc::NotBasedAtIdentity, "based-at-identity"},
      {Errc::BadLocalData, "local-data"},
      {Errc::BadCertificate, "certificate"},
      {Errc::NilpotentS, "s-not-nilpotent"},
      {Errc::NotLocalRing, "local-ring"},
      {Errc::NotCongruentToIdentity, "congruent-to-identity"},
      {Errc::NotInGroup, "membership"},
      {Errc::InsufficientCongruence, "congruence-level"},
      {Errc::NotDiagonal, "diagonal"},
      {Errc::EntryNotNilpotent, "entries-nilpotent"},
      {Errc::NotUnipotentModNil, "unipotent-mod-nil"},
      {Errc::FormNotPreserved, "form-preserved"},
      {Errc::BadWord, "word-matches"},
      {Errc::TwoNotInvertible, "two-invertible"},
      {Errc::TemplateNotFound, "template"},
      {Errc::CheckFailed, "internal-check"},
      {Errc::NotInvertible, "invertible"},
      {Errc::Undecidable, "decidable"},
      {Errc::InfiniteRing, "finite-ring"},
      {Errc::OrthogonalityViolated, "orthogonality"},
      {Errc::NotIsotropic, "isotropic"},
      {Errc::NotInModule, "in-module"},
  };
  auto it = names.find(c);
  return it == names.end() ? std::string(errc_name(c)) : it->second;
}

FormKind kind_of(const json& p) { return form_from_name(p.value("kind", std::string("linear"))); }

Word word_of(Ctx R, const json& j) { return word_from_json(R, j); }

std::size_t size_of(const json& p, const Word& w) {
  if (p.contains("n")) return p.at("n").get<std::size_t>();
  if (w.empty()) throw Error(Errc::InvalidSpec, "matrix size 'n' is required for an empty word");
  return static_cast<std::size_t>(w[0].n);
}

std::vector<RingElem> elems_of(Ctx R, const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected an array of elements");
  std::vector<RingElem> out;
  for (const auto& x : j) out.push_back(R->from_json(x));
  return out;
}

json elems_json(const std::vector<RingElem>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.ctx()->to_json(x));
  return out;
}

bool word_divisible(const Word& w, const RingElem& d) {
  for (const auto& g : w)
    if (!d.ctx()->exact_div(d.ctx()->embed(g.value()), d)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Tasks

void task_verify_form(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat m = Mat::from_json(R, p.at("matrix"));
  bool ok = check_membership(m, kind, p.value("strict", true));
  rep.witness = {{"member", ok}};
  rep.add("membership", ok);
}

void task_elem_gen(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  const int n = p.at("n").get<int>(), i = p.at("i").get<int>(), j = p.at("j").get<int>();
  RingElem a = R->from_json(p.at("param"));
  Mat g = elem_gen(kind, n, i, j, a);
  rep.witness = g.to_json();
  rep.add("membership", check_membership(g, kind, true));
  rep.add("det-one", det(g).is_one());
  rep.add("inverse-product", (g * elem_gen(kind, n, i, j, -a)).is_identity());
}

void task_eval_word(Ctx R, const json& p, Report& rep) {
  Word w = word_of(R, p.at("word"));
  const std::size_t n = size_of(p, w);
  Mat m = eval_word(w, R, n);
  rep.witness = m.to_json();
  if (p.contains("expected")) {
    Mat e = Mat::from_json(R, p.at("expected"));
    rep.add("expected", m == e);
  } else {
    rep.add("evaluated", true);
  }
}

void task_commutator(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  const int n = p.at("n").get<int>(), i = p.at("i").get<int>(), k = p.at("k").get<int>(), j = p.at("j").get<int>();
  RingElem x = R->from_json(p.at("x")), y = R->from_json(p.at("y"));
  auto res = commutator_relation(kind, n, i, k, j, x, y);
  rep.witness = {{"z", res.z}, {"single", res.single}, {"word", word_to_json(res.word)}};
  Mat lit = commutator(elem_gen(kind, n, i, k, x), elem_gen(kind, n, k, j, y));
  rep.add("oracle", eval_word(res.word, R, static_cast<std::size_t>(n)) == lit);
}

void task_split_square(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  const int n = p.at("n").get<int>(), i = p.at("i").get<int>(), j = p.at("j").get<int>();
  const int pivot = p.value("pivot", 1);
  RingElem mu = R->from_json(p.at("mu")), T = R->from_json(p.value("T", json("T")));
  Word w = split_square(kind, n, i, j, mu, T, pivot);
  rep.witness = word_to_json(w);
  rep.add("eval-equality", eval_word(w, R, static_cast<std::size_t>(n)) == elem_gen(kind, n, i, j, T * T * mu));
  bool touch = true;
  for (const auto& g : w) touch = touch && touches(g, pivot);
  rep.add("touches-pivot", touch);
}

void task_conj_expand(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  const int n = p.at("n").get<int>(), pp = p.at("p").get<int>(), q = p.at("q").get<int>();
  const unsigned m = p.value("m", 1u);
  const std::string X = p.value("X", std::string("X"));
  Word eps = word_of(R, p.value("eps", json::array()));
  RingElem Y = R->from_json(p.value("Y", json("Y")));
  auto ce = conjugation_expand(kind, n, eps, pp, q, m, Y, X);
  rep.witness = {{"word", word_to_json(ce.output)}, {"h", elems_json(ce.h)}};
  const std::size_t N = static_cast<std::size_t>(n);
  const RingElem x = R->var(X);
  Mat E = eval_word(eps, R, N);
  Mat target = E * elem_gen(kind, n, pp, q, x.pow(static_cast<std::uint64_t>(m) << eps.size()) * Y) * inverse(E);
  rep.add("eval-equality", eval_word(ce.output, R, N) == target);
  rep.add("divisible", word_divisible(ce.output, x.pow(m)));
  Word at0 = map_word(ce.output, [&](const RingElem& a) { return substitute(a, X, R->zero()); });
  rep.add("identity-at-zero", eval_word(at0, R, N).is_identity());
  rep.add("length", true, std::to_string(ce.output.size()) + " generators");
}

void task_dilate(Ctx R, const json& p, Report& rep) {
  Word w = word_of(R, p.at("word"));
  const std::size_t n = size_of(p, w);
  const std::string X = p.value("X", std::string("X"));
  const bool shift = p.contains("shift");
  DilationResult res = shift ? dilate_shift(w, n, R, X, p.at("shift").get<std::string>()) : dilate(w, n, R, X);
  rep.witness = res.to_json();
  rep.add("based-at-identity", true);
  // Denominator-freeness is structural: the word lives over A[...].
  bool free = true;
  for (const auto& g : res.word) free = free && g.param.ctx() == res.ctx;
  rep.add("denominator-free", free);
  Ctx L = shift ? localized_poly(res.ctx, R->parent()->multset().s) : R;
  Mat lhs = eval_word(map_word(res.word, [&](const RingElem& a) { return map_into(a, L); }), L, n);
  Mat rhs;
  const RingElem bL = L->embed(map_into(res.b, L));
  if (!shift) {
    rhs = eval_word(map_word(w, [&](const RingElem& a) { return substitute(a, X, bL * L->var(X)); }), L, n);
  } else {
    const std::string Y = p.at("shift").get<std::string>();
    const RingElem x = L->var(X), y = L->var(Y);
    auto at = [&](const RingElem& c) {
      return eval_word(map_word(w, [&](const RingElem& a) { return hom_eval(a, L, {{X, c * x}}); }), L, n);
    };
    rhs = at(y + bL) * inverse(at(y));
  }
  rep.add("localization", lhs == rhs);
  Word at0 = map_word(res.word, [&](const RingElem& a) { return substitute(a, X, res.ctx->zero()); });
  rep.add("identity-at-zero", eval_word(at0, res.ctx, n).is_identity());
}

void task_patch(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat sigma;
  if (p.contains("sigma")) {
    sigma = Mat::from_json(R, p.at("sigma"));
  } else {
    Word sw = word_of(R, p.at("sigma_word"));
    sigma = eval_word(sw, R, size_of(p, sw));
  }
  ComaximalCover cover;
  Ctx A = R->parent();
  cover.s = elems_of(A, p.at("cover").at("s"));
  cover.cert = elems_of(A, p.at("cover").at("cert"));
  std::vector<Word> locals;
  const json& lw = p.at("local_words");
  if (!lw.is_array() || lw.size() != cover.s.size())
    throw Error(Errc::InvalidSpec, "one local word per cover element");
  for (std::size_t i = 0; i < cover.s.size(); ++i) locals.push_back(word_of(localized_poly(R, cover.s[i]), lw[i]));
  rep.add("certificate", cover.valid());
  if (!cover.valid()) return;
  Word out;
  try {
    out = patch(sigma, kind, cover, locals);
  } catch (const Error& e) {
    if (e.code() != Errc::BadLocalData) throw;
    rep.add("local-data", false, e.what());
    return;
  }
  rep.add("local-data", true);
  rep.witness = {{"word", word_to_json(out)}, {"cover", cover.to_json()}};
  rep.add("eval-equality", eval_word(out, R, sigma.rows()) == sigma);
}

void task_reduce_diagonal(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat beta = Mat::from_json(R, p.at("beta"));
  auto ideal = elems_of(R, p.at("ideal"));
  auto dr = diagonal_reduce(beta, ideal, kind);
  rep.witness = {{"eps", word_to_json(dr.eps)}, {"D", dr.D.to_json()}};
  rep.add("product", beta * eval_word(dr.eps, R, beta.rows()) == dr.D);
  rep.add("diagonal", dr.D.is_diagonal());
  bool cong = true, units = true, pairing = true;
  for (const auto& g : dr.eps) cong = cong && ideal_contains(R, ideal, g.param);
  const std::size_t n = dr.D.rows();
  for (std::size_t i = 0; i < n; ++i) {
    units = units && R->is_unit(dr.D(i, i)).has_value();
    if (kind != FormKind::Linear) {
      const std::size_t si = static_cast<std::size_t>(sigma_index(static_cast<int>(i + 1)) - 1);
      pairing = pairing && (dr.D(si, si) * dr.D(i, i).conj()).is_one();
    }
  }
  rep.add("congruent-to-identity", cong);
  rep.add("units", units);
  if (kind != FormKind::Linear) rep.add("form-pairing", pairing);
}

void task_nilpotent_power(Ctx R, const json& p, Report& rep) {
  Mat a = Mat::from_json(R, p.at("matrix"));
  auto np = nilpotent_power(a);
  rep.witness = {{"e", np.e}, {"l", np.l}, {"m", np.m}, {"bound", np.bound}};
  Mat P = Mat::identity(R, a.rows());
  for (unsigned k = 0; k < np.e; ++k) P = P * a;
  rep.add("power-zero", P.is_zero());
  rep.add("bound", np.e <= np.bound && np.bound > static_cast<unsigned long>(np.l) * a.rows() * a.rows());
}

void task_lift_mod_nil(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat alpha = Mat::from_json(R, p.at("alpha"));
  auto ideal = elems_of(R, p.at("ideal"));
  Word wb;
  const json& jw = p.value("word_bar", json::array());
  if (!jw.empty()) wb = word_of(make_ring(p.at("quotient")), jw);
  Word out = lift_mod_nil(alpha, ideal, wb, kind);
  rep.witness = word_to_json(out);
  Word lifted = map_word(out, [&](const RingElem& a) { return R->embed(a); });
  rep.add("eval-equality", eval_word(lifted, R, alpha.rows()) == alpha);
}

void task_stable_range(Ctx R, const json& p, Report& rep) {
  const unsigned m = p.value("m", 1u);
  bool holds = stable_range_holds(R, m);
  rep.witness = {{"holds", holds}};
  rep.add("stable-range", p.contains("expected") ? holds == p.at("expected").get<bool>() : holds);
}

void task_congruence(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat D = Mat::from_json(R, p.at("D"));
  auto cc = congruence_commutator(kind, p.at("i").get<int>(), p.at("j").get<int>(), R->from_json(p.at("a")),
                                  R->from_json(p.at("s")), D, p.at("l").get<unsigned>(), p.value("X", std::string("X")));
  rep.witness = {{"word", word_to_json(cc.word)}, {"level", cc.level}, {"m", cc.m}};
  rep.add("literal-equality", true);
  rep.add("denominator-free", true);
  rep.add("level", cc.word.empty() || cc.level + 1 >= p.at("l").get<unsigned>());
}

void task_nil_homotopy(Ctx R, const json& p, Report& rep) {
  FormKind kind = kind_of(p);
  Mat tau = Mat::from_json(R, p.at("tau"));
  auto nh = nil_homotopy(tau, kind, p.value("X", std::string("X")));
  rep.witness = {{"theta", nh.theta.to_json()}};
  const std::string X = nh.ctx->vars()[0];
  Mat at0 = nh.theta.map(R, [&](const RingElem& a) { return hom_eval(a, R, {{X, R->zero()}}); });
  Mat at1 = nh.theta.map(R, [&](const RingElem& a) { return hom_eval(a, R, {{X, R->one()}}); });
  rep.add("endpoints", at0.is_identity() && at1 == tau);
  rep.add("det-unit", nh.ctx->is_unit(det(nh.theta)).has_value());
}

using TaskFn = void (*)(Ctx, const json&, Report&);

const std::map<std::string, TaskFn>& tasks() {
  static const std::map<std::string, TaskFn> t{
      {"verify-form", task_verify_form},
      {"elem-gen", task_elem_gen},
      {"eval-word", task_eval_word},
      {"commutator", task_commutator},
      {"split-square", task_split_square},
      {"conj-expand", task_conj_expand},
      {"dilate", task_dilate},
      {"patch", task_patch},
      {"reduce-diagonal", task_reduce_diagonal},
      {"nilpotent-power", task_nilpotent_power},
      {"lift-mod-nil", task_lift_mod_nil},
      {"stable-range", task_stable_range},
      {"congruence-commutator", task_congruence},
      {"nil-homotopy", task_nil_homotopy},
  };
  return t;
}

Report invalid(const std::string& why) {
  Report r;
  r.status = "invalid";
  r.witness = nullptr;
  r.add("input", false, why);
  return r;
}

}  // namespace

Report run_scenario(const json& sc) {
  Report rep;
  rep.witness = nullptr;
  try {
    if (!sc.is_object()) return invalid("scenario must be a JSON object");
    const std::string task = sc.at("task").get<std::string>();
    auto it = tasks().find(task);
    if (it == tasks().end()) return invalid("unknown task '" + task + "'");
    Ctx R = make_ring(sc.at("ring"));
    const json params = sc.value("params", json::object());
    if (!params.is_object()) return invalid("params must be an object");
    it->second(R, params, rep);
  } catch (const json::exception& e) {
    return invalid(e.what());
  } catch (const Error& e) {
    if (is_input_error(e.code())) return invalid(e.what());
    rep.add(check_for(e.code()), false, e.what());
  }
  rep.finish();
  return rep;
}

Report run_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return invalid("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json sc = json::parse(ss.str(), nullptr, false);
  if (sc.is_discarded()) return invalid("malformed JSON in " + path);
  return run_scenario(sc);
}

}  // namespace lgt
