// Text and JSON encodings, homomorphisms, and the stable range checker.

#include <algorithm>
#include <cctype>
#include <set>

#include "lgt/rings.hpp"

namespace lgt {

// ---------------------------------------------------------------------------
// Expression parser

namespace {

class Parser {
public:
  Parser(Ctx R, std::string_view s) : R_(R), s_(s) {}

  RingElem run() {
    RingElem v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '_' || c == '(';
  }

  RingElem expr() {
    RingElem v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v = v + term();
      } else if (peek('-')) {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  RingElem term() {
    RingElem v = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        v = v * unary();
      } else if (peek('/')) {
        ++pos_;
        RingElem d = unary();
        if (auto inv = R_->is_unit(d)) {
          v = v * *inv;
        } else if (auto q = R_->exact_div(v, d)) {
          v = *q;
        } else {
          throw Error(Errc::NotInvertible, "cannot divide by " + d.str() + " in " + R_->key());
        }
      } else if (starts_atom()) {
        v = v * power();  // juxtaposition, as in "3X"
      } else {
        return v;
      }
    }
  }

  RingElem unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RingElem power() {
    RingElem base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      return base.pow(std::stoull(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  RingElem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      RingElem v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return R_->from_int(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return R_->var(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }

  Ctx R_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

// True when s can be used as a left factor of a product without parentheses.
bool is_simple_factor(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return false;
  return true;
}

std::string wrap(const std::string& s) { return is_simple_factor(s) ? s : "(" + s + ")"; }

std::string join_terms(const std::vector<std::string>& ts) {
  if (ts.empty()) return "0";
  std::string out = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!ts[i].empty() && ts[i][0] == '-') out += " - " + ts[i].substr(1);
    else out += " + " + ts[i];
  }
  return out;
}

// coeff * mono, with 1 and -1 folded.
std::string scaled(const std::string& coeff, const std::string& mono) {
  if (mono.empty()) return coeff;
  if (coeff == "1") return mono;
  if (coeff == "-1") return "-" + mono;
  if (is_simple_factor(coeff)) return coeff + "*" + mono;
  return "(" + coeff + ")*" + mono;
}

}  // namespace

RingElem RingCtx::parse(std::string_view text) const { return Parser(this, text).run(); }

std::string RingCtx::to_string(const RingElem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::Z:
    case RingKind::Zmod: return a.n_.get_str();
    case RingKind::Q: return a.d_ == 1 ? a.n_.get_str() : a.n_.get_str() + "/" + a.d_.get_str();
    case RingKind::Poly: {
      std::vector<std::string> ts;
      for (const auto& t : a.terms_) {
        std::string mono;
        for (std::size_t k = 0; k < vars_.size(); ++k) {
          if (t.mono[k] == 0) continue;
          if (!mono.empty()) mono += "*";
          mono += vars_[k];
          if (t.mono[k] > 1) mono += "^" + std::to_string(t.mono[k]);
        }
        ts.push_back(scaled(parent_->to_string(t.coeff), mono));
      }
      return join_terms(ts);
    }
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      std::vector<std::string> ts;
      for (std::size_t i = 0; i < a.parts_.size(); ++i) {
        if (parent_->is_zero(a.parts_[i])) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? gen_ : gen_ + "^" + std::to_string(i));
        ts.push_back(scaled(parent_->to_string(a.parts_[i]), mono));
      }
      return join_terms(ts);
    }
    case RingKind::Localize: {
      std::string num = parent_->to_string(a.parts_[0]);
      if (mult_.shape == MultShape::Powers) {
        if (a.k_ == 0) return num;
        std::string s = parent_->to_string(mult_.s);
        if (!std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isalnum(ch) || ch == '_'; }))
          s = "(" + s + ")";
        if (a.k_ > 1) s += "^" + std::to_string(a.k_);
        return wrap(num) + "/" + s;
      }
      if (parent_->eq(a.parts_[1], parent_->one())) return num;
      return wrap(num) + "/(" + parent_->to_string(a.parts_[1]) + ")";
    }
  }
  return "?";
}

nlohmann::json RingCtx::to_json(const RingElem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::Z:
    case RingKind::Zmod:
    case RingKind::Q: return to_string(a);
    case RingKind::Poly: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& t : a.terms_) out.push_back({parent_->to_json(t.coeff), t.mono});
      return out;
    }
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& p : a.parts_) out.push_back(parent_->to_json(p));
      return out;
    }
    case RingKind::Localize: {
      RingElem den = mult_.shape == MultShape::Powers ? mult_.s.pow(static_cast<std::uint64_t>(a.k_)) : a.parts_[1];
      return nlohmann::json::array({parent_->to_json(a.parts_[0]), parent_->to_json(den)});
    }
  }
  return nullptr;
}

RingElem RingCtx::from_json(const nlohmann::json& j) const {
  if (j.is_string()) return parse(j.get<std::string>());
  if (j.is_number_integer()) return from_int(mpz_class(j.get<long>()));
  if (!j.is_array()) throw Error(Errc::ParseError, "cannot decode element " + j.dump() + " in " + key_);
  try {
    switch (kind_) {
      case RingKind::Poly: {
        RingElem r = zero();
        for (const auto& t : j) {
          if (!t.is_array() || t.size() != 2) throw Error(Errc::ParseError, "bad polynomial term " + t.dump());
          auto e = t[1].get<Monomial>();
          if (e.size() != vars_.size()) throw Error(Errc::ParseError, "exponent vector has wrong length");
          r = add(r, monomial(e, parent_->from_json(t[0])));
        }
        return r;
      }
      case RingKind::Quotient:
      case RingKind::QuadExt: {
        RingElem r = zero();
        RingElem g = var(gen_), gp = one();
        for (const auto& c : j) {
          r = add(r, mul(embed(parent_->from_json(c)), gp));
          gp = mul(gp, g);
        }
        return r;
      }
      case RingKind::Localize: {
        if (j.size() != 2) throw Error(Errc::ParseError, "localized element must be [num, den]");
        RingElem num = embed(parent_->from_json(j[0]));
        RingElem den = parent_->from_json(j[1]);
        if (!in_multset(den)) throw Error(Errc::ParseError, "denominator not in the multiplicative set");
        return mul(num, *is_unit(embed(den)));
      }
      default: break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed element: ") + e.what());
  }
  throw Error(Errc::ParseError, "cannot decode element " + j.dump() + " in " + key_);
}

// ---------------------------------------------------------------------------
// Homomorphisms

namespace {

const RingElem* lookup(const Assignment& as, std::string_view name) {
  for (const auto& [k, v] : as)
    if (k == name) return &v;
  return nullptr;
}

bool touches(Ctx c, const Assignment& as) {
  for (const auto& [k, v] : as)
    if (c->has_var(k)) return true;
  return false;
}

RingElem image_of_gen(const std::string& name, Ctx target, const Assignment& as) {
  if (const RingElem* v = lookup(as, name)) return target->embed(*v);
  return target->var(name);
}

RingElem hom_rec(const RingElem& a, Ctx target, const Assignment& as) {
  Ctx c = a.ctx();
  if (target->is_ancestor_or_self(c) && !touches(c, as)) return target->embed(a);
  switch (c->kind()) {
    case RingKind::Z: return target->from_int(a.int_value());
    case RingKind::Q: return target->from_rational(mpq_class(a.int_value(), a.int_den()));
    case RingKind::Zmod: {
      if (!target->is_zero(target->from_int(c->modulus_n())))
        throw Error(Errc::ContextMismatch, "no ring map " + c->key() + " -> " + target->key());
      return target->from_int(a.int_value());
    }
    case RingKind::Poly: {
      const auto& vars = c->vars();
      std::vector<RingElem> img;
      for (const auto& v : vars) img.push_back(image_of_gen(v, target, as));
      std::vector<std::vector<RingElem>> pw(vars.size());
      RingElem sum = target->zero();
      for (const auto& t : a.terms()) {
        RingElem m = hom_rec(t.coeff, target, as);
        for (std::size_t k = 0; k < vars.size(); ++k) {
          std::uint32_t e = t.mono[k];
          if (e == 0) continue;
          auto& cache = pw[k];
          if (cache.empty()) cache.push_back(target->one());
          while (cache.size() <= e) cache.push_back(target->mul(cache.back(), img[k]));
          m = target->mul(m, cache[e]);
        }
        sum = target->add(sum, m);
      }
      return sum;
    }
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      RingElem g = image_of_gen(c->gen_name(), target, as);
      RingElem sum = target->zero(), gp = target->one();
      for (const auto& p : a.parts()) {
        sum = target->add(sum, target->mul(hom_rec(p, target, as), gp));
        gp = target->mul(gp, g);
      }
      return sum;
    }
    case RingKind::Localize: {
      RingElem num = hom_rec(a.parts()[0], target, as);
      RingElem den = c->multset().shape == MultShape::Powers
                         ? c->multset().s.pow(static_cast<std::uint64_t>(a.loc_exponent()))
                         : a.parts()[1];
      RingElem dimg = hom_rec(den, target, as);
      auto inv = target->is_unit(dimg);
      if (!inv) throw Error(Errc::NotInvertible, "denominator " + dimg.str() + " is not a unit in " + target->key());
      return target->mul(num, *inv);
    }
  }
  throw Error(Errc::ContextMismatch, "unsupported homomorphism");
}

}  // namespace

RingElem hom_eval(const RingElem& a, Ctx target, const Assignment& assign) {
  if (!a.valid()) throw Error(Errc::ContextMismatch, "invalid element");
  for (const auto& [k, v] : assign)
    if (!a.ctx()->has_var(k) && !target->has_var(k))
      throw Error(Errc::VariableUnknown, "unknown variable '" + k + "'");
  return hom_rec(a, target, assign);
}

RingElem map_into(const RingElem& a, Ctx target) { return hom_eval(a, target, {}); }

RingElem substitute(const RingElem& p, std::string_view var, const RingElem& value) {
  Ctx c = p.ctx();
  if (!c->has_var(var)) throw Error(Errc::VariableUnknown, "unknown variable '" + std::string(var) + "'");
  return hom_eval(p, c, {{std::string(var), c->embed(value)}});
}

// ---------------------------------------------------------------------------
// Stable range

namespace {

// Whether the ideal generated by gens is the whole (finite) ring.
bool generates_unit_ideal(Ctx R, const std::vector<RingElem>& elems, const std::vector<RingElem>& gens) {
  for (const auto& g : gens)
    if (R->is_unit(g)) return true;
  std::vector<RingElem> ideal{R->zero()};
  auto contains = [&](const RingElem& x) {
    return std::any_of(ideal.begin(), ideal.end(), [&](const RingElem& y) { return R->eq(x, y); });
  };
  for (const auto& g : gens) {
    std::vector<RingElem> principal;
    for (const auto& r : elems) {
      RingElem x = R->mul(g, r);
      if (std::none_of(principal.begin(), principal.end(), [&](const RingElem& y) { return R->eq(x, y); }))
        principal.push_back(x);
    }
    std::vector<RingElem> next = ideal;
    for (const auto& a : ideal)
      for (const auto& p : principal) {
        RingElem x = R->add(a, p);
        if (std::none_of(next.begin(), next.end(), [&](const RingElem& y) { return R->eq(x, y); }))
          next.push_back(x);
      }
    ideal = std::move(next);
  }
  return contains(R->one());
}

}  // namespace

bool stable_range_holds(Ctx R, unsigned m) {
  if (!R->is_finite()) throw Error(Errc::InfiniteRing, R->key() + " is infinite");
  if (m == 0) throw Error(Errc::InvalidSpec, "stable range index must be positive");
  const auto elems = R->elements();
  const std::size_t N = elems.size();
  std::vector<std::size_t> a(m + 1, 0);
  for (;;) {
    std::vector<RingElem> row;
    for (auto i : a) row.push_back(elems[i]);
    if (generates_unit_ideal(R, elems, row)) {
      bool found = false;
      std::vector<std::size_t> x(m, 0);
      while (!found) {
        std::vector<RingElem> shortened;
        for (unsigned i = 0; i < m; ++i) shortened.push_back(R->add(row[i], R->mul(row[m], elems[x[i]])));
        if (generates_unit_ideal(R, elems, shortened)) found = true;
        std::size_t k = 0;
        while (k < m && ++x[k] == N) x[k++] = 0;
        if (k == m) break;
      }
      if (!found) return false;
    }
    std::size_t k = 0;
    while (k <= m && ++a[k] == N) a[k++] = 0;
    if (k > m) break;
  }
  return true;
}

}  // namespace lgt
