#include "lgt/rings.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace lgt {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Undecidable: return "Undecidable";
    case Errc::VariableUnknown: return "VariableUnknown";
    case Errc::InfiniteRing: return "InfiniteRing";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::OddSize: return "OddSize";
    case Errc::LinearHasNoForm: return "LinearHasNoForm";
    case Errc::BadIndices: return "BadIndices";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::OrthogonalityViolated: return "OrthogonalityViolated";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::BadCertificate: return "BadCertificate";
    case Errc::NotInModule: return "NotInModule";
    case Errc::IndexClash: return "IndexClash";
    case Errc::IndexOne: return "IndexOne";
    case Errc::NotBasedAtIdentity: return "NotBasedAtIdentity";
    case Errc::NilpotentS: return "NilpotentS";
    case Errc::BadLocalData: return "BadLocalData";
    case Errc::NotLocalRing: return "NotLocalRing";
    case Errc::NotCongruentToIdentity: return "NotCongruentToIdentity";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::InsufficientCongruence: return "InsufficientCongruence";
    case Errc::NotDiagonal: return "NotDiagonal";
    case Errc::EntryNotNilpotent: return "EntryNotNilpotent";
    case Errc::NotUnipotentModNil: return "NotUnipotentModNil";
    case Errc::FormNotPreserved: return "FormNotPreserved";
    case Errc::BadWord: return "BadWord";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::TwoNotInvertible: return "TwoNotInvertible";
    case Errc::TemplateNotFound: return "TemplateNotFound";
    case Errc::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------
// Context construction and interning

struct CtxFactory {
  static std::unique_ptr<RingCtx> blank() { return std::unique_ptr<RingCtx>(new RingCtx()); }

  static Ctx intern(std::unique_ptr<RingCtx> proto) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<RingCtx>> registry;
    proto->key_ = proto->spec_.dump();
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(proto->key_);
    if (it != registry.end()) return it->second.get();
    Ctx raw = proto.get();
    registry.emplace(proto->key_, std::move(proto));
    return raw;
  }
};

Ctx ring_Z() {
  static Ctx z = [] {
    auto c = CtxFactory::blank();
    c->kind_ = RingKind::Z;
    c->spec_ = {{"kind", "Z"}};
    return CtxFactory::intern(std::move(c));
  }();
  return z;
}

Ctx ring_Q() {
  static Ctx q = [] {
    auto c = CtxFactory::blank();
    c->kind_ = RingKind::Q;
    c->field_ = true;
    c->spec_ = {{"kind", "Q"}};
    return CtxFactory::intern(std::move(c));
  }();
  return q;
}

Ctx ring_Zmod(const mpz_class& n) {
  if (n < 2) throw Error(Errc::InvalidSpec, "Zmod requires N >= 2");
  auto c = CtxFactory::blank();
  c->kind_ = RingKind::Zmod;
  c->n_ = n;
  c->field_ = mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
  c->domain_ = c->field_;
  c->finite_ = true;
  c->spec_ = {{"kind", "Zmod"}, {"n", n.get_str()}};
  return CtxFactory::intern(std::move(c));
}

Ctx ring_poly(Ctx parent, std::vector<std::string> vars) {
  if (!parent) throw Error(Errc::InvalidSpec, "poly without parent");
  if (vars.empty()) throw Error(Errc::InvalidSpec, "poly needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty() || !seen.insert(v).second || parent->has_var(v))
      throw Error(Errc::InvalidSpec, "duplicate or empty variable name '" + v + "'");
  }
  auto c = CtxFactory::blank();
  c->kind_ = RingKind::Poly;
  c->parent_ = parent;
  c->vars_ = std::move(vars);
  c->domain_ = parent->is_domain();
  c->involutive_ = parent->has_involution();
  c->spec_ = {{"kind", "poly"}, {"parent", parent->spec()}, {"vars", c->vars_}};
  return CtxFactory::intern(std::move(c));
}

Ctx ring_quotient(Ctx parent, std::string var, std::vector<RingElem> modulus) {
  if (!parent) throw Error(Errc::InvalidSpec, "quotient without parent");
  if (modulus.size() < 2) throw Error(Errc::InvalidSpec, "quotient modulus must have degree >= 1");
  if (var.empty() || parent->has_var(var)) throw Error(Errc::InvalidSpec, "bad quotient variable");
  for (auto& m : modulus) m = parent->embed(m);
  if (!modulus.back().is_one()) throw Error(Errc::InvalidSpec, "quotient modulus must be monic");
  auto c = CtxFactory::blank();
  c->kind_ = RingKind::Quotient;
  c->parent_ = parent;
  c->gen_ = std::move(var);
  c->domain_ = false;
  c->finite_ = parent->is_finite();
  c->involutive_ = parent->has_involution();
  nlohmann::json mj = nlohmann::json::array();
  for (const auto& m : modulus) mj.push_back(parent->to_json(m));
  c->modulus_ = std::move(modulus);
  c->spec_ = {{"kind", "quotient"}, {"parent", parent->spec()}, {"var", c->gen_}, {"modulus", mj}};
  return CtxFactory::intern(std::move(c));
}

Ctx ring_localize(Ctx parent, MultSet m) {
  if (!parent) throw Error(Errc::InvalidSpec, "localize without parent");
  m.s = parent->embed(m.s);
  if (m.shape == MultShape::Powers && m.s.is_zero())
    throw Error(Errc::InvalidSpec, "localization at 0");
  if (!parent->is_domain() && !parent->is_finite())
    throw Error(Errc::InvalidSpec, "localization of an infinite non-domain is unsupported");
  if (parent->has_involution() && !parent->eq(parent->conj(m.s), m.s))
    throw Error(Errc::InvalidSpec, "multiplicative set must be fixed by the involution");
  auto c = CtxFactory::blank();
  c->kind_ = RingKind::Localize;
  c->parent_ = parent;
  c->mult_ = m;
  c->domain_ = parent->is_domain();
  c->finite_ = parent->is_finite();
  c->involutive_ = parent->has_involution();
  c->spec_ = {{"kind", "localize"},
              {"parent", parent->spec()},
              {"multset",
               {{"shape", m.shape == MultShape::Powers ? "powers" : "oneplus"},
                {"s", parent->to_json(m.s)}}}};
  return CtxFactory::intern(std::move(c));
}

Ctx ring_quadext(Ctx parent, RingElem d, std::string var) {
  if (!parent) throw Error(Errc::InvalidSpec, "quadext without parent");
  if (var.empty() || parent->has_var(var)) throw Error(Errc::InvalidSpec, "bad quadext variable");
  d = parent->embed(d);
  auto c = CtxFactory::blank();
  c->kind_ = RingKind::QuadExt;
  c->parent_ = parent;
  c->qd_ = d;
  c->gen_ = std::move(var);
  c->domain_ = false;
  c->finite_ = parent->is_finite();
  c->involutive_ = true;
  c->spec_ = {{"kind", "quadext"}, {"parent", parent->spec()}, {"d", parent->to_json(d)}, {"var", c->gen_}};
  return CtxFactory::intern(std::move(c));
}

Ctx make_ring(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
    throw Error(Errc::InvalidSpec, "ring spec must be an object with a string 'kind'");
  const std::string kind = spec["kind"];
  auto parent = [&]() -> Ctx {
    if (!spec.contains("parent")) throw Error(Errc::InvalidSpec, kind + " needs 'parent'");
    return make_ring(spec["parent"]);
  };
  try {
    if (kind == "Z") return ring_Z();
    if (kind == "Q") return ring_Q();
    if (kind == "Zmod") {
      const auto& n = spec.at("n");
      return ring_Zmod(n.is_string() ? mpz_class(n.get<std::string>()) : mpz_class(n.get<long>()));
    }
    if (kind == "poly") return ring_poly(parent(), spec.at("vars").get<std::vector<std::string>>());
    if (kind == "quotient") {
      Ctx p = parent();
      std::vector<RingElem> mod;
      for (const auto& c : spec.at("modulus")) mod.push_back(p->from_json(c));
      return ring_quotient(p, spec.value("var", std::string("t")), std::move(mod));
    }
    if (kind == "localize") {
      Ctx p = parent();
      const auto& ms = spec.at("multset");
      const std::string shape = ms.at("shape");
      MultSet m;
      if (shape == "powers") m.shape = MultShape::Powers;
      else if (shape == "oneplus") m.shape = MultShape::OnePlus;
      else throw Error(Errc::InvalidSpec, "unknown multset shape '" + shape + "'");
      m.s = p->from_json(ms.at("s"));
      return ring_localize(p, m);
    }
    if (kind == "quadext") {
      Ctx p = parent();
      return ring_quadext(p, p->from_json(spec.at("d")), spec.value("var", std::string("t")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidSpec, std::string("malformed ring spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(Errc::InvalidSpec, std::string("malformed integer in ring spec: ") + e.what());
  }
  throw Error(Errc::InvalidSpec, "unknown ring kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Element plumbing

RingElem RingCtx::make() const {
  RingElem r;
  r.ctx_ = this;
  return r;
}

void RingCtx::check(const RingElem& a) const {
  if (a.ctx_ != this)
    throw Error(Errc::ContextMismatch,
                "element of " + (a.ctx_ ? a.ctx_->key() : std::string("<null>")) + " used in " + key_);
}

RingElem RingCtx::zero() const { return from_int(mpz_class(0)); }
RingElem RingCtx::one() const { return from_int(mpz_class(1)); }

RingElem RingCtx::from_int(const mpz_class& v) const {
  RingElem r = make();
  switch (kind_) {
    case RingKind::Z: r.n_ = v; break;
    case RingKind::Q: r.n_ = v; r.d_ = 1; break;
    case RingKind::Zmod:
      r.n_ = v % n_;
      if (r.n_ < 0) r.n_ += n_;
      break;
    case RingKind::Poly: {
      RingElem c = parent_->from_int(v);
      if (!c.is_zero()) r.terms_.push_back({Monomial(vars_.size(), 0), c});
      break;
    }
    case RingKind::Quotient:
      r.parts_.assign(modulus_.size() - 1, parent_->zero());
      r.parts_[0] = parent_->from_int(v);
      break;
    case RingKind::Localize:
      r.parts_ = {parent_->from_int(v)};
      if (mult_.shape == MultShape::OnePlus) r.parts_.push_back(parent_->one());
      canon(r);
      break;
    case RingKind::QuadExt: r.parts_ = {parent_->from_int(v), parent_->zero()}; break;
  }
  return r;
}

RingElem RingCtx::from_rational(const mpq_class& q) const {
  if (kind_ == RingKind::Q) {
    RingElem r = make();
    r.n_ = q.get_num();
    r.d_ = q.get_den();
    return r;
  }
  RingElem num = from_int(q.get_num());
  if (q.get_den() == 1) return num;
  auto inv = is_unit(from_int(q.get_den()));
  if (!inv) throw Error(Errc::NotInvertible, q.get_den().get_str() + " is not a unit in " + key_);
  return mul(num, *inv);
}

std::size_t RingCtx::var_index(std::string_view name) const {
  if (kind_ != RingKind::Poly) return std::string::npos;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::string::npos;
}

bool RingCtx::has_var(std::string_view name) const {
  if (var_index(name) != std::string::npos) return true;
  if ((kind_ == RingKind::Quotient || kind_ == RingKind::QuadExt) && gen_ == name) return true;
  return parent_ && parent_->has_var(name);
}

RingElem RingCtx::var(std::string_view name) const {
  if (auto i = var_index(name); i != std::string::npos) {
    Monomial m(vars_.size(), 0);
    m[i] = 1;
    return monomial(m, parent_->one());
  }
  if ((kind_ == RingKind::Quotient || kind_ == RingKind::QuadExt) && gen_ == name) {
    RingElem r = zero();
    if (kind_ == RingKind::Quotient && r.parts_.size() == 1) {
      // degree-one modulus t + c: t = -c
      r.parts_[0] = parent_->neg(modulus_[0]);
    } else {
      r.parts_[1] = parent_->one();
    }
    return r;
  }
  if (!parent_) throw Error(Errc::VariableUnknown, "unknown variable '" + std::string(name) + "'");
  return embed(parent_->var(name));
}

bool RingCtx::is_ancestor_or_self(Ctx c) const {
  for (Ctx p = this; p; p = p->parent_)
    if (p == c) return true;
  return false;
}

RingElem RingCtx::embed(const RingElem& a) const {
  if (a.ctx_ == this) return a;
  if (!a.ctx_ || !parent_ || !parent_->is_ancestor_or_self(a.ctx_)) {
    if (a.ctx_ && a.ctx_->kind_ == RingKind::Z) return from_int(a.n_);
    throw Error(Errc::ContextMismatch,
                "cannot embed element of " + (a.ctx_ ? a.ctx_->key() : std::string("<null>")) + " into " + key_);
  }
  RingElem p = parent_->embed(a);
  RingElem r = make();
  switch (kind_) {
    case RingKind::Poly:
      if (!p.is_zero()) r.terms_.push_back({Monomial(vars_.size(), 0), p});
      break;
    case RingKind::Quotient:
      r.parts_.assign(modulus_.size() - 1, parent_->zero());
      r.parts_[0] = p;
      break;
    case RingKind::Localize:
      r.parts_ = {p};
      if (mult_.shape == MultShape::OnePlus) r.parts_.push_back(parent_->one());
      canon(r);
      break;
    case RingKind::QuadExt: r.parts_ = {p, parent_->zero()}; break;
    default: break;
  }
  return r;
}

RingElem RingCtx::monomial(const Monomial& m, const RingElem& coeff) const {
  if (kind_ != RingKind::Poly || m.size() != vars_.size())
    throw Error(Errc::ContextMismatch, "monomial shape does not match " + key_);
  RingElem r = make();
  RingElem c = parent_->embed(coeff);
  if (!c.is_zero()) r.terms_.push_back({m, c});
  return r;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

void poly_normalize(std::vector<Term>& ts, Ctx coeff_ctx) {
  std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
  std::vector<Term> out;
  out.reserve(ts.size());
  for (auto& t : ts) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = coeff_ctx->add(out.back().coeff, t.coeff);
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [&](const Term& t) { return coeff_ctx->is_zero(t.coeff); });
  ts = std::move(out);
}

}  // namespace

void RingCtx::canon(RingElem& a) const {
  switch (kind_) {
    case RingKind::Z: break;
    case RingKind::Q: {
      mpq_class q(a.n_, a.d_);
      q.canonicalize();
      a.n_ = q.get_num();
      a.d_ = q.get_den();
      break;
    }
    case RingKind::Zmod:
      a.n_ %= n_;
      if (a.n_ < 0) a.n_ += n_;
      break;
    case RingKind::Poly: poly_normalize(a.terms_, parent_); break;
    case RingKind::Quotient: break;
    case RingKind::QuadExt: break;
    case RingKind::Localize: {
      if (is_zero(a)) {
        a.parts_[0] = parent_->zero();
        a.k_ = 0;
        if (mult_.shape == MultShape::OnePlus) a.parts_[1] = parent_->one();
        break;
      }
      if (!parent_->is_domain()) break;
      if (mult_.shape == MultShape::Powers) {
        while (a.k_ > 0) {
          auto q = parent_->exact_div(a.parts_[0], mult_.s);
          if (!q) break;
          a.parts_[0] = *q;
          --a.k_;
        }
      } else if (parent_->kind_ == RingKind::Z) {
        mpz_class g = gcd(a.parts_[0].n_, a.parts_[1].n_);
        if (g > 1) {
          RingElem nd = parent_->from_int(mpz_class(a.parts_[1].n_ / g));
          if (in_multset(nd)) {
            a.parts_[0] = parent_->from_int(mpz_class(a.parts_[0].n_ / g));
            a.parts_[1] = nd;
          }
        }
      }
      break;
    }
  }
}

bool RingCtx::in_multset(const RingElem& u) const {
  if (mult_.shape == MultShape::Powers) {
    RingElem p = parent_->one();
    for (unsigned k = 0; k <= 256; ++k) {
      if (parent_->eq(p, u)) return true;
      p = parent_->mul(p, mult_.s);
    }
    return false;
  }
  return parent_->in_ideal(parent_->sub(u, parent_->one()), mult_.s);
}

unsigned RingCtx::finite_chain_bound() const {
  return static_cast<unsigned>(mpz_sizeinbase(size().get_mpz_t(), 2)) + 1;
}

// ---------------------------------------------------------------------------
// Arithmetic

RingElem RingCtx::add(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  RingElem r = make();
  switch (kind_) {
    case RingKind::Z: r.n_ = a.n_ + b.n_; break;
    case RingKind::Zmod:
      r.n_ = a.n_ + b.n_;
      if (r.n_ >= n_) r.n_ -= n_;
      break;
    case RingKind::Q: {
      mpq_class q = mpq_class(a.n_, a.d_) + mpq_class(b.n_, b.d_);
      r.n_ = q.get_num();
      r.d_ = q.get_den();
      break;
    }
    case RingKind::Poly: {
      r.terms_.reserve(a.terms_.size() + b.terms_.size());
      auto i = a.terms_.begin(), j = b.terms_.begin();
      while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && grlex_greater(i->mono, j->mono))) {
          r.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || grlex_greater(j->mono, i->mono)) {
          r.terms_.push_back(*j++);
        } else {
          RingElem c = parent_->add(i->coeff, j->coeff);
          if (!parent_->is_zero(c)) r.terms_.push_back({i->mono, std::move(c)});
          ++i;
          ++j;
        }
      }
      break;
    }
    case RingKind::Quotient:
    case RingKind::QuadExt:
      r.parts_.resize(a.parts_.size());
      for (std::size_t k = 0; k < a.parts_.size(); ++k) r.parts_[k] = parent_->add(a.parts_[k], b.parts_[k]);
      break;
    case RingKind::Localize:
      if (mult_.shape == MultShape::Powers) {
        long K = std::max(a.k_, b.k_);
        RingElem x = parent_->mul(a.parts_[0], mult_.s.pow(K - a.k_));
        RingElem y = parent_->mul(b.parts_[0], mult_.s.pow(K - b.k_));
        r.parts_ = {parent_->add(x, y)};
        r.k_ = K;
      } else {
        r.parts_ = {parent_->add(parent_->mul(a.parts_[0], b.parts_[1]), parent_->mul(b.parts_[0], a.parts_[1])),
                    parent_->mul(a.parts_[1], b.parts_[1])};
      }
      canon(r);
      break;
  }
  return r;
}

RingElem RingCtx::neg(const RingElem& a) const {
  check(a);
  RingElem r = a;
  switch (kind_) {
    case RingKind::Z:
    case RingKind::Q: r.n_ = -a.n_; break;
    case RingKind::Zmod:
      if (a.n_ != 0) r.n_ = n_ - a.n_;
      break;
    case RingKind::Poly:
      for (auto& t : r.terms_) t.coeff = parent_->neg(t.coeff);
      break;
    case RingKind::Quotient:
    case RingKind::QuadExt:
      for (auto& p : r.parts_) p = parent_->neg(p);
      break;
    case RingKind::Localize: r.parts_[0] = parent_->neg(a.parts_[0]); break;
  }
  return r;
}

RingElem RingCtx::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem RingCtx::mul(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  RingElem r = make();
  switch (kind_) {
    case RingKind::Z: r.n_ = a.n_ * b.n_; break;
    case RingKind::Zmod: r.n_ = (a.n_ * b.n_) % n_; break;
    case RingKind::Q: {
      mpq_class q = mpq_class(a.n_, a.d_) * mpq_class(b.n_, b.d_);
      r.n_ = q.get_num();
      r.d_ = q.get_den();
      break;
    }
    case RingKind::Poly: {
      if (a.terms_.empty() || b.terms_.empty()) break;
      if (a.terms_.size() == 1 && b.terms_.size() == 1) {
        Monomial m = a.terms_[0].mono;
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += b.terms_[0].mono[k];
        RingElem c = parent_->mul(a.terms_[0].coeff, b.terms_[0].coeff);
        if (!parent_->is_zero(c)) r.terms_.push_back({std::move(m), std::move(c)});
        break;
      }
      std::map<Monomial, RingElem, bool (*)(const Monomial&, const Monomial&)> acc(&grlex_greater);
      for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
          Monomial m = x.mono;
          for (std::size_t k = 0; k < m.size(); ++k) m[k] += y.mono[k];
          RingElem c = parent_->mul(x.coeff, y.coeff);
          auto it = acc.find(m);
          if (it == acc.end()) acc.emplace(std::move(m), std::move(c));
          else it->second = parent_->add(it->second, c);
        }
      }
      r.terms_.reserve(acc.size());
      for (auto& [m, c] : acc)
        if (!parent_->is_zero(c)) r.terms_.push_back({m, std::move(c)});
      break;
    }
    case RingKind::Quotient: {
      const std::size_t d = modulus_.size() - 1;
      std::vector<RingElem> prod(2 * d - 1, parent_->zero());
      for (std::size_t i = 0; i < d; ++i) {
        if (parent_->is_zero(a.parts_[i])) continue;
        for (std::size_t j = 0; j < d; ++j)
          prod[i + j] = parent_->add(prod[i + j], parent_->mul(a.parts_[i], b.parts_[j]));
      }
      for (std::size_t k = prod.size(); k-- > d;) {
        RingElem c = prod[k];
        if (parent_->is_zero(c)) continue;
        for (std::size_t i = 0; i < d; ++i)
          prod[k - d + i] = parent_->sub(prod[k - d + i], parent_->mul(c, modulus_[i]));
      }
      prod.resize(d);
      r.parts_ = std::move(prod);
      break;
    }
    case RingKind::QuadExt: {
      const auto &x = a.parts_[0], &y = a.parts_[1], &u = b.parts_[0], &v = b.parts_[1];
      r.parts_ = {parent_->add(parent_->mul(x, u), parent_->mul(qd_, parent_->mul(y, v))),
                  parent_->add(parent_->mul(x, v), parent_->mul(y, u))};
      break;
    }
    case RingKind::Localize:
      if (mult_.shape == MultShape::Powers) {
        r.parts_ = {parent_->mul(a.parts_[0], b.parts_[0])};
        r.k_ = a.k_ + b.k_;
      } else {
        r.parts_ = {parent_->mul(a.parts_[0], b.parts_[0]), parent_->mul(a.parts_[1], b.parts_[1])};
      }
      canon(r);
      break;
  }
  return r;
}

RingElem RingCtx::conj(const RingElem& a) const {
  check(a);
  if (!involutive_) return a;
  RingElem r = a;
  switch (kind_) {
    case RingKind::Poly:
      for (auto& t : r.terms_) t.coeff = parent_->conj(t.coeff);
      break;
    case RingKind::Quotient:
      for (auto& p : r.parts_) p = parent_->conj(p);
      break;
    case RingKind::QuadExt:
      r.parts_ = {parent_->conj(a.parts_[0]), parent_->neg(parent_->conj(a.parts_[1]))};
      break;
    case RingKind::Localize:
      r.parts_[0] = parent_->conj(a.parts_[0]);
      if (mult_.shape == MultShape::OnePlus) {
        r.parts_[1] = parent_->conj(a.parts_[1]);
        if (!in_multset(r.parts_[1]))
          throw Error(Errc::Undecidable, "conjugate denominator leaves the multiplicative set");
      }
      canon(r);
      break;
    default: break;
  }
  return r;
}

bool RingCtx::is_zero(const RingElem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::Z:
    case RingKind::Q:
    case RingKind::Zmod: return a.n_ == 0;
    case RingKind::Poly: return a.terms_.empty();
    case RingKind::Quotient:
    case RingKind::QuadExt:
      return std::all_of(a.parts_.begin(), a.parts_.end(), [&](const RingElem& p) { return parent_->is_zero(p); });
    case RingKind::Localize: {
      const RingElem& num = a.parts_[0];
      if (parent_->is_zero(num)) return true;
      if (parent_->is_domain()) return false;
      if (mult_.shape == MultShape::Powers) {
        RingElem p = num;
        for (unsigned j = 0, J = parent_->finite_chain_bound(); j <= J; ++j) {
          p = parent_->mul(p, mult_.s);
          if (parent_->is_zero(p)) return true;
        }
        return false;
      }
      for (const auto& r : parent_->elements()) {
        RingElem u = parent_->add(parent_->one(), parent_->mul(mult_.s, r));
        if (parent_->is_zero(parent_->mul(u, num))) return true;
      }
      return false;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// RingElem forwarding

RingElem RingElem::operator+(const RingElem& o) const { return ctx_->add(*this, o); }
RingElem RingElem::operator-(const RingElem& o) const { return ctx_->sub(*this, o); }
RingElem RingElem::operator*(const RingElem& o) const { return ctx_->mul(*this, o); }
RingElem RingElem::operator-() const { return ctx_->neg(*this); }
bool RingElem::operator==(const RingElem& o) const { return ctx_->eq(*this, o); }
bool RingElem::is_zero() const { return ctx_->is_zero(*this); }
bool RingElem::is_one() const { return ctx_->eq(*this, ctx_->one()); }
RingElem RingElem::conj() const { return ctx_->conj(*this); }
std::string RingElem::str() const { return ctx_ ? ctx_->to_string(*this) : "<null>"; }

RingElem RingElem::pow(std::uint64_t e) const {
  RingElem result = ctx_->one();
  RingElem base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace lgt
