#pragma once

// Exact arithmetic over a tower of commutative rings:
//   Z, Q, Z/N  ->  polynomial rings, monic quotients, localizations,
//   and quadratic extensions carrying the conjugation t -> -t.
//
// Contexts are interned and immutable; an element is a value that carries a
// pointer to its context plus a canonical payload. Every arithmetic result is
// canonicalized before it is returned.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "lgt/error.hpp"

namespace lgt {

class RingCtx;
using Ctx = const RingCtx*;
class RingElem;
struct MultSet;
Ctx ring_Z();
Ctx ring_Q();
Ctx ring_Zmod(const mpz_class& n);
Ctx ring_poly(Ctx parent, std::vector<std::string> vars);
// parent[var]/(modulus), modulus given low->high and monic.
Ctx ring_quotient(Ctx parent, std::string var, std::vector<RingElem> modulus);
Ctx ring_localize(Ctx parent, MultSet m);
Ctx ring_quadext(Ctx parent, RingElem d, std::string var = "t");

enum class RingKind { Z, Q, Zmod, Poly, Quotient, Localize, QuadExt };
enum class MultShape { Powers, OnePlus };

using Monomial = std::vector<std::uint32_t>;
struct Term;

class RingElem {
public:
  RingElem() = default;

  Ctx ctx() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

  // Ring equality (semantic; structural over domains).
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  RingElem pow(std::uint64_t e) const;
  RingElem conj() const;
  std::string str() const;

  // Raw payload access, meaningful per context kind.
  const mpz_class& int_value() const { return n_; }        // Z, Zmod, Q numerator
  const mpz_class& int_den() const { return d_; }          // Q denominator
  long loc_exponent() const { return k_; }                 // Localize(Powers)
  const std::vector<RingElem>& parts() const { return parts_; }
  const std::vector<Term>& terms() const { return terms_; }

private:
  friend class RingCtx;
  Ctx ctx_ = nullptr;
  mpz_class n_;
  mpz_class d_;
  long k_ = 0;
  std::vector<RingElem> parts_;
  std::vector<Term> terms_;
};

struct Term {
  Monomial mono;
  RingElem coeff;
};

struct MultSet {
  MultShape shape = MultShape::Powers;
  RingElem s;
};

class RingCtx {
public:
  RingKind kind() const { return kind_; }
  Ctx parent() const { return parent_; }
  const mpz_class& modulus_n() const { return n_; }              // Zmod
  const std::vector<std::string>& vars() const { return vars_; } // Poly
  const std::string& gen_name() const { return gen_; }           // Quotient, QuadExt
  const std::vector<RingElem>& modulus() const { return modulus_; }  // Quotient, monic, low->high
  const MultSet& multset() const { return mult_; }               // Localize
  const RingElem& quad_d() const { return qd_; }                 // QuadExt

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(const mpz_class& v) const;
  RingElem from_int(long v) const { return from_int(mpz_class(v)); }
  RingElem from_rational(const mpq_class& q) const;
  // Variable of this ring or of any ring below it in the tower.
  RingElem var(std::string_view name) const;
  bool has_var(std::string_view name) const;
  // Image of an element of an ancestor context.
  RingElem embed(const RingElem& a) const;
  bool is_ancestor_or_self(Ctx c) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem conj(const RingElem& a) const;
  bool is_zero(const RingElem& a) const;
  bool eq(const RingElem& a, const RingElem& b) const { return is_zero(sub(a, b)); }

  // Inverse when a is a unit. Throws Undecidable outside the decidable fragment.
  std::optional<RingElem> is_unit(const RingElem& a) const;
  // Minimal l with a^l = 0. Throws Undecidable outside the decidable fragment.
  std::optional<unsigned> is_nilpotent(const RingElem& a) const;
  // Some q with a = b*q, when one is found.
  std::optional<RingElem> exact_div(const RingElem& a, const RingElem& b) const;
  // Whether x lies in the principal ideal (g).
  bool in_ideal(const RingElem& x, const RingElem& g) const;

  bool is_domain() const { return domain_; }
  bool is_field() const { return field_; }
  bool is_finite() const { return finite_; }
  bool has_involution() const { return involutive_; }
  bool two_invertible() const;
  // Structural recognition of a local ring with decidable units.
  bool is_local() const;
  // Cardinality of a finite ring.
  mpz_class size() const;
  // All elements of a finite ring; throws InfiniteRing otherwise.
  std::vector<RingElem> elements() const;

  // Parses an expression such as "X/2 + 3*X^2*T - (1+t)^3".
  RingElem parse(std::string_view text) const;

  std::string to_string(const RingElem& a) const;
  nlohmann::json to_json(const RingElem& a) const;
  RingElem from_json(const nlohmann::json& j) const;
  nlohmann::json spec() const { return spec_; }
  const std::string& key() const { return key_; }

  // Polynomial helpers (Poly contexts).
  std::size_t var_index(std::string_view name) const;  // npos when absent
  RingElem monomial(const Monomial& m, const RingElem& coeff) const;

private:
  friend struct CtxFactory;
  friend Ctx ring_Z();
  friend Ctx ring_Q();
  friend Ctx ring_Zmod(const mpz_class& n);
  friend Ctx ring_poly(Ctx parent, std::vector<std::string> vars);
  friend Ctx ring_quotient(Ctx parent, std::string var, std::vector<RingElem> modulus);
  friend Ctx ring_localize(Ctx parent, MultSet m);
  friend Ctx ring_quadext(Ctx parent, RingElem d, std::string var);
  RingCtx() = default;

  RingElem make() const;
  void canon(RingElem& a) const;
  void check(const RingElem& a) const;
  bool in_multset(const RingElem& u) const;
  unsigned finite_chain_bound() const;
  std::optional<RingElem> unit_by_search(const RingElem& a) const;
  std::optional<unsigned> nil_by_powering(const RingElem& a, unsigned bound) const;

  RingKind kind_ = RingKind::Z;
  Ctx parent_ = nullptr;
  mpz_class n_;
  std::vector<std::string> vars_;
  std::string gen_;
  std::vector<RingElem> modulus_;
  MultSet mult_;
  RingElem qd_;
  bool domain_ = true;
  bool field_ = false;
  bool finite_ = false;
  bool involutive_ = false;
  nlohmann::json spec_;
  std::string key_;
};

// Builds a context from its canonical JSON encoding.
Ctx make_ring(const nlohmann::json& spec);

// Ring homomorphism p |-> p(var := value). value must live in p's context.
RingElem substitute(const RingElem& p, std::string_view var, const RingElem& value);

// Image of a under the homomorphism determined by variable names:
// base integers map through from_int / from_rational, named generators map
// to the same-named generator of the target, localization denominators must
// become units in the target.
RingElem map_into(const RingElem& a, Ctx target);

// Simultaneous substitution of named generators, landing in target.
using Assignment = std::vector<std::pair<std::string, RingElem>>;
RingElem hom_eval(const RingElem& a, Ctx target, const Assignment& assign);

// Brute-force test of the stable range condition (R_m) on a finite ring.
bool stable_range_holds(Ctx ring, unsigned m);

// Monomial order used for canonical polynomial payloads (graded lex).
bool grlex_greater(const Monomial& a, const Monomial& b);

}  // namespace lgt
