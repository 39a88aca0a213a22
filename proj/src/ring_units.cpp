// Units, nilpotents, divisibility and enumeration for the ring tower.

#include <algorithm>

#include "lgt/rings.hpp"

namespace lgt {

namespace {

unsigned bitlen(const mpz_class& v) {
  return v == 0 ? 1u : static_cast<unsigned>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

bool is_prime_power(mpz_class n) {
  n = abs(n);
  if (n < 2) return false;
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

// Cofactor-expansion determinant; used for the small companion-style
// multiplication matrices of monic quotients.
RingElem small_det(Ctx R, const std::vector<std::vector<RingElem>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return R->one();
  if (n == 1) return m[0][0];
  RingElem acc = R->zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<RingElem>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RingElem> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    RingElem t = m[0][j] * small_det(R, minor);
    acc = (j % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

}  // namespace

std::optional<unsigned> RingCtx::nil_by_powering(const RingElem& a, unsigned bound) const {
  RingElem p = a;
  for (unsigned l = 1; l <= bound; ++l) {
    if (is_zero(p)) return l;
    p = mul(p, a);
  }
  return std::nullopt;
}

std::optional<RingElem> RingCtx::unit_by_search(const RingElem& a) const {
  RingElem e = one();
  for (const auto& b : elements())
    if (eq(mul(a, b), e)) return b;
  return std::nullopt;
}

mpz_class RingCtx::size() const {
  switch (kind_) {
    case RingKind::Zmod: return n_;
    case RingKind::Quotient: {
      mpz_class p = parent_->size(), r = 1;
      for (std::size_t i = 0; i + 1 < modulus_.size(); ++i) r *= p;
      return r;
    }
    case RingKind::QuadExt: {
      mpz_class p = parent_->size();
      return p * p;
    }
    case RingKind::Localize:
      if (finite_) return mpz_class(static_cast<unsigned long>(elements().size()));
      break;
    default: break;
  }
  throw Error(Errc::InfiniteRing, key_ + " is infinite");
}

std::vector<RingElem> RingCtx::elements() const {
  std::vector<RingElem> out;
  switch (kind_) {
    case RingKind::Zmod:
      for (mpz_class v = 0; v < n_; ++v) out.push_back(from_int(v));
      return out;
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      const std::size_t d = kind_ == RingKind::QuadExt ? 2 : modulus_.size() - 1;
      const auto base = parent_->elements();
      std::vector<std::size_t> idx(d, 0);
      for (;;) {
        RingElem r = make();
        for (std::size_t i = 0; i < d; ++i) r.parts_.push_back(base[idx[i]]);
        out.push_back(std::move(r));
        std::size_t i = 0;
        while (i < d && ++idx[i] == base.size()) idx[i++] = 0;
        if (i == d) break;
      }
      return out;
    }
    case RingKind::Localize:
      if (!finite_) break;
      // A localization of a finite ring is a quotient of it.
      for (const auto& b : parent_->elements()) {
        RingElem e = embed(b);
        if (std::none_of(out.begin(), out.end(), [&](const RingElem& x) { return eq(x, e); }))
          out.push_back(std::move(e));
      }
      return out;
    default: break;
  }
  throw Error(Errc::InfiniteRing, key_ + " is infinite");
}

std::optional<RingElem> RingCtx::is_unit(const RingElem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::Z:
      if (a.n_ == 1 || a.n_ == -1) return a;
      return std::nullopt;
    case RingKind::Q: {
      if (a.n_ == 0) return std::nullopt;
      RingElem r = make();
      r.n_ = a.d_;
      r.d_ = a.n_;
      canon(r);
      return r;
    }
    case RingKind::Zmod: {
      mpz_class inv;
      if (!mpz_invert(inv.get_mpz_t(), a.n_.get_mpz_t(), n_.get_mpz_t())) return std::nullopt;
      if (n_ == 1) return zero();
      return from_int(inv);
    }
    case RingKind::Poly: {
      if (a.terms_.empty()) return std::nullopt;
      // Constant term is the last one in graded order.
      const Term& last = a.terms_.back();
      const bool has_const = std::all_of(last.mono.begin(), last.mono.end(), [](auto e) { return e == 0; });
      if (!has_const) return std::nullopt;
      auto c0inv = parent_->is_unit(last.coeff);
      if (!c0inv) return std::nullopt;
      if (a.terms_.size() == 1) return embed(*c0inv);
      if (parent_->is_domain()) return std::nullopt;
      for (std::size_t i = 0; i + 1 < a.terms_.size(); ++i)
        if (!parent_->is_nilpotent(a.terms_[i].coeff)) return std::nullopt;
      // a = c0 (1 + n) with n nilpotent; invert by the finite geometric series.
      RingElem c = embed(*c0inv);
      RingElem nn = sub(mul(a, c), one());
      RingElem minus_n = neg(nn), term = one(), sum = one();
      for (unsigned k = 0; k < 4096; ++k) {
        term = mul(term, minus_n);
        if (is_zero(term)) return mul(sum, c);
        sum = add(sum, term);
      }
      throw Error(Errc::Undecidable, "nilpotent series did not terminate in " + key_);
    }
    case RingKind::QuadExt: {
      RingElem N = parent_->sub(parent_->mul(a.parts_[0], a.parts_[0]),
                                parent_->mul(qd_, parent_->mul(a.parts_[1], a.parts_[1])));
      auto Ninv = parent_->is_unit(N);
      if (!Ninv) return std::nullopt;
      RingElem r = make();
      r.parts_ = {parent_->mul(a.parts_[0], *Ninv), parent_->neg(parent_->mul(a.parts_[1], *Ninv))};
      return r;
    }
    case RingKind::Quotient: {
      // a is a unit iff multiplication by a on the free parent-module is
      // invertible, i.e. iff its determinant is a unit of the parent.
      const std::size_t d = modulus_.size() - 1;
      if (d > 7) {
        if (finite_) return unit_by_search(a);
        throw Error(Errc::Undecidable, "unit test in quotient of degree > 7");
      }
      std::vector<std::vector<RingElem>> M(d, std::vector<RingElem>(d));
      RingElem col = a;
      RingElem t = var(gen_);
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) M[i][j] = col.parts_[i];
        col = mul(col, t);
      }
      RingElem D = small_det(parent_, M);
      auto Dinv = parent_->is_unit(D);
      if (!Dinv) return std::nullopt;
      // Solve M x = e_0 by Cramer's rule.
      RingElem r = make();
      r.parts_.resize(d);
      for (std::size_t j = 0; j < d; ++j) {
        auto Mj = M;
        for (std::size_t i = 0; i < d; ++i) Mj[i][j] = i == 0 ? parent_->one() : parent_->zero();
        r.parts_[j] = parent_->mul(small_det(parent_, Mj), *Dinv);
      }
      return r;
    }
    case RingKind::Localize: {
      const RingElem& num = a.parts_[0];
      if (finite_) return unit_by_search(a);
      if (mult_.shape == MultShape::Powers) {
        // num/s^k is a unit iff num divides some power of s.
        unsigned J = parent_->kind_ == RingKind::Z ? bitlen(num.n_) + 1 : 64;
        RingElem sj = parent_->one();
        for (unsigned j = 0; j <= J; ++j) {
          if (auto x = parent_->exact_div(sj, num)) {
            // inverse = s^k * x / s^j
            RingElem r = make();
            r.parts_ = {parent_->mul(*x, mult_.s.pow(a.k_))};
            r.k_ = j;
            canon(r);
            return r;
          }
          sj = parent_->mul(sj, mult_.s);
        }
        if (parent_->kind_ == RingKind::Z || parent_->is_field()) return std::nullopt;
        throw Error(Errc::Undecidable, "unit test in " + key_);
      }
      if (parent_->kind_ == RingKind::Z) {
        const mpz_class s = abs(mult_.s.n_);
        mpz_class x;
        if (s == 1) x = 1;
        else if (!mpz_invert(x.get_mpz_t(), num.n_.get_mpz_t(), s.get_mpz_t())) return std::nullopt;
        // num * x lies in 1 + sZ.
        RingElem r = make();
        r.parts_ = {parent_->mul(a.parts_[1], parent_->from_int(x)), parent_->mul(num, parent_->from_int(x))};
        canon(r);
        return r;
      }
      if (parent_->is_field()) {
        if (parent_->is_zero(num)) return std::nullopt;
        RingElem r = make();
        r.parts_ = {parent_->mul(a.parts_[1], *parent_->is_unit(num)), parent_->one()};
        return r;
      }
      throw Error(Errc::Undecidable, "unit test in " + key_);
    }
  }
  return std::nullopt;
}

std::optional<unsigned> RingCtx::is_nilpotent(const RingElem& a) const {
  check(a);
  if (is_zero(a)) return 1u;
  if (domain_) return std::nullopt;
  switch (kind_) {
    case RingKind::Zmod: return nil_by_powering(a, bitlen(n_));
    case RingKind::Poly: {
      unsigned bound = 1;
      for (const auto& t : a.terms_) {
        auto l = parent_->is_nilpotent(t.coeff);
        if (!l) return std::nullopt;
        bound += *l - 1;
      }
      return nil_by_powering(a, bound);
    }
    case RingKind::Quotient:
    case RingKind::QuadExt: {
      if (finite_) return nil_by_powering(a, finite_chain_bound());
      if (parent_->is_domain()) {
        // Embeds in a finite-dimensional algebra over the fraction field.
        unsigned d = kind_ == RingKind::QuadExt ? 2u : static_cast<unsigned>(modulus_.size() - 1);
        return nil_by_powering(a, d);
      }
      break;
    }
    case RingKind::Localize:
      if (finite_) return nil_by_powering(a, finite_chain_bound());
      break;
    default: break;
  }
  throw Error(Errc::Undecidable, "nilpotency test in " + key_);
}

std::optional<RingElem> RingCtx::exact_div(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  if (is_zero(a)) return zero();
  if (is_zero(b)) return std::nullopt;
  switch (kind_) {
    case RingKind::Z:
      if (!mpz_divisible_p(a.n_.get_mpz_t(), b.n_.get_mpz_t())) return std::nullopt;
      return from_int(mpz_class(a.n_ / b.n_));
    case RingKind::Q: return mul(a, *is_unit(b));
    case RingKind::Zmod: {
      mpz_class g = gcd(b.n_, n_);
      if (!mpz_divisible_p(a.n_.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
      mpz_class m = n_ / g, inv;
      if (m == 1) return zero();
      mpz_class bb = b.n_ / g;
      mpz_invert(inv.get_mpz_t(), bb.get_mpz_t(), m.get_mpz_t());
      return from_int(mpz_class((a.n_ / g) * inv % m));
    }
    case RingKind::Poly: {
      if (auto binv = is_unit(b)) return mul(a, *binv);
      const Term& lb = b.terms_.front();
      RingElem q = zero(), rem = a;
      for (unsigned it = 0; !is_zero(rem); ++it) {
        if (it > 100000) throw Error(Errc::Undecidable, "polynomial division did not terminate");
        const Term& lr = rem.terms_.front();
        Monomial m(lr.mono.size());
        for (std::size_t k = 0; k < m.size(); ++k) {
          if (lr.mono[k] < lb.mono[k]) return std::nullopt;
          m[k] = lr.mono[k] - lb.mono[k];
        }
        auto c = parent_->exact_div(lr.coeff, lb.coeff);
        if (!c) return std::nullopt;
        RingElem step = monomial(m, *c);
        q = add(q, step);
        rem = sub(rem, mul(step, b));
      }
      return q;
    }
    case RingKind::Localize: {
      if (auto binv = is_unit(b)) return mul(a, *binv);
      if (finite_) break;
      if (mult_.shape == MultShape::Powers) {
        // a = x/s^i, b = y/s^j; look for z with x s^t = y z.
        const RingElem &x = a.parts_[0], &y = b.parts_[0];
        unsigned T = parent_->kind_ == RingKind::Z ? bitlen(y.n_) + 1 : 64;
        RingElem xs = x;
        for (unsigned t = 0; t <= T; ++t) {
          if (auto z = parent_->exact_div(xs, y)) {
            RingElem r = make();
            long e = a.k_ + static_cast<long>(t) - b.k_;
            r.parts_ = {e >= 0 ? *z : parent_->mul(*z, mult_.s.pow(static_cast<std::uint64_t>(-e)))};
            r.k_ = std::max(e, 0L);
            canon(r);
            return r;
          }
          xs = parent_->mul(xs, mult_.s);
        }
        return std::nullopt;
      }
      if (parent_->kind_ == RingKind::Z) {
        // Split y = y1 * y2 with y1 supported on primes of s and y2 a unit here.
        mpz_class y1 = 1, y2 = b.parts_[0].n_, g;
        const mpz_class s = abs(mult_.s.n_);
        while ((g = gcd(y2, s)) > 1) {
          y2 /= g;
          y1 *= g;
        }
        if (!mpz_divisible_p(a.parts_[0].n_.get_mpz_t(), y1.get_mpz_t())) return std::nullopt;
        RingElem r = make();
        r.parts_ = {parent_->from_int(mpz_class(a.parts_[0].n_ / y1)), a.parts_[1]};
        canon(r);
        RingElem inv_b_unit = *is_unit(embed(parent_->from_int(y2)));
        RingElem den_b = embed(b.parts_[1]);
        return mul(mul(r, den_b), inv_b_unit);
      }
      break;
    }
    case RingKind::Quotient:
    case RingKind::QuadExt:
      if (auto binv = is_unit(b)) return mul(a, *binv);
      break;
  }
  if (finite_) {
    for (const auto& q : elements())
      if (eq(mul(b, q), a)) return q;
    return std::nullopt;
  }
  return std::nullopt;
}

bool RingCtx::in_ideal(const RingElem& x, const RingElem& g) const { return exact_div(x, g).has_value(); }

bool RingCtx::two_invertible() const {
  try {
    return is_unit(from_int(2)).has_value();
  } catch (const Error&) {
    return false;
  }
}

bool RingCtx::is_local() const {
  if (field_) return true;
  switch (kind_) {
    case RingKind::Zmod: return is_prime_power(n_);
    case RingKind::Localize:
      if (parent_->kind_ == RingKind::Z && mult_.shape == MultShape::OnePlus) return is_prime_power(mult_.s.n_);
      break;
    default: break;
  }
  if (!finite_) return false;
  // Finite ring: local iff the non-units are closed under addition.
  std::vector<RingElem> nonunits;
  for (const auto& e : elements())
    if (!is_unit(e)) nonunits.push_back(e);
  if (nonunits.size() > 2000) throw Error(Errc::Undecidable, "locality check too large for " + key_);
  for (std::size_t i = 0; i < nonunits.size(); ++i)
    for (std::size_t j = i; j < nonunits.size(); ++j)
      if (is_unit(add(nonunits[i], nonunits[j]))) return false;
  return true;
}

}  // namespace lgt
