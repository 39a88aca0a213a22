#include "lgt/commcalc.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace lgt {

namespace {

Ctx common_ctx(Ctx a, Ctx b) {
  if (a->is_ancestor_or_self(b)) return a;
  if (b->is_ancestor_or_self(a)) return b;
  throw Error(Errc::ContextMismatch, "no common context for " + a->key() + " and " + b->key());
}

bool valid_gen(FormKind kind, int n, int i, int j) {
  try {
    validate_gen(kind, n, i, j);
    return true;
  } catch (const Error&) {
    return false;
  }
}

ElemGen plain(FormKind kind, int n, int i, int j, const RingElem& a) { return ElemGen{kind, n, i, j, a, 1}; }

Mat eval_comm(const ElemGen& a, const ElemGen& b, Ctx ctx) {
  return eval_word({a, b, a.inverse(), b.inverse()}, ctx, static_cast<std::size_t>(a.n));
}

bool peel_rec(const Mat& M, FormKind kind, int depth, Word& acc) {
  if (M.is_identity()) return true;
  if (depth == 0) return false;
  const int n = static_cast<int>(M.rows());
  for (int p = 1; p <= n; ++p)
    for (int q = 1; q <= n; ++q) {
      if (p == q || M(p - 1, q - 1).is_zero() || !valid_gen(kind, n, p, q)) continue;
      // (p,q) and its flip name the same generator; try only one of them.
      if (kind != FormKind::Linear && q != sigma_index(p) && std::make_pair(sigma_index(q), sigma_index(p)) < std::make_pair(p, q) &&
          !M(sigma_index(q) - 1, sigma_index(p) - 1).is_zero())
        continue;
      ElemGen g = plain(kind, n, p, q, M(p - 1, q - 1));
      Mat next = M;
      apply_gen_left(g.inverse(), next);
      acc.push_back(g);
      if (peel_rec(next, kind, depth - 1, acc)) return true;
      acc.pop_back();
    }
  return false;
}

// Symbolic rings for templates.
Ctx conj_ring() { return ring_poly(ring_Z(), {"__c", "__P"}); }
Ctx split_ring() { return ring_poly(ring_Q(), {"__m", "__T"}); }

struct SplitTemplate {
  Word word;
  bool needs_half = false;
};

std::mutex g_cache_mu;
std::map<std::tuple<int, int, int, int, int, int>, Word> g_conj_cache;
std::map<std::tuple<int, int, int, int, int>, SplitTemplate> g_split_cache;

Word conj_template(const ElemGen& x, const ElemGen& g) {
  auto key = std::make_tuple(static_cast<int>(x.kind), x.n, x.i, x.j, g.i, g.j);
  {
    std::lock_guard<std::mutex> lk(g_cache_mu);
    auto it = g_conj_cache.find(key);
    if (it != g_conj_cache.end()) return it->second;
  }
  Ctx S = conj_ring();
  ElemGen xs = plain(x.kind, x.n, x.i, x.j, S->var("__c"));
  ElemGen gs = plain(g.kind, g.n, g.i, g.j, S->var("__P"));
  Mat C = eval_comm(xs, gs, S);
  auto w = peel(C, x.kind, 6);
  if (!w)
    throw Error(Errc::TemplateNotFound, "no conjugation template for (" + std::to_string(x.i) + "," +
                                            std::to_string(x.j) + ") on (" + std::to_string(g.i) + "," +
                                            std::to_string(g.j) + ")");
  std::lock_guard<std::mutex> lk(g_cache_mu);
  g_conj_cache.emplace(key, *w);
  return *w;
}

SplitTemplate search_split(FormKind kind, int n, int i, int j, int pivot) {
  Ctx S = split_ring();
  const RingElem m = S->var("__m"), T = S->var("__T");
  const Mat target = gen_matrix(plain(kind, n, i, j, T * T * m), S);
  std::vector<int> mids{pivot};
  if (kind != FormKind::Linear) mids.push_back(sigma_index(pivot));
  const RingElem half = S->from_rational(mpq_class(1, 2));
  for (int k : mids) {
    if (!valid_gen(kind, n, i, k) || !valid_gen(kind, n, k, j)) continue;
    for (int h = 0; h < 2; ++h)
      for (int sgn : {1, -1})
        for (int place = 0; place < 2; ++place) {
          RingElem c = S->from_int(sgn) * (h ? half : S->one());
          RingElem a1 = place == 0 ? c * T * m : c * T;
          RingElem a2 = place == 0 ? T : T * m;
          ElemGen A = plain(kind, n, i, k, a1), B = plain(kind, n, k, j, a2);
          if (eval_comm(A, B, S) == target) {
            Word w{A, B, A.inverse(), B.inverse()};
            for (auto& g : w) g = normalize_to(g, pivot);
            return {w, h == 1};
          }
        }
  }
  throw Error(Errc::TemplateNotFound, "no splitting template for (" + std::to_string(i) + "," + std::to_string(j) +
                                          ") through " + std::to_string(pivot));
}

SplitTemplate split_template(FormKind kind, int n, int i, int j, int pivot) {
  auto key = std::make_tuple(static_cast<int>(kind), n, i, j, pivot);
  {
    std::lock_guard<std::mutex> lk(g_cache_mu);
    auto it = g_split_cache.find(key);
    if (it != g_split_cache.end()) return it->second;
  }
  SplitTemplate t = search_split(kind, n, i, j, pivot);
  std::lock_guard<std::mutex> lk(g_cache_mu);
  g_split_cache.emplace(key, t);
  return t;
}

Word instantiate(const Word& tmpl, Ctx target, const Assignment& as) {
  Word out;
  out.reserve(tmpl.size());
  for (const auto& g : tmpl) {
    RingElem a = hom_eval(g.value(), target, as);
    if (!a.is_zero()) out.push_back(plain(g.kind, g.n, g.i, g.j, a));
  }
  return out;
}

}  // namespace

std::optional<Word> peel(const Mat& C, FormKind kind, int max_len) {
  Word acc;
  if (peel_rec(C, kind, max_len, acc)) return acc;
  return std::nullopt;
}

ElemGen flip_gen(const ElemGen& g) {
  if (g.kind == FormKind::Linear || g.short_root()) return g;
  RingElem v = g.value();
  RingElem b = v.ctx()->from_int(paired_sign(g.kind, g.i, g.j)) * v.conj();
  return plain(g.kind, g.n, sigma_index(g.j), sigma_index(g.i), b);
}

bool touches(const ElemGen& g, int pivot) { return g.i == pivot || g.j == pivot; }

ElemGen normalize_to(const ElemGen& g, int pivot) {
  if (touches(g, pivot)) return g;
  ElemGen f = flip_gen(g);
  return touches(f, pivot) ? f : g;
}

bool same_root(const ElemGen& a, const ElemGen& b) {
  if (a.i == b.i && a.j == b.j) return true;
  return a.kind != FormKind::Linear && a.i == sigma_index(b.j) && a.j == sigma_index(b.i);
}

bool opposite_root(const ElemGen& a, const ElemGen& b) {
  if (a.i == b.j && a.j == b.i) return true;
  return a.kind != FormKind::Linear && a.i == sigma_index(b.i) && a.j == sigma_index(b.j);
}

Word conjugate_gen(const ElemGen& x, const ElemGen& g) {
  if (g.value().is_zero()) return {};
  if (x.value().is_zero() || same_root(x, g)) return {g};
  if (opposite_root(x, g)) throw Error(Errc::TemplateNotFound, "conjugation by the opposite root group");
  Ctx target = common_ctx(x.param.ctx(), g.param.ctx());
  Word w = instantiate(conj_template(x, g), target,
                       {{"__c", target->embed(x.value())}, {"__P", target->embed(g.value())}});
  w.push_back(g);
  return w;
}

CommutatorResult commutator_relation(FormKind kind, int n, int i, int k, int j, const RingElem& x,
                                     const RingElem& y) {
  if (i == k || k == j || i == j) throw Error(Errc::IndexClash, "indices must be pairwise distinct");
  if (!valid_gen(kind, n, i, k) || !valid_gen(kind, n, k, j))
    throw Error(Errc::IndexClash, "no generators (" + std::to_string(i) + "," + std::to_string(k) + ") and (" +
                                      std::to_string(k) + "," + std::to_string(j) + ") for this kind");
  Ctx R = common_ctx(x.ctx(), y.ctx());
  const Mat C = eval_comm(plain(kind, n, i, k, R->embed(x)), plain(kind, n, k, j, R->embed(y)), R);
  CommutatorResult res;
  if (C.is_identity()) return res;
  if (valid_gen(kind, n, i, j)) {
    const RingElem xy = R->embed(x) * R->embed(y);
    for (long z : {1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L}) {
      ElemGen g = plain(kind, n, i, j, R->from_int(z) * xy);
      if (gen_matrix(g, R) == C) {
        res.single = true;
        res.z = z;
        res.word = {g};
        return res;
      }
    }
  }
  auto w = peel(C, kind, 6);
  if (!w) throw Error(Errc::TemplateNotFound, "commutator is not a short product of generators");
  res.word = *w;
  return res;
}

Word split_square(FormKind kind, int n, int i, int j, const RingElem& mu, const RingElem& T, int pivot) {
  if (i == pivot || j == pivot) throw Error(Errc::IndexOne, "split target touches the pivot index");
  validate_gen(kind, n, i, j);
  Ctx R = common_ctx(mu.ctx(), T.ctx());
  if (mu.is_zero() || T.is_zero()) return {};
  const RingElem m = R->embed(mu), t = R->embed(T);
  if (kind != FormKind::Linear) {
    const int sp = sigma_index(pivot);
    if (i == sp || j == sp) return {normalize_to(plain(kind, n, i, j, t * t * m), pivot)};
  }
  SplitTemplate tm = split_template(kind, n, i, j, pivot);
  if (tm.needs_half && !R->two_invertible())
    throw Error(Errc::TwoNotInvertible, "splitting a short root needs 1/2 in " + R->key());
  return instantiate(tm.word, R, {{"__m", m}, {"__T", t}});
}

int pick_pivot(FormKind kind, int n, int p, int q) {
  if (kind == FormKind::Linear) {
    for (int k = 1; k <= n; ++k)
      if (k != p && k != q) return k;
    return 0;
  }
  auto pair = [](int a) { return (a + 1) / 2; };
  for (int k = 1; k <= n; k += 2)
    if (pair(k) != pair(p) && pair(k) != pair(q)) return k;
  return 0;
}

ConjugationExpansion conjugation_expand(FormKind kind, int n, const Word& eps, int p, int q, unsigned m,
                                        const RingElem& Y, const std::string& X) {
  if (m == 0) throw Error(Errc::InvalidSpec, "m must be positive");
  validate_gen(kind, n, p, q);
  Ctx W = Y.ctx();
  if (!W->has_var(X)) throw Error(Errc::VariableUnknown, "unknown variable '" + X + "'");
  const RingElem x = W->var(X);
  const std::size_t r = eps.size();
  if (r > 30) throw Error(Errc::InvalidSpec, "conjugator too long");
  unsigned long D = static_cast<unsigned long>(m) << r;

  Word cur;
  RingElem top = x.pow(D) * Y;
  if (!top.is_zero()) cur.push_back(make_gen(kind, n, p, q, top));

  for (std::size_t t = r; t-- > 0;) {
    ElemGen e = eps[t];
    e.param = W->embed(e.param);
    const unsigned long half = D / 2;
    Word next;
    for (const auto& g : cur) {
      if (!opposite_root(e, g)) {
        Word w = conjugate_gen(e, g);
        next.insert(next.end(), w.begin(), w.end());
        continue;
      }
      int pv = pick_pivot(kind, n, g.i, g.j);
      if (pv == 0) throw Error(Errc::TemplateNotFound, "no pivot index available for an opposite root");
      auto h = W->exact_div(g.value(), x.pow(D));
      if (!h) throw Error(Errc::CheckFailed, "parameter lost divisibility");
      for (const auto& piece : split_square(kind, n, g.i, g.j, *h, x.pow(half), pv)) {
        Word w = conjugate_gen(e, piece);
        next.insert(next.end(), w.begin(), w.end());
      }
    }
    cur = std::move(next);
    D = half;
  }

  ConjugationExpansion out;
  out.m = m;
  const RingElem xm = x.pow(m);
  for (const auto& g : cur) {
    auto h = W->exact_div(g.value(), xm);
    if (!h) throw Error(Errc::CheckFailed, "output parameter not divisible by X^m");
    out.h.push_back(*h);
  }
  out.output = std::move(cur);
  return out;
}

}  // namespace lgt
