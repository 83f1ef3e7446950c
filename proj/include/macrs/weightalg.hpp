#pragma once

#include "macrs/rootsys.hpp"
#include "macrs/scalar.hpp"

namespace macrs {

// Element of the group algebra A of (1/2)P: sparse map from doubled weight
// keys to Scalars. The zero element is the empty map, so elements do not have
// to carry a ring of their own.
class Elem {
 public:
  using Map = std::unordered_map<WKey, Scalar, WKeyHash>;

  Elem() = default;

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add_term(const WKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(k, c);
    if (!fresh) {
      it->second = it->second + c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  void set_term(const WKey& k, Scalar c) {
    if (c.is_zero()) t_.erase(k);
    else t_[k] = std::move(c);
  }
  Scalar coeff(const WKey& k) const {
    auto it = t_.find(k);
    return it == t_.end() ? Scalar() : it->second;
  }

  friend Elem operator+(const Elem& a, const Elem& b) {
    Elem r = a.size() >= b.size() ? a : b;
    const Elem& s = a.size() >= b.size() ? b : a;
    for (const auto& [k, c] : s.t_) r.add_term(k, c);
    return r;
  }
  friend Elem operator-(const Elem& a, const Elem& b) {
    Elem r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k, -c);
    return r;
  }
  Elem operator-() const {
    Elem r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  friend Elem operator*(const Elem& a, const Elem& b) {
    Elem r;
    if (a.is_zero() || b.is_zero()) return r;
    const Elem& big = a.size() >= b.size() ? a : b;
    const Elem& small = a.size() >= b.size() ? b : a;
    for (const auto& [ks, cs] : small.t_)
      for (const auto& [kb, cb] : big.t_) r.add_term(ks + kb, cs * cb);
    return r;
  }
  Elem scaled(const Scalar& s) const {
    Elem r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : t_) r.add_term(k, c * s);
    return r;
  }
  bool operator==(const Elem& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (const auto& [k, c] : t_) {
      auto it = o.t_.find(k);
      if (it == o.t_.end() || !(it->second == c)) return false;
    }
    return true;
  }

  // f-bar: e^lambda -> e^{-lambda}
  Elem bar() const {
    Elem r;
    for (const auto& [k, c] : t_) r.t_.emplace(-k, c);
    return r;
  }
  Elem apply(const std::array<std::array<int32_t, kMaxRank>, kMaxRank>& mat) const {
    Elem r;
    for (const auto& [k, c] : t_) r.add_term(AdmissiblePair::apply_mat(mat, k), c);
    return r;
  }

  std::vector<std::pair<WKey, Scalar>> sorted_terms(const AdmissiblePair& P) const {
    std::vector<std::pair<WKey, Scalar>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
      int64_t ha = P.height2(a.first), hb = P.height2(b.first);
      if (ha != hb) return ha > hb;
      return lex_less(b.first, a.first);
    });
    return v;
  }

 private:
  Map t_;
};

inline Elem elem_one(RingPtr ring) {
  Elem e;
  e.add_term(WKey{}, Scalar::one(ring));
  return e;
}
inline Elem elem_monomial(const WKey& k, const Scalar& c) {
  Elem e;
  e.add_term(k, c);
  return e;
}

// m_lambda: orbit sum of a dominant weight.
inline Elem monomial_symmetric(const AdmissiblePair& P, RingPtr ring, const Wt& lambda) {
  if (!P.dominant_wt(lambda)) throw NotDominant("monomial_symmetric needs a dominant weight");
  Elem e;
  for (const auto& k : P.weyl_orbit_key(wt_to_key2(lambda))) e.add_term(k, Scalar::one(ring));
  return e;
}

// T_mu f = sum f_lambda q^{<lambda,mu>} e^lambda  (2.7)
inline Elem translate(const AdmissiblePair& P, RingPtr ring, const Wt& mu, const Elem& f) {
  Elem r;
  for (const auto& [k, c] : f.terms()) r.add_term(k, c * Scalar::q_pow(ring, P.pair_key_wt(k, mu)));
  return r;
}

inline Scalar constant_term(const Elem& f) { return f.coeff(WKey{}); }

// f(x) = sum f_lambda q^{<lambda,x>}  (2.5)
inline Scalar evaluate_at(const AdmissiblePair& P, RingPtr ring, const Elem& f, const Wt& x) {
  Scalar s = Scalar::zero(ring);
  for (const auto& [k, c] : f.terms()) s = s + c * Scalar::q_pow(ring, P.pair_key_wt(k, x));
  return s;
}

// f evaluated at rho*_k through the t-monomial rule
// e^lambda(rho*_k) = prod_o t_o^{(1/2) sum_{alpha in o+} <lambda, alpha^vee>},
// which works unchanged in symbolic and substituted rings.
inline Scalar evaluate_at_rho_star(const AdmissiblePair& P, RingPtr ring, const Elem& f) {
  Scalar s = Scalar::zero(ring);
  for (const auto& [k, c] : f.terms()) {
    Scalar term = c;
    for (int o = 0; o < P.r; ++o) {
      Rat e(0);
      for (const auto& a : P.pos_roots)
        if (a.orbit == o) e += P.pair_key_wt(k, a.covec);
      term = term * Scalar::t_pow(ring, o, e / 2);
    }
    s = s + term;
  }
  return s;
}

// sum_{w in W} w f
inline Elem symmetrize(const AdmissiblePair& P, const Elem& f) {
  Elem r;
  for (const auto& w : P.weyl_elements()) r = r + f.apply(w.mat);
  return r;
}

// ---------------------------------------------------------------------------
// Weyl characters with integer coefficients, cached per pair.

using IntMap = std::unordered_map<WKey, Int, WKeyHash>;

// Signed orbit sum sum_w eps(w) e^{w x} of a strictly dominant x (doubled key).
inline IntMap signed_orbit(const AdmissiblePair& P, const WKey& start) {
  IntMap out;
  std::vector<std::pair<WKey, int>> stack{{start, 1}};
  out.emplace(start, 1);
  while (!stack.empty()) {
    auto [k, sgn] = stack.back();
    stack.pop_back();
    for (int i = 0; i < P.n; ++i) {
      WKey im = P.apply_refl(i, k);
      if (im == k) throw Error("signed_orbit: weight on a wall");
      if (out.emplace(im, -sgn).second) stack.push_back({im, -sgn});
    }
  }
  return out;
}

class CharacterTable {
 public:
  explicit CharacterTable(const AdmissiblePair& P) : P_(P) {
    delta_ = signed_orbit(P, wt_to_key2(P.rho));
    WKey rk = wt_to_key2(P.rho);
    rho2_ = rk;
  }

  const AdmissiblePair& pair() const { return P_; }

  // chi_lambda in the e-basis (doubled keys -> integer multiplicities)
  const IntMap& chi(const Wt& lambda) const {
    WKey key = wt_to_key2(lambda);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return *it->second;
    }
    if (!P_.dominant_wt(lambda)) throw NotDominant("chi of a non-dominant weight");
    IntMap numerator = signed_orbit(P_, wt_to_key2(wt_add(lambda, P_.rho)));
    auto quotient = std::make_shared<IntMap>(divide_by_delta(std::move(numerator)));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, fresh] = cache_.emplace(key, std::move(quotient));
    return *it->second;
  }

  // coefficients of chi_lambda on the m-basis: dominant weights and weight
  // multiplicities (all nonnegative)
  std::vector<std::pair<Wt, Int>> chi_m(const Wt& lambda) const {
    const IntMap& full = chi(lambda);
    std::vector<std::pair<Wt, Int>> out;
    for (const auto& [k, c] : full)
      if (P_.dominant_key(k)) out.emplace_back(key2_to_wt(k, P_.n), c);
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      WKey ka = wt_to_key2(a.first), kb = wt_to_key2(b.first);
      int64_t ha = P_.height2(ka), hb = P_.height2(kb);
      if (ha != hb) return ha > hb;
      return lex_less(kb, ka);
    });
    return out;
  }

  // chi indexed by an arbitrary weight: 0 on walls, else eps(w) chi_mu (2.4ff)
  // returns (sign, mu)
  std::pair<int, Wt> chi_indexed(const Wt& nu) const {
    auto res = P_.make_dominant(wt_add(nu, P_.rho));
    if (res.wall) return {0, wt_zero(P_.n)};
    int sign = res.parity % 2 == 0 ? 1 : -1;
    return {sign, wt_sub(res.dom, P_.rho)};
  }

  const IntMap& delta() const { return delta_; }

  // Weyl dimension formula over R2+ (independent oracle for dim checks)
  Rat weyl_dim(const Wt& lambda) const {
    Rat num(1), den(1);
    for (int idx : P_.r2_plus) {
      const auto& a = P_.pos_roots[static_cast<size_t>(idx)];
      num *= P_.pair_wt(wt_add(lambda, P_.rho), a.covec);
      den *= P_.pair_wt(P_.rho, a.covec);
    }
    return num / den;
  }

 private:
  IntMap divide_by_delta(IntMap numerator) const {
    // ordered working map, height-then-lex descending
    auto cmp = [this](const WKey& a, const WKey& b) {
      int64_t ha = P_.height2(a), hb = P_.height2(b);
      if (ha != hb) return ha > hb;
      return lex_less(b, a);
    };
    std::map<WKey, Int, decltype(cmp)> work(cmp);
    for (auto& [k, c] : numerator) work.emplace(k, std::move(c));
    IntMap quotient;
    size_t guard = 0, cap = 4096 + 64 * numerator.size() * (delta_.size() + 1);
    while (!work.empty()) {
      if (++guard > cap) throw DivisionRemainder("character division does not terminate");
      auto it = work.begin();
      WKey lead = it->first;
      Int c = it->second;
      WKey qk = lead - rho2_;
      quotient[qk] += c;
      for (const auto& [dk, dc] : delta_) {
        WKey target = qk + dk;
        auto wit = work.find(target);
        if (wit == work.end()) {
          work.emplace(target, -(dc * c));
          if (work[target] == 0) work.erase(target);
        } else {
          wit->second -= dc * c;
          if (wit->second == 0) work.erase(wit);
        }
      }
    }
    for (auto it = quotient.begin(); it != quotient.end();) {
      if (it->second == 0) it = quotient.erase(it);
      else ++it;
    }
    return quotient;
  }

  const AdmissiblePair& P_;
  IntMap delta_;
  WKey rho2_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<WKey, std::shared_ptr<const IntMap>, WKeyHash> cache_;
};

// W-invariant element to m-basis coefficients; checks exact reconstruction.
inline std::vector<std::pair<Wt, Scalar>> to_m_basis(const AdmissiblePair& P, RingPtr ring,
                                                     const Elem& f, bool verify = true) {
  std::vector<std::pair<Wt, Scalar>> out;
  for (const auto& [k, c] : f.terms())
    if (P.dominant_key(k)) out.emplace_back(key2_to_wt(k, P.n), c);
  if (verify) {
    Elem recon;
    for (const auto& [mu, c] : out) recon = recon + monomial_symmetric(P, ring, mu).scaled(c);
    if (!(recon == f)) throw NotInvariant("element is not W-invariant");
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    WKey ka = wt_to_key2(a.first), kb = wt_to_key2(b.first);
    int64_t ha = P.height2(ka), hb = P.height2(kb);
    if (ha != hb) return ha > hb;
    return lex_less(kb, ka);
  });
  return out;
}

// Exact division f / g in the group algebra (DivisionRemainder if it fails).
inline Elem elem_exact_div(const AdmissiblePair& P, const Elem& f, const Elem& g) {
  require(!g.is_zero(), "elem_exact_div by zero");
  auto cmp = [&P](const WKey& a, const WKey& b) {
    int64_t ha = P.height2(a), hb = P.height2(b);
    if (ha != hb) return ha > hb;
    return lex_less(b, a);
  };
  std::map<WKey, Scalar, decltype(cmp)> work(cmp);
  for (const auto& [k, c] : f.terms()) work.emplace(k, c);
  auto gs = g.sorted_terms(P);
  const WKey& gl = gs.front().first;
  const Scalar& gc = gs.front().second;
  Elem q;
  size_t guard = 0, cap = 4096 + 64 * (f.size() + 1) * (g.size() + 1);
  while (!work.empty()) {
    if (++guard > cap) throw DivisionRemainder("algebra division does not terminate");
    auto it = work.begin();
    WKey lead = it->first;
    Scalar c = it->second;
    WKey qk = lead - gl;
    Scalar qc = c / gc;
    q.add_term(qk, qc);
    for (const auto& [dk, dc] : gs) {
      WKey target = qk + dk;
      auto wit = work.find(target);
      Scalar sub = qc * dc;
      if (wit == work.end()) {
        Scalar v = -sub;
        if (!v.is_zero()) work.emplace(target, std::move(v));
      } else {
        wit->second = wit->second - sub;
        if (wit->second.is_zero()) work.erase(wit);
      }
    }
  }
  return q;
}

// delta as an algebra element over a given ring
inline Elem delta_elem(const AdmissiblePair& P, RingPtr ring, const IntMap& delta) {
  Elem d;
  for (const auto& [k, c] : delta) d.add_term(k, Scalar::from_rat(ring, Rat(c)));
  return d;
}

}  // namespace macrs
