#pragma once

#include <memory>
#include <sstream>

#include "macrs/poly.hpp"

namespace macrs {

// A Scalar lives in one of these coefficient rings.
//
//   SymbolicQT   q^(1/D) and one parameter per W-orbit of R; for BC pairs the
//                parameter of the doubled-root orbit enters through its square
//                root v (t_{2a} = v^2). t-exponents are stored in half steps.
//   SubstitutedQ integer k substituted, t_a = q_a^{k_a}: univariate in q^(1/D).
//   Probed       no symbols; q (and t for t-only pipelines) carry fixed
//                rational values, all arithmetic is over Q.
//   TOnly        the q-free ring Q(t_1,..,v) for Hall-Littlewood / Poincare.
//   KSymbolic    Q(k_1,..,k_r) for the q->1 limit at symbolic multiplicities.
//   KRational    no symbols, k fixed rationals (q->1 limit pipeline).
enum class RingKind { SymbolicQT, SubstitutedQ, Probed, TOnly, KSymbolic, KRational };

struct ScalarRing {
  RingKind kind = RingKind::SubstitutedQ;
  int r = 1;               // number of root orbits
  bool bc = false;         // last orbit's parameter represented by v
  int D = 4;               // q-exponent denominator (variable 0 = q^(1/D))
  std::vector<int> u;      // u_alpha per orbit
  std::vector<Rat> k;      // k_alpha per orbit (integers unless KRational)
  bool probe_t_direct = false;       // probed t-only pipeline
  Rat probe_q;                       // value of q^(1/D)
  std::vector<Rat> probe_thalf;      // value of t_o^(1/2) per orbit

  int nvars() const {
    switch (kind) {
      case RingKind::SymbolicQT: return 1 + r;
      case RingKind::SubstitutedQ: return 1;
      case RingKind::Probed: return 0;
      case RingKind::TOnly: return r;
      case RingKind::KSymbolic: return r;
      case RingKind::KRational: return 0;
    }
    return 0;
  }
  // Variable slot of orbit o's parameter, or -1 when substituted away.
  int t_slot(int o) const {
    if (kind == RingKind::SymbolicQT) return 1 + o;
    if (kind == RingKind::TOnly) return o;
    return -1;
  }
  bool t_is_v(int o) const { return bc && o == r - 1; }
  std::string var_name(int slot) const {
    if (kind == RingKind::KSymbolic) return "k" + std::to_string(slot + 1);
    int base = (kind == RingKind::TOnly) ? 0 : 1;
    if (kind != RingKind::TOnly && slot == 0) return "q";
    int o = slot - base;
    if (t_is_v(o)) return "v";
    return "t" + std::to_string(o + 1);
  }
  // Denominator of the printed exponent for one stored unit.
  long unit_den(int slot) const {
    if (kind == RingKind::KSymbolic) return 1;
    if (kind != RingKind::TOnly && slot == 0) return D;
    int o = slot - ((kind == RingKind::TOnly) ? 0 : 1);
    return t_is_v(o) ? 1 : 2;
  }
};

using RingPtr = const ScalarRing*;

namespace detail {
inline bool poly_less(const Poly& a, const Poly& b) {
  auto ta = a.sorted_terms(), tb = b.sorted_terms();
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  for (size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first) return lex_less(ta[i].first, tb[i].first);
    if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second;
  }
  return false;
}
}  // namespace detail

// Exact rational function, kept as  c * x^m * num / prod(den_i)  with num and
// every den factor primitive integer Laurent-normalized polynomials whose
// lex-leading coefficient is positive. Equality, arithmetic and substitution
// are exact; cancellation uses trial exact division plus univariate gcd.
class Scalar {
 public:
  Scalar() : ring_(nullptr), c_(0), num_(Poly::constant(1)) {}

  static Scalar zero(RingPtr ring) {
    Scalar s;
    s.ring_ = ring;
    return s;
  }
  static Scalar from_rat(RingPtr ring, const Rat& v) {
    Scalar s;
    s.ring_ = ring;
    s.c_ = v;
    return s;
  }
  static Scalar one(RingPtr ring) { return from_rat(ring, Rat(1)); }

  static Scalar q_pow(RingPtr ring, const Rat& e) {
    if (e == 0) return one(ring);
    switch (ring->kind) {
      case RingKind::SymbolicQT:
      case RingKind::SubstitutedQ: {
        Rat scaled = e * ring->D;
        require(is_integral(scaled), "q exponent outside the 1/D lattice");
        Scalar s = one(ring);
        s.m_.e[0] = static_cast<int32_t>(to_long(scaled));
        return s;
      }
      case RingKind::Probed: {
        Rat scaled = e * ring->D;
        require(is_integral(scaled), "q exponent outside the 1/D lattice");
        return from_rat(ring, rat_pow(ring->probe_q, to_long(scaled)));
      }
      default:
        require(false, "q-power in a q-free ring");
    }
    return Scalar();
  }

  // t_o ^ e with e a rational multiple of 1/2 (integral when orbit o enters
  // through v, since v = t_o^(1/2)).
  static Scalar t_pow(RingPtr ring, int orbit, const Rat& e) {
    if (e == 0) return one(ring);
    switch (ring->kind) {
      case RingKind::SymbolicQT:
      case RingKind::TOnly: {
        Scalar s = one(ring);
        int slot = ring->t_slot(orbit);
        Rat stored = ring->t_is_v(orbit) ? e * 2 : e * 2;
        require(is_integral(stored), "t exponent outside the half lattice");
        s.m_.e[slot] = static_cast<int32_t>(to_long(stored));
        return s;
      }
      case RingKind::SubstitutedQ:
        return q_pow(ring, Rat(ring->u[orbit]) * ring->k[orbit] * e);
      case RingKind::Probed: {
        if (ring->probe_t_direct) {
          Rat stored = e * 2;
          require(is_integral(stored), "t exponent outside the half lattice");
          return from_rat(ring, rat_pow(ring->probe_thalf[orbit], to_long(stored)));
        }
        return q_pow(ring, Rat(ring->u[orbit]) * ring->k[orbit] * e);
      }
      default:
        require(false, "t-power in a t-free ring");
    }
    return Scalar();
  }

  static Scalar k_sym(RingPtr ring, int orbit) {
    if (ring->kind == RingKind::KSymbolic) {
      Scalar s = one(ring);
      s.m_.e[orbit] = 1;
      return s;
    }
    return from_rat(ring, ring->k[orbit]);
  }

  RingPtr ring() const { return ring_; }
  bool is_zero() const { return c_ == 0; }
  bool is_one() const { return c_ == 1 && m_.is_zero() && num_.is_constant() && den_.empty() && num_.constant_value() == 1; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    require(a.ring_ == b.ring_, "ring mismatch");
    // Multiset union of denominator factors.
    std::vector<Poly> uni = a.den_;
    std::vector<char> used(a.den_.size(), 0);
    std::vector<Poly> extra_b;  // factors of uni missing from b.den_
    std::vector<Poly> extra_a;  // factors of b.den_ missing from a.den_ (added to uni)
    for (const auto& f : b.den_) {
      bool matched = false;
      for (size_t i = 0; i < a.den_.size(); ++i)
        if (!used[i] && a.den_[i] == f) {
          used[i] = 1;
          matched = true;
          break;
        }
      if (!matched) {
        uni.push_back(f);
        extra_a.push_back(f);
      }
    }
    for (size_t i = 0; i < a.den_.size(); ++i)
      if (!used[i]) extra_b.push_back(a.den_[i]);
    Poly pa = a.num_.times_monomial(a.m_, Int(1));
    for (const auto& f : extra_a) pa = pa * f;
    Poly pb = b.num_.times_monomial(b.m_, Int(1));
    for (const auto& f : extra_b) pb = pb * f;
    Int lcm_den;
    mpz_lcm(lcm_den.get_mpz_t(), a.c_.get_den().get_mpz_t(), b.c_.get_den().get_mpz_t());
    Rat sa = a.c_ * lcm_den, sb = b.c_ * lcm_den;
    pa.scale(sa.get_num());
    pb.scale(sb.get_num());
    Scalar r;
    r.ring_ = a.ring_;
    r.c_ = Rat(1) / Rat(lcm_den);
    r.num_ = pa + pb;
    r.den_ = std::move(uni);
    r.normalize();
    r.reduce();
    return r;
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  Scalar operator-() const {
    Scalar r = *this;
    r.c_ = -r.c_;
    return r;
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.ring_ ? a.ring_ : b.ring_);
    require(a.ring_ == b.ring_, "ring mismatch");
    Scalar r;
    r.ring_ = a.ring_;
    r.c_ = a.c_ * b.c_;
    r.m_ = a.m_ + b.m_;
    if (b.num_.is_constant()) {
      r.c_ *= b.num_.constant_value();
      r.num_ = a.num_;
    } else if (a.num_.is_constant()) {
      r.c_ *= a.num_.constant_value();
      r.num_ = b.num_;
    } else {
      r.num_ = a.num_ * b.num_;
    }
    r.den_ = a.den_;
    r.den_.insert(r.den_.end(), b.den_.begin(), b.den_.end());
    r.normalize();
    if (!a.den_.empty() || !b.den_.empty()) r.reduce();
    return r;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("scalar division by zero");
    Scalar r;
    r.ring_ = ring_;
    r.c_ = Rat(1) / c_;
    r.m_ = -m_;
    r.num_ = Poly::constant(Int(1));
    for (const auto& f : den_) r.num_ = r.num_ * f;
    if (!num_.is_constant()) {
      r.den_.push_back(num_);
    } else {
      r.c_ /= Rat(num_.constant_value());
    }
    r.normalize();
    r.reduce();
    return r;
  }

  Scalar pow(long e) const {
    if (e == 0) return one(ring_);
    Scalar base = e < 0 ? inverse() : *this;
    long n = e < 0 ? -e : e;
    Scalar acc = one(ring_);
    while (n) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  bool operator==(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    if (c_ == o.c_ && m_ == o.m_ && num_ == o.num_ && den_.size() == o.den_.size()) {
      bool same = true;
      for (size_t i = 0; i < den_.size() && same; ++i) same = den_[i] == o.den_[i];
      if (same) return true;
    }
    return (*this - o).is_zero();
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // (num, den) as integer-coefficient Laurent polynomials, den expanded with
  // positive leading coefficient; den == 1 when the scalar is polynomial.
  std::pair<Poly, Poly> as_fraction() const {
    Poly n = num_.times_monomial(m_, c_.get_num());
    Poly d = Poly::constant(c_.get_den());
    for (const auto& f : den_) d = d * f;
    if (is_zero()) {
      n = Poly();
      d = Poly::constant(Int(1));
    }
    return {n, d};
  }
  bool is_polynomial() const { return den_.empty(); }
  const Poly& num_part() const { return num_; }
  const Mono& mono_part() const { return m_; }
  const Rat& rat_part() const { return c_; }

  Rat to_rat() const {
    require(den_.empty() && num_.is_constant() && m_.is_zero(), "scalar is not a constant");
    return c_ * Rat(num_.constant_value());
  }
  bool is_rat() const { return is_zero() || (den_.empty() && num_.is_constant() && m_.is_zero()); }

  // Substitute t_o -> q_o^{k_o} for every orbit, landing in `target`
  // (SubstitutedQ or Probed over the same D).
  Scalar substitute_t(RingPtr target) const {
    require(ring_->kind == RingKind::SymbolicQT || ring_->kind == RingKind::TOnly,
            "substitute_t: source ring has no t variables");
    require(target->D == ring_->D || ring_->kind == RingKind::TOnly, "substitute_t: D mismatch");
    auto map_poly = [&](const Poly& p) {
      Poly acc = p;
      for (int o = 0; o < ring_->r; ++o) {
        int slot = ring_->t_slot(o);
        Mono image{};
        // one stored unit is t_o^(1/2) (or v = t_o^(1/2) itself)
        Rat e = Rat(target->u[o]) * target->k[o] / 2;
        Rat scaled = e * target->D;
        require(is_integral(scaled), "substitute_t: exponent outside 1/D lattice");
        image.e[0] = static_cast<int32_t>(to_long(scaled));
        acc = acc.subst_var_monomial(slot, image);
      }
      return acc;
    };
    Scalar r;
    r.ring_ = target;
    r.c_ = c_;
    Mono m = m_;
    // move the monomial part through the same map
    Poly nm = map_poly(Poly::monomial(m, Int(1)) * num_);
    r.num_ = nm;
    for (const auto& f : den_) {
      Poly g = map_poly(f);
      require(!g.is_zero(), "substitute_t: denominator vanished");
      r.den_.push_back(g);
    }
    if (target->kind == RingKind::Probed) return r.eval_probed();
    r.normalize();
    r.reduce();
    return r;
  }

  // Evaluate every variable at the ring's probe values (Probed target ring).
  Scalar eval_probed() const {
    require(ring_->kind == RingKind::Probed, "eval_probed: not a probed ring");
    return from_rat(ring_, to_rat_at(probe_values()));
  }

  // Evaluate at explicit per-variable unit values.
  Rat to_rat_at(const std::vector<Rat>& unit_values) const {
    if (is_zero()) return Rat(0);
    Rat n = num_.eval(unit_values);
    Rat m(1);
    for (int i = 0; i < kMaxVars; ++i)
      if (m_.e[i]) m *= rat_pow(unit_values[static_cast<size_t>(i)], m_.e[i]);
    Rat d(1);
    for (const auto& f : den_) {
      Rat fv = f.eval(unit_values);
      if (fv == 0) throw PoleAtPoint("denominator vanishes at evaluation point");
      d *= fv;
    }
    return c_ * m * n / d;
  }
  std::vector<Rat> probe_values() const {
    std::vector<Rat> v;
    return v;  // probed scalars are constants already
  }

  // Substitute a rational value for variable `slot` (e.g. q -> 0 after
  // canonicalization). Remaining variables stay symbolic.
  Scalar subst_slot_value(int slot, const Rat& value) const {
    if (is_zero()) return *this;
    Scalar r;
    r.ring_ = ring_;
    r.c_ = c_;
    Mono m = m_;
    int32_t me = m.e[slot];
    m.e[slot] = 0;
    if (me != 0) {
      if (value == 0) {
        if (me > 0) {
          // monomial factor -> 0 unless cancelled; push into num and let the
          // polynomial substitution decide
        } else {
          throw PoleAtPoint("negative power of a vanishing variable");
        }
      } else {
        r.c_ *= rat_pow(value, me);
        me = 0;
      }
    }
    Poly base = num_;
    if (me > 0) {
      Mono shift{};
      shift.e[slot] = me;
      base = base.times_monomial(shift, Int(1));
    }
    auto [pn, dn] = base.subst_var_value(slot, value);
    r.num_ = pn;
    r.c_ /= Rat(dn);
    for (const auto& f : den_) {
      auto [pf, df] = f.subst_var_value(slot, value);
      if (pf.is_zero()) throw PoleAtPoint("denominator vanishes under substitution");
      r.c_ *= Rat(df);
      if (!pf.is_constant()) r.den_.push_back(pf);
      else r.c_ /= Rat(pf.constant_value());
    }
    r.normalize();
    r.reduce();
    return r;
  }

  // lim_{q->1} of a univariate-in-q scalar, by cancelling (1 - qD) powers.
  Rat limit_q_to_1() const {
    require(ring_->kind == RingKind::SubstitutedQ || ring_->kind == RingKind::SymbolicQT,
            "limit_q_to_1: no q variable");
    if (is_zero()) return Rat(0);
    require(num_.single_variable() <= 0, "limit_q_to_1: not univariate in q");
    Poly one_minus;  // 1 - qD
    one_minus.add_term(Mono{}, Int(1));
    Mono qm{};
    qm.e[0] = 1;
    one_minus.add_term(qm, Int(-1));
    auto strip = [&](Poly p, long& count) {
      std::vector<Rat> at1(1, Rat(1));
      while (!p.is_zero() && p.eval(at1) == 0) {
        auto q = p.exact_div(one_minus);
        require(q.has_value(), "limit_q_to_1: internal division failure");
        p = *q;
        ++count;
      }
      return p;
    };
    long mult = 0;
    Poly n = strip(num_, mult);
    Rat dval(1);
    for (const auto& f : den_) {
      require(f.single_variable() <= 0, "limit_q_to_1: not univariate in q");
      long dm = 0;
      Poly g = strip(f, dm);
      mult -= dm;
      std::vector<Rat> at1(1, Rat(1));
      dval *= g.eval(at1);
    }
    if (mult < 0) throw PoleAtPoint("limit q->1 diverges");
    if (mult > 0) return Rat(0);
    std::vector<Rat> at1(1, Rat(1));
    require(dval != 0, "limit_q_to_1: internal zero denominator");
    return c_ * n.eval(at1) / dval;
  }

  std::string str() const {
    if (is_zero()) return "0";
    auto [n, d] = as_fraction();
    std::string ns = poly_str(n);
    if (d.is_constant() && d.constant_value() == 1) return ns;
    return "(" + ns + ")/(" + poly_str(d) + ")";
  }

  std::string poly_str(const Poly& p) const {
    if (p.is_zero()) return "0";
    auto ts = p.sorted_terms();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ts) {
      Int a = c;
      bool neg = a < 0;
      if (neg) a = -a;
      if (first) {
        if (neg) os << "-";
        first = false;
      } else {
        os << (neg ? " - " : " + ");
      }
      std::string vars = mono_str(m);
      if (vars.empty()) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << "*";
        os << vars;
      }
    }
    return os.str();
  }

  std::string mono_str(const Mono& m) const {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < ring_->nvars(); ++i) {
      if (!m.e[i]) continue;
      if (any) os << "*";
      any = true;
      Rat e = rat(m.e[i], ring_->unit_den(i));
      os << ring_->var_name(i);
      if (e != 1) {
        if (is_integral(e) && e > 0) os << "^" << e.get_num().get_str();
        else os << "^(" << e.get_str() << ")";
      }
    }
    return os.str();
  }

 private:
  void normalize() {
    if (num_.is_zero() || c_ == 0) {
      c_ = 0;
      m_ = Mono{};
      num_ = Poly::constant(Int(1));
      den_.clear();
      return;
    }
    // Laurent-shift and make primitive, sign on the lex-leading coefficient.
    Mono lo = num_.min_exponents();
    if (!lo.is_zero()) {
      num_ = num_.times_monomial(-lo, Int(1));
      m_ = m_ + lo;
    }
    Int g = num_.content();
    if (g > 1) {
      num_.divexact_scalar(g);
      c_ *= g;
    }
    if (num_.coeff(num_.lead_mono()) < 0) {
      num_ = -num_;
      c_ = -c_;
    }
    std::vector<Poly> dens;
    for (auto& f : den_) {
      Mono flo = f.min_exponents();
      if (!flo.is_zero()) {
        f = f.times_monomial(-flo, Int(1));
        m_ = m_ - flo;
      }
      Int fg = f.content();
      if (fg > 1) {
        f.divexact_scalar(fg);
        c_ /= fg;
      }
      if (f.is_constant()) {
        c_ /= Rat(f.constant_value());
        continue;
      }
      if (f.coeff(f.lead_mono()) < 0) {
        f = -f;
        c_ = -c_;
      }
      dens.push_back(std::move(f));
    }
    den_ = std::move(dens);
    std::sort(den_.begin(), den_.end(), detail::poly_less);
  }

  void reduce() {
    if (is_zero() || den_.empty()) return;
    bool progress = true;
    int rounds = 0;
    while (progress && ++rounds < 64) {
      progress = false;
      for (size_t i = 0; i < den_.size(); ++i) {
        if (num_.is_constant()) break;
        if (auto q = num_.exact_div(den_[i])) {
          num_ = std::move(*q);
          den_.erase(den_.begin() + static_cast<long>(i));
          progress = true;
          break;
        }
        int vn = num_.single_variable(), vf = den_[i].single_variable();
        if (vn >= 0 && vn == vf) {
          Poly g = gcd_univariate(num_, den_[i], vn);
          if (!g.is_constant()) {
            auto qn = num_.exact_div(g), qf = den_[i].exact_div(g);
            require(qn.has_value() && qf.has_value(), "reduce: gcd division failed");
            num_ = std::move(*qn);
            den_[i] = std::move(*qf);
            progress = true;
            break;
          }
        }
      }
      if (progress) normalize();
      if (is_zero()) return;
    }
  }

  RingPtr ring_;
  Rat c_;
  Mono m_;
  Poly num_ = Poly::constant(Int(1));
  std::vector<Poly> den_;
};

// prod_{i=0}^{k-1} (1 - x * base^i), the finite q-Pochhammer (3.2).
inline Scalar q_pochhammer(const Scalar& x, const Scalar& base, long k) {
  require(k >= 0, "q_pochhammer: negative index");
  RingPtr ring = x.ring() ? x.ring() : base.ring();
  Scalar acc = Scalar::one(ring);
  Scalar p = Scalar::one(ring);
  for (long i = 0; i < k; ++i) {
    acc = acc * (Scalar::one(ring) - x * p);
    p = p * base;
  }
  return acc;
}

}  // namespace macrs
