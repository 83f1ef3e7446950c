#pragma once

#include "macrs/rings.hpp"
#include "macrs/weightalg.hpp"

namespace macrs {

// W(t) = sum_w prod_{alpha in R(w)} t_alpha  (3.8)/(3.9)
inline Scalar poincare_polynomial(const AdmissiblePair& P, RingPtr ring) {
  Scalar acc = Scalar::zero(ring);
  for (const auto& w : P.weyl_elements()) {
    Scalar tw = Scalar::one(ring);
    for (size_t i = 0; i < P.pos_roots.size(); ++i)
      if (w.inverts[i]) tw = tw * Scalar::t_pow(ring, P.pos_roots[i].orbit, Rat(1));
    acc = acc + tw;
  }
  return acc;
}

// W_lambda(t): same sum restricted to the stabilizer of lambda
inline Scalar poincare_stabilizer(const AdmissiblePair& P, RingPtr ring, const Wt& lambda) {
  Scalar acc = Scalar::zero(ring);
  WKey lk = wt_to_key2(lambda);
  for (const auto& w : P.weyl_elements()) {
    if (!(AdmissiblePair::apply_mat(w.mat, lk) == lk)) continue;
    Scalar tw = Scalar::one(ring);
    for (size_t i = 0; i < P.pos_roots.size(); ++i)
      if (w.inverts[i]) tw = tw * Scalar::t_pow(ring, P.pos_roots[i].orbit, Rat(1));
    acc = acc + tw;
  }
  return acc;
}

// Evaluate an algebra element as a number: coefficients at the ring's values
// (or the given q-unit), e^key at a random multiplicative character.
inline Rat elem_probe(const Elem& f, const std::vector<Rat>& coeff_units, const std::vector<Rat>& torus) {
  Rat acc(0);
  for (const auto& [k, c] : f.terms()) {
    Rat v = c.to_rat_at(coeff_units);
    for (size_t i = 0; i < torus.size(); ++i)
      if (k.c[i]) v *= rat_pow(torus[i], k.c[i]);
    acc += v;
  }
  return acc;
}

// The weight function machinery at integer k >= 0 (3.3)/(3.7)/(3.10).
class Density {
 public:
  Density(const AdmissiblePair& P, RingPtr ring, std::vector<Rat> k, bool verify = true)
      : P_(P), ring_(ring), k_(std::move(k)) {
    require(static_cast<int>(k_.size()) == P.r, "k must have one entry per orbit");
    for (const auto& v : k_)
      if (!is_integral(v) || v < 0) throw NonIntegerK("density needs integer k >= 0");
    // orbit of 2 alpha per root (for t_{2 alpha}^(1/2))
    std::vector<int> dbl_orbit(P.pos_roots.size(), -1);
    for (size_t i = 0; i < P.pos_roots.size(); ++i)
      if (P.pos_roots[i].divisible2)
        for (size_t j = 0; j < P.pos_roots.size(); ++j)
          if (P.pos_roots[j].fc == wt_scale(P.pos_roots[i].fc, Rat(2))) dbl_orbit[i] = P.pos_roots[j].orbit;

    Elem dp = elem_one(ring);
    Elem dm = elem_one(ring);
    for (size_t i = 0; i < P.pos_roots.size(); ++i) {
      const auto& a = P.pos_roots[i];
      long ka = to_long(k_[static_cast<size_t>(a.orbit)]);
      WKey akey = wt_to_key2(a.fc);
      Scalar thalf = dbl_orbit[i] >= 0 ? Scalar::t_pow(ring, dbl_orbit[i], rat(1, 2)) : Scalar::one(ring);
      for (long s = 0; s < ka; ++s) {
        Scalar qs = Scalar::q_pow(ring, Rat(a.u) * s);
        Scalar qs1 = Scalar::q_pow(ring, Rat(a.u) * (s + 1));
        Elem f1;
        f1.add_term(WKey{}, Scalar::one(ring));
        f1.add_term(akey, -(thalf * qs));
        dp = dp * f1;
        Elem f2;
        f2.add_term(WKey{}, Scalar::one(ring));
        f2.add_term(-akey, -(thalf * qs1));
        dm = dm * f2;
      }
    }
    delta_plus_ = std::move(dp);
    delta_shift_ = std::move(dm);
    poincare_ = poincare_polynomial(P_, ring_);
    if (verify) self_check();
  }

  const AdmissiblePair& pair() const { return P_; }
  RingPtr ring() const { return ring_; }
  const std::vector<Rat>& k() const { return k_; }
  const Elem& delta_plus() const { return delta_plus_; }
  const Scalar& poincare() const { return poincare_; }

  Elem delta() const { return delta_plus_ * delta_plus_.bar(); }
  const Elem& delta_prime() const {
    if (!dprime_built_) {
      dprime_ = delta_plus_ * delta_shift_;
      dprime_built_ = true;
    }
    return dprime_;
  }

  // [A * bar(B)]_1 = sum_eta A_eta B_eta
  static Scalar dot_bar(const Elem& a, const Elem& b) {
    const Elem& small = a.size() <= b.size() ? a : b;
    const Elem& big = a.size() <= b.size() ? b : a;
    Scalar acc;
    for (const auto& [k, c] : small.terms()) {
      Scalar o = big.coeff(k);
      if (!o.is_zero()) acc = acc + c * o;
    }
    return acc;
  }
  // [A * B]_1 = sum_eta A_eta B_{-eta}
  static Scalar ct_product(const Elem& a, const Elem& b) {
    const Elem& small = a.size() <= b.size() ? a : b;
    const Elem& big = a.size() <= b.size() ? b : a;
    bool sw = a.size() > b.size();
    Scalar acc;
    for (const auto& [k, c] : small.terms()) {
      Scalar o = big.coeff(-k);
      if (!o.is_zero()) acc = acc + (sw ? o * c : c * o);
    }
    return acc;
  }

  Elem times_delta_plus(const Elem& f) const { return f * delta_plus_; }

  // (3.4): <f,g> = |W|^{-1} [f gbar Delta]_1
  Scalar inner(const Elem& f, const Elem& g) const {
    Scalar s = dot_bar(times_delta_plus(f), times_delta_plus(g));
    return s * Scalar::from_rat(ring_, rat(1, P_.weyl_order));
  }
  Scalar inner_cached(const Elem& f_dp, const Elem& g_dp) const {
    return dot_bar(f_dp, g_dp) * Scalar::from_rat(ring_, rat(1, P_.weyl_order));
  }

  // (3.12): <f,g> = W(t)^{-1} [f gbar Delta']_1 for W-invariant f, g
  Scalar inner_invariant(const Elem& f, const Elem& g, bool crosscheck = true) const {
    for (int i = 0; i < P_.n; ++i) {
      if (!(f.apply(P_.refl[static_cast<size_t>(i)]) == f) || !(g.apply(P_.refl[static_cast<size_t>(i)]) == g))
        throw NotInvariant("inner_invariant needs W-invariant arguments");
    }
    Elem fg = f * g.bar();
    Scalar ct = ct_product(fg, delta_prime());
    Scalar result = ct / poincare_;
    if (crosscheck) require(result == inner(f, g), "(3.12) disagrees with (3.4)");
    return result;
  }

  Scalar ct_delta() const { return dot_bar(delta_plus_, delta_plus_); }
  Scalar ct_delta_prime() const { return ct_product(delta_plus_, delta_shift_); }

  // Poincare product formula (quoted above (12.9)), reduced pairs, t = q^k.
  Scalar poincare_product_form() const {
    require(!P_.nonreduced, "product formula asserted for reduced R only");
    Scalar acc = Scalar::one(ring_);
    Wt rk = P_.rho_k(k_);
    for (const auto& a : P_.pos_roots) {
      Rat e = P_.pair_wt(rk, a.covec);
      Scalar num = Scalar::one(ring_) - Scalar::q_pow(ring_, Rat(a.u) * (e + k_[static_cast<size_t>(a.orbit)]));
      Scalar den = Scalar::one(ring_) - Scalar::q_pow(ring_, Rat(a.u) * e);
      acc = acc * num / den;
    }
    return acc;
  }

 private:
  void self_check() const {
    Elem d = delta();
    for (int i = 0; i < P_.n; ++i)
      require(d.apply(P_.refl[static_cast<size_t>(i)]) == d, "Delta is not W-invariant");
    // The remaining identities hold after t_a = q_a^{k_a}; with free t the
    // pochhammer telescoping behind (3.10) does not apply.
    if (ring_->kind != RingKind::SubstitutedQ && ring_->kind != RingKind::Probed) return;
    // Delta' = Delta * Pi as cleared polynomials: Delta' * den(Pi) = Delta * num(Pi)
    const Elem& dprime = delta_prime();
    Elem num_pi = elem_one(ring_), den_pi = elem_one(ring_);
    for (size_t i = 0; i < P_.pos_roots.size(); ++i) {
      const auto& a = P_.pos_roots[i];
      Scalar thalf = Scalar::one(ring_);
      for (size_t j = 0; j < P_.pos_roots.size(); ++j)
        if (P_.pos_roots[j].fc == wt_scale(a.fc, Rat(2))) thalf = Scalar::t_pow(ring_, P_.pos_roots[j].orbit, rat(1, 2));
      Elem nf, df;
      nf.add_term(WKey{}, Scalar::one(ring_));
      nf.add_term(-wt_to_key2(a.fc), -(Scalar::t_pow(ring_, a.orbit, Rat(1)) * thalf));
      df.add_term(WKey{}, Scalar::one(ring_));
      df.add_term(-wt_to_key2(a.fc), -thalf);
      num_pi = num_pi * nf;
      den_pi = den_pi * df;
    }
    require(dprime * den_pi == d * num_pi, "Delta' != Delta * Pi");
    // (3.11): W(t) Delta = sum_w w Delta'
    if (P_.weyl_order <= 48 && dprime.size() <= 20000) {
      Elem sum;
      for (const auto& w : P_.weyl_elements()) sum = sum + dprime.apply(w.mat);
      require(sum == d.scaled(poincare_), "(3.11) fails");
    } else {
      Rng rng(20240 + static_cast<uint64_t>(P_.weyl_order));
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<Rat> cu{rng.small_rat(), rng.small_rat(), rng.small_rat(),
                            rng.small_rat(), rng.small_rat(), rng.small_rat()};
        std::vector<Rat> torus;
        for (int i = 0; i < P_.n; ++i) torus.push_back(rng.small_rat());
        Rat lhs = elem_probe(d, cu, torus) * poincare_.to_rat_at(cu);
        Rat rhs(0);
        for (const auto& w : P_.weyl_elements()) rhs += elem_probe(dprime.apply(w.mat), cu, torus);
        require(lhs == rhs, "(3.11) fails at probe point");
      }
    }
  }

  const AdmissiblePair& P_;
  RingPtr ring_;
  std::vector<Rat> k_;
  Elem delta_plus_;
  Elem delta_shift_;  // prod (t^1/2 q_a e^{-a}; q_a)_{k_a}, the e^{-a} half of Delta'
  Scalar poincare_;
  mutable Elem dprime_;
  mutable bool dprime_built_ = false;
};

// Exact check of sum_w w(Pi) = W(t) with denominators cleared (identity of
// [8] quoted above (3.11)); feasible at small |W|.
inline bool verify_pi_identity(const AdmissiblePair& P, RingPtr ring) {
  auto thalf_of = [&](const RootInfo& a) {
    for (size_t j = 0; j < P.pos_roots.size(); ++j)
      if (P.pos_roots[j].fc == wt_scale(a.fc, Rat(2)))
        return Scalar::t_pow(ring, P.pos_roots[j].orbit, rat(1, 2));
    return Scalar::one(ring);
  };
  // common denominator D = prod_{beta in R} (1 - t^1/2_{2beta} e^beta)
  Elem common = elem_one(ring);
  for (const auto& a : P.pos_roots) {
    Scalar th = thalf_of(a);
    Elem f1, f2;
    f1.add_term(WKey{}, Scalar::one(ring));
    f1.add_term(wt_to_key2(a.fc), -th);
    f2.add_term(WKey{}, Scalar::one(ring));
    f2.add_term(-wt_to_key2(a.fc), -th);
    common = common * f1 * f2;
  }
  Elem lhs;
  for (const auto& w : P.weyl_elements()) {
    Elem term = elem_one(ring);
    for (const auto& a : P.pos_roots) {
      WKey img = AdmissiblePair::apply_mat(w.mat, wt_to_key2(a.fc));
      Elem nf;
      nf.add_term(WKey{}, Scalar::one(ring));
      nf.add_term(-img, -(Scalar::t_pow(ring, a.orbit, Rat(1)) * thalf_of(a)));
      term = term * nf;
      Elem df;  // (1 - t_{2b}^1/2 e^beta) for beta in w R^+ (the co-factor of D)
      df.add_term(WKey{}, Scalar::one(ring));
      df.add_term(img, -thalf_of(a));
      term = term * df;
    }
    lhs = lhs + term;
  }
  Elem rhs = common.scaled(poincare_polynomial(P, ring));
  return lhs == rhs;
}

}  // namespace macrs
