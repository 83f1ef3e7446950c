#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "macrs/basics.hpp"

namespace macrs {

// Exponent vector of a Laurent monomial. Slots beyond the ring's variable
// count stay zero, so comparison and hashing can use the whole array.
constexpr int kMaxVars = 6;

struct Mono {
  std::array<int32_t, kMaxVars> e{};

  friend Mono operator+(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend Mono operator-(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  Mono operator-() const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = -e[i];
    return r;
  }
  bool operator==(const Mono&) const = default;
  bool is_zero() const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) return false;
    return true;
  }
  // Lexicographic order, variable 0 dominant.
  friend bool lex_less(const Mono& a, const Mono& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
};

struct MonoHash {
  size_t operator()(const Mono& m) const {
    size_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < kMaxVars; ++i) h = hash_mix(h, static_cast<uint32_t>(m.e[i]));
    return h;
  }
};

// Sparse Laurent polynomial with big-integer coefficients.
class Poly {
 public:
  using Map = std::unordered_map<Mono, Int, MonoHash>;

  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(Int c) {
    Poly p;
    if (c != 0) p.terms_.emplace(Mono{}, std::move(c));
    return p;
  }
  static Poly monomial(const Mono& m, Int c) {
    Poly p;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
  }
  bool is_monomial() const { return terms_.size() == 1; }
  Int constant_value() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_term(const Mono& m, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const Poly& big = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    Poly r = big;
    for (const auto& [m, c] : small.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (b.is_monomial()) return a.times_monomial(b.terms_.begin()->first, b.terms_.begin()->second);
    if (a.is_monomial()) return b.times_monomial(a.terms_.begin()->first, a.terms_.begin()->second);
    Poly r;
    r.terms_.reserve(a.size() + b.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
    return r;
  }
  Poly times_monomial(const Mono& m, const Int& c) const {
    Poly r;
    if (c == 0) return r;
    r.terms_.reserve(size());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm + m, cc * c);
    return r;
  }
  void scale(const Int& c) {
    if (c == 0) {
      terms_.clear();
      return;
    }
    for (auto& [m, cc] : terms_) cc *= c;
  }
  void divexact_scalar(const Int& c) {
    for (auto& [m, cc] : terms_) {
      Int q;
      mpz_divexact(q.get_mpz_t(), cc.get_mpz_t(), c.get_mpz_t());
      cc = q;
    }
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [m, c] : terms_) {
      auto it = o.terms_.find(m);
      if (it == o.terms_.end() || it->second != c) return false;
    }
    return true;
  }

  // Positive gcd of all coefficients; 0 for the zero polynomial.
  Int content() const {
    Int g = 0;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  // Per-variable minimum exponent over the support (Laurent unit part).
  Mono min_exponents() const {
    Mono lo{};
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (first) {
        lo = m;
        first = false;
      } else {
        for (int i = 0; i < kMaxVars; ++i) lo.e[i] = std::min(lo.e[i], m.e[i]);
      }
    }
    return lo;
  }
  Mono max_exponents() const {
    Mono hi{};
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (first) {
        hi = m;
        first = false;
      } else {
        for (int i = 0; i < kMaxVars; ++i) hi.e[i] = std::max(hi.e[i], m.e[i]);
      }
    }
    return hi;
  }

  Mono lead_mono() const {
    require(!terms_.empty(), "lead_mono of zero polynomial");
    auto it = terms_.begin();
    Mono best = it->first;
    for (++it; it != terms_.end(); ++it)
      if (lex_less(best, it->first)) best = it->first;
    return best;
  }
  const Int& coeff(const Mono& m) const {
    static const Int zero(0);
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
  }

  // -1 if no variable occurs, the index if exactly one does, -2 otherwise.
  int single_variable() const {
    int var = -1;
    for (const auto& [m, c] : terms_)
      for (int i = 0; i < kMaxVars; ++i)
        if (m.e[i]) {
          if (var == -1) var = i;
          else if (var != i) return -2;
        }
    return var;
  }

  std::vector<std::pair<Mono, Int>> sorted_terms() const {
    std::vector<std::pair<Mono, Int>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return lex_less(b.first, a.first); });
    return v;
  }

  // Exact quotient this/d, or nullopt when d does not divide this.
  std::optional<Poly> exact_div(const Poly& d) const {
    require(!d.is_zero(), "exact_div by zero");
    if (is_zero()) return Poly();
    if (d.is_monomial()) {
      const auto& [dm, dc] = *d.terms_.begin();
      Poly q;
      q.terms_.reserve(size());
      for (const auto& [m, c] : terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
        Int cc;
        mpz_divexact(cc.get_mpz_t(), c.get_mpz_t(), dc.get_mpz_t());
        q.terms_.emplace(m - dm, std::move(cc));
      }
      return q;
    }
    if (d.size() == 2) return binomial_div(d);
    Poly rem = *this;
    Poly q;
    Mono dl = d.lead_mono();
    const Int& dc = d.coeff(dl);
    size_t cap = 16 * (size() + d.size()) + 4096;
    while (!rem.is_zero()) {
      if (q.size() > cap || rem.size() > 8 * cap) return std::nullopt;
      Mono rl = rem.lead_mono();
      const Int& rc = rem.coeff(rl);
      if (!mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t())) return std::nullopt;
      Int qc;
      mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
      Mono qm = rl - dl;
      q.add_term(qm, qc);
      for (const auto& [m, c] : d.terms_) rem.add_term(m + qm, -(c * qc));
    }
    return q;
  }

  // Quotient by a two-term divisor via exponent-direction chains.
  std::optional<Poly> binomial_div(const Poly& d) const {
    auto it = d.terms_.begin();
    Mono m1 = it->first;
    Int c1 = it->second;
    ++it;
    Mono m2 = it->first;
    Int c2 = it->second;
    if (lex_less(m1, m2)) {
      std::swap(m1, m2);
      std::swap(c1, c2);
    }
    // d = c1 x^{m1} + c2 x^{m2}, m1 lex-greater. Divide greedily from the top.
    Poly rem = *this;
    Poly q;
    size_t cap = 64 * (size() + 2) + 4096;
    while (!rem.is_zero()) {
      if (q.size() > cap) return std::nullopt;
      Mono rl = rem.lead_mono();
      const Int& rc = rem.coeff(rl);
      if (!mpz_divisible_p(rc.get_mpz_t(), c1.get_mpz_t())) return std::nullopt;
      Int qc;
      mpz_divexact(qc.get_mpz_t(), rc.get_mpz_t(), c1.get_mpz_t());
      Mono qm = rl - m1;
      q.add_term(qm, qc);
      rem.add_term(rl, -(qc * c1));
      rem.add_term(m2 + qm, -(qc * c2));
    }
    return q;
  }

  // Evaluate with a rational value per variable; the value is the one of the
  // stored exponent unit (e.g. q^(1/D) itself for variable 0).
  Rat eval(const std::vector<Rat>& unit_values) const {
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
      Rat term(c);
      for (int i = 0; i < kMaxVars; ++i)
        if (m.e[i]) {
          require(static_cast<size_t>(i) < unit_values.size(), "eval: missing variable value");
          term *= rat_pow(unit_values[i], m.e[i]);
        }
      acc += term;
    }
    return acc;
  }

  // Substitute x_var := (monomial image); exponents scale linearly.
  Poly subst_var_monomial(int var, const Mono& image) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      Mono n = m;
      int32_t e = n.e[var];
      n.e[var] = 0;
      for (int i = 0; i < kMaxVars; ++i) n.e[i] += e * image.e[i];
      r.add_term(n, c);
    }
    return r;
  }

  // Substitute a rational value for one variable. value==0 with a negative
  // exponent raises PoleAtPoint. Returns a polynomial in the other variables
  // together with a denominator integer (so coefficients stay integral).
  std::pair<Poly, Int> subst_var_value(int var, const Rat& value) const {
    // Common denominator: den(value)^(max exponent span).
    int32_t lo = 0, hi = 0;
    for (const auto& [m, c] : terms_) {
      lo = std::min(lo, m.e[var]);
      hi = std::max(hi, m.e[var]);
    }
    if (value == 0) {
      Poly r;
      for (const auto& [m, c] : terms_) {
        if (m.e[var] < 0) throw PoleAtPoint("substitution of 0 into negative power");
        if (m.e[var] == 0) r.add_term(m, c);
      }
      return {r, Int(1)};
    }
    Int num = value.get_num(), den = value.get_den();
    Poly r;
    Int scale_den = 1;
    // Multiply through by den^hi * num^(-lo) so that every term is integral.
    for (const auto& [m, c] : terms_) {
      Int factor = c;
      int32_t e = m.e[var];
      Int np, dp;
      mpz_pow_ui(np.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e - lo));
      mpz_pow_ui(dp.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(hi - e));
      factor *= np * dp;
      Mono n = m;
      n.e[var] = 0;
      r.add_term(n, factor);
    }
    Int nhi, dlo;
    mpz_pow_ui(dlo.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(hi));
    mpz_pow_ui(nhi.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-lo));
    scale_den = dlo * nhi;
    return {r, scale_den};
  }

 private:
  Map terms_;
};

// Univariate gcd in variable `var` via the subresultant PRS, on polynomials
// whose support uses only that variable. Inputs need not be Laurent-shifted.
inline Poly gcd_univariate(const Poly& a, const Poly& b, int var) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto to_dense = [&](const Poly& p, int32_t lo) {
    int32_t hi = p.max_exponents().e[var];
    std::vector<Int> v(static_cast<size_t>(hi - lo + 1), Int(0));
    for (const auto& [m, c] : p.terms()) v[static_cast<size_t>(m.e[var] - lo)] = c;
    return v;
  };
  auto strip = [](std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto prim = [](std::vector<Int>& v) {
    Int g = 0;
    for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
      for (auto& c : v) {
        Int q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        c = q;
      }
  };
  int32_t lo_a = a.min_exponents().e[var], lo_b = b.min_exponents().e[var];
  std::vector<Int> A = to_dense(a, lo_a), B = to_dense(b, lo_b);
  strip(A);
  strip(B);
  prim(A);
  prim(B);
  if (A.size() < B.size()) std::swap(A, B);
  // Primitive PRS (contents are removed each step; fine at these sizes).
  while (!B.empty()) {
    // pseudo-remainder of A by B
    std::vector<Int> R = A;
    Int lc = B.back();
    long db = static_cast<long>(B.size()) - 1;
    while (static_cast<long>(R.size()) - 1 >= db && !R.empty()) {
      long dr = static_cast<long>(R.size()) - 1;
      Int coef = R.back();
      for (auto& c : R) c *= lc;
      for (long i = 0; i <= db; ++i) R[static_cast<size_t>(dr - db + i)] -= coef * B[static_cast<size_t>(i)];
      strip(R);
    }
    prim(R);
    A = std::move(B);
    B = std::move(R);
  }
  prim(A);
  if (A.size() == 1) return Poly::constant(Int(1));
  Poly g;
  for (size_t i = 0; i < A.size(); ++i)
    if (A[i] != 0) {
      Mono m{};
      m.e[var] = static_cast<int32_t>(i);
      g.add_term(m, A[i]);
    }
  return g;
}

}  // namespace macrs
