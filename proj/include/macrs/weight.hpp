#pragma once

#include "macrs/basics.hpp"

namespace macrs {

constexpr int kMaxRank = 8;

// Lattice key: coordinates in the fundamental-weight basis of R2, doubled so
// that the half-weight lattice (e^{alpha/2}, e^rho factors) stays integral.
struct WKey {
  std::array<int32_t, kMaxRank> c{};

  bool operator==(const WKey&) const = default;
  friend WKey operator+(const WKey& a, const WKey& b) {
    WKey r;
    for (int i = 0; i < kMaxRank; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend WKey operator-(const WKey& a, const WKey& b) {
    WKey r;
    for (int i = 0; i < kMaxRank; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  WKey operator-() const {
    WKey r;
    for (int i = 0; i < kMaxRank; ++i) r.c[i] = -c[i];
    return r;
  }
  bool is_zero() const {
    for (int i = 0; i < kMaxRank; ++i)
      if (c[i]) return false;
    return true;
  }
  friend bool lex_less(const WKey& a, const WKey& b) {
    for (int i = 0; i < kMaxRank; ++i)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }
};

struct WKeyHash {
  size_t operator()(const WKey& k) const {
    size_t h = 0x9dc5bb2d07164953ULL;
    for (int i = 0; i < kMaxRank; ++i) h = hash_mix(h, static_cast<uint32_t>(k.c[i]));
    return h;
  }
};

// Exact weight vector in fundamental-weight coordinates (undoubled).
using Wt = std::vector<Rat>;

inline Wt wt_zero(int n) { return Wt(static_cast<size_t>(n), Rat(0)); }
inline Wt wt_add(const Wt& a, const Wt& b) {
  Wt r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline Wt wt_sub(const Wt& a, const Wt& b) {
  Wt r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
inline Wt wt_scale(const Wt& a, const Rat& s) {
  Wt r(a);
  for (auto& x : r) x *= s;
  return r;
}
inline bool wt_is_zero(const Wt& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

// Doubled key of an (integral-after-doubling) weight.
inline WKey wt_to_key2(const Wt& w) {
  WKey k;
  for (size_t i = 0; i < w.size(); ++i) {
    Rat d = w[i] * 2;
    require(is_integral(d), "weight is not in the half-weight lattice");
    k.c[i] = static_cast<int32_t>(to_long(d));
  }
  return k;
}
inline Wt key2_to_wt(const WKey& k, int n) {
  Wt w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = rat(k.c[i], 2);
  return w;
}

using RatMat = std::vector<std::vector<Rat>>;

inline RatMat mat_inverse(RatMat a) {
  size_t n = a.size();
  RatMat inv(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    require(piv < n, "mat_inverse: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rat f = a[row][col];
      for (size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace macrs
