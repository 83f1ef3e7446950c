#pragma once

#include <functional>
#include <memory>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <unordered_set>

#include "macrs/weight.hpp"

namespace macrs {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2, BC };
enum class SChoice { S_equals_R, S_equals_R_dual, BC_S1, BC_S2 };

struct RootInfo {
  Wt fc;            // fundamental coords (integral for roots)
  WKey key;         // undoubled integer coords
  Rat len2;         // |alpha|^2, short roots of R normalized to 2
  int orbit = 0;    // 0..r-1, ascending length
  int u = 1;        // alpha_* = alpha / u lies in S
  bool divisible2 = false;  // 2 alpha in R
  bool halvable = false;    // alpha/2 in R
  Wt covec;         // alpha^vee
  Wt star;          // alpha_*
};

// One enumerated Weyl group element.
struct WElt {
  std::array<std::array<int32_t, kMaxRank>, kMaxRank> mat{};  // action on coords
  int parity = 0;              // det = (-1)^parity
  std::vector<char> inverts;   // per positive root of R: alpha in R(w)
};

class AdmissiblePair {
 public:
  Family family;
  int rank = 0;
  SChoice s_choice;
  std::string descriptor;

  int n = 0;               // ambient rank
  int r = 1;               // number of W-orbits in R
  long weyl_order = 0;
  int D = 4;               // q-exponent denominator for Scalar rings
  bool nonreduced = false;

  RatMat gram2;            // Gram matrix of R2 simple roots
  std::vector<Rat> d2;     // |sigma_i|^2 / 2
  RatMat cartan2;          // C2[i][j] = <sigma_j, sigma_i^vee>
  RatMat gfund;            // Gram matrix of fundamental weights of R2
  std::vector<Wt> rsimple; // simple roots of R (fundamental coords)
  RatMat rsimple_inv;      // x = rsimple_inv * coords: R-simple-root coordinates
  std::vector<std::array<std::array<int32_t, kMaxRank>, kMaxRank>> refl;  // simple reflections

  std::vector<RootInfo> pos_roots;       // positive roots of R
  std::vector<int> r2_plus;              // indices with 2 alpha not in R
  std::vector<Rat> orbit_len2;           // length^2 per orbit, ascending
  std::vector<int> orbit_u;              // u per orbit
  std::vector<long> ht_form;             // scaled linear form: height in R-simple coords
  long ht_den = 1;

  Wt rho;                                // half sum over R2+
  std::vector<Wt> minuscule;             // minuscule fundamental weights of S^vee
  Wt quasi_minuscule;                    // phi^vee = phi (the dominant u=1 root)
  int phi_index = -1;                    // index of phi in pos_roots

  // ---- construction ----------------------------------------------------

  static AdmissiblePair build(Family fam, int rank, SChoice sc);
  static AdmissiblePair parse(const std::string& descriptor);

  // ---- basic geometry ---------------------------------------------------

  Rat pair_wt(const Wt& a, const Wt& b) const {
    Rat s(0);
    for (int i = 0; i < n; ++i) {
      if (a[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < n; ++j)
        if (b[static_cast<size_t>(j)] != 0)
          s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] * gfund[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return s;
  }
  // pairing of a doubled key with an exact weight
  Rat pair_key_wt(const WKey& k, const Wt& b) const {
    Rat s(0);
    for (int i = 0; i < n; ++i) {
      if (!k.c[i]) continue;
      Rat row(0);
      for (int j = 0; j < n; ++j)
        if (b[static_cast<size_t>(j)] != 0) row += b[static_cast<size_t>(j)] * gfund[static_cast<size_t>(i)][static_cast<size_t>(j)];
      s += rat(k.c[i], 2) * row;
    }
    return s;
  }
  Rat pair_key_key(const WKey& a, const WKey& b) const {
    Rat s(0);
    for (int i = 0; i < n; ++i) {
      if (!a.c[i]) continue;
      for (int j = 0; j < n; ++j)
        if (b.c[j]) s += rat(static_cast<long>(a.c[i]) * b.c[j], 4) * gfund[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return s;
  }
  Rat norm2_wt(const Wt& a) const { return pair_wt(a, a); }

  WKey apply_refl(int i, const WKey& k) const { return apply_mat(refl[static_cast<size_t>(i)], k); }
  static WKey apply_mat(const std::array<std::array<int32_t, kMaxRank>, kMaxRank>& m, const WKey& k) {
    WKey r;
    for (int a = 0; a < kMaxRank; ++a) {
      int64_t acc = 0;
      for (int b = 0; b < kMaxRank; ++b) acc += static_cast<int64_t>(m[static_cast<size_t>(a)][static_cast<size_t>(b)]) * k.c[b];
      r.c[a] = static_cast<int32_t>(acc);
    }
    return r;
  }
  Wt apply_refl_wt(int i, const Wt& w) const {
    // s_i(w) = w - <w, sigma_i^vee> sigma_i ; coordinate i carries the pairing
    Wt r = w;
    Rat ci = w[static_cast<size_t>(i)];
    if (ci == 0) return r;
    for (int j = 0; j < n; ++j) r[static_cast<size_t>(j)] -= ci * cartan2[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return r;
  }

  bool dominant_key(const WKey& k) const {
    for (int i = 0; i < n; ++i)
      if (k.c[i] < 0) return false;
    return true;
  }
  bool dominant_wt(const Wt& w) const {
    for (int i = 0; i < n; ++i)
      if (w[static_cast<size_t>(i)] < 0) return false;
    return true;
  }

  int64_t height2(const WKey& k) const {  // scaled height of a doubled key
    int64_t s = 0;
    for (int i = 0; i < n; ++i) s += ht_form[static_cast<size_t>(i)] * k.c[i];
    return s;
  }

  // ---- Weyl orbit machinery ----------------------------------------------

  std::vector<WKey> weyl_orbit_key(const WKey& start) const {
    std::vector<WKey> orbit;
    std::unordered_set<WKey, WKeyHash> seen;
    std::vector<WKey> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      WKey k = stack.back();
      stack.pop_back();
      orbit.push_back(k);
      for (int i = 0; i < n; ++i) {
        WKey im = apply_refl(i, k);
        if (seen.insert(im).second) stack.push_back(im);
      }
    }
    std::sort(orbit.begin(), orbit.end(), [](const WKey& a, const WKey& b) { return lex_less(a, b); });
    return orbit;
  }

  long stabilizer_order(const WKey& k) const {
    auto orbit = weyl_orbit_key(k);
    require(weyl_order % static_cast<long>(orbit.size()) == 0, "orbit size does not divide |W|");
    return weyl_order / static_cast<long>(orbit.size());
  }

  // Make dominant by simple reflections; returns (dominant, parity, on_wall).
  struct DomResult {
    Wt dom;
    int parity = 0;
    bool wall = false;
  };
  DomResult make_dominant(Wt v) const {
    int parity = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i) {
        if (v[static_cast<size_t>(i)] < 0) {
          v = apply_refl_wt(i, v);
          ++parity;
          moved = true;
        }
      }
    }
    bool wall = false;
    for (int i = 0; i < n; ++i)
      if (v[static_cast<size_t>(i)] == 0) wall = true;
    return {std::move(v), parity, wall};
  }
  WKey make_dominant_key(WKey k, int* parity = nullptr, bool* wall = nullptr) const {
    int p = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i)
        if (k.c[i] < 0) {
          k = apply_refl(i, k);
          ++p;
          moved = true;
        }
    }
    if (parity) *parity = p;
    if (wall) {
      *wall = false;
      for (int i = 0; i < n; ++i)
        if (k.c[i] == 0) *wall = true;
    }
    return k;
  }

  // dominant conjugate with sign: 0 on walls, else det of the moving element
  std::pair<Wt, int> dominant_conjugate(const Wt& v) const {
    auto res = make_dominant(v);
    int sign = res.wall ? 0 : (res.parity % 2 == 0 ? 1 : -1);
    return {res.dom, sign};
  }

  // w0 lambda: the unique antidominant orbit element
  Wt longest_image(const Wt& v) const {
    auto res = make_dominant(wt_scale(v, Rat(-1)));
    return wt_scale(res.dom, Rat(-1));
  }

  // ---- dominance order ----------------------------------------------------

  // lambda - mu in Q^+ (nonnegative integer span of the simple roots of R)
  bool dominance_leq(const Wt& mu, const Wt& lambda) const {
    Wt d = wt_sub(lambda, mu);
    for (int i = 0; i < n; ++i) {
      Rat x(0);
      for (int j = 0; j < n; ++j) x += rsimple_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] * d[static_cast<size_t>(j)];
      if (!is_integral(x) || x < 0) return false;
    }
    return true;
  }

  // all dominant mu <= lambda, sorted by descending height then lex
  std::vector<Wt> weights_below(const Wt& lambda) const {
    require(dominant_wt(lambda), "weights_below: not dominant");
    {
      std::lock_guard<std::mutex> lock(caches_->mutex);
      auto it = caches_->below.find(wt_to_key2(lambda));
      if (it != caches_->below.end()) return it->second;
    }
    Rat htb(0);
    for (int i = 0; i < n; ++i) {
      Rat x(0);
      for (int j = 0; j < n; ++j) x += rsimple_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] * lambda[static_cast<size_t>(j)];
      htb += x;
    }
    long bound = 2 * to_long(Rat(htb.get_num() / htb.get_den())) + 2;
    std::vector<Wt> result;
    std::unordered_set<WKey, WKeyHash> seen;
    std::queue<std::pair<Wt, long>> bfs;
    bfs.push({lambda, 0});
    seen.insert(wt_to_key2(lambda));
    while (!bfs.empty()) {
      auto [w, depth] = bfs.front();
      bfs.pop();
      if (dominant_wt(w)) result.push_back(w);
      if (depth >= bound) continue;
      for (int i = 0; i < n; ++i) {
        Wt next = wt_sub(w, rsimple[static_cast<size_t>(i)]);
        WKey key = wt_to_key2(next);
        if (seen.insert(key).second) bfs.push({next, depth + 1});
      }
    }
    std::sort(result.begin(), result.end(), [&](const Wt& a, const Wt& b) {
      WKey ka = wt_to_key2(a), kb = wt_to_key2(b);
      int64_t ha = height2(ka), hb = height2(kb);
      if (ha != hb) return ha > hb;
      return lex_less(ka, kb);
    });
    {
      std::lock_guard<std::mutex> lock(caches_->mutex);
      caches_->below.emplace(wt_to_key2(lambda), result);
    }
    return result;
  }

  // all dominant lambda with coordinate sum <= B
  std::vector<Wt> lambda_box(long B) const {
    std::vector<Wt> out;
    Wt cur = wt_zero(n);
    std::function<void(int, long)> rec = [&](int i, long rem) {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (long v = 0; v <= rem; ++v) {
        cur[static_cast<size_t>(i)] = v;
        rec(i + 1, rem - v);
      }
      cur[static_cast<size_t>(i)] = 0;
    };
    rec(0, B);
    std::sort(out.begin(), out.end(), [&](const Wt& a, const Wt& b) {
      WKey ka = wt_to_key2(a), kb = wt_to_key2(b);
      int64_t ha = height2(ka), hb = height2(kb);
      if (ha != hb) return ha < hb;
      return lex_less(ka, kb);
    });
    return out;
  }

  // ---- special vectors -----------------------------------------------------

  Wt rho_k(const std::vector<Rat>& k) const {
    Wt acc = wt_zero(n);
    for (const auto& a : pos_roots) acc = wt_add(acc, wt_scale(a.fc, k[static_cast<size_t>(a.orbit)] / 2));
    return acc;
  }
  Wt rho_star_k(const std::vector<Rat>& k) const {
    Wt acc = wt_zero(n);
    for (const auto& a : pos_roots)
      acc = wt_add(acc, wt_scale(a.covec, k[static_cast<size_t>(a.orbit)] * a.u / 2));
    return acc;
  }

  // ---- full Weyl group -----------------------------------------------------

  const std::vector<WElt>& weyl_elements() const {
    std::lock_guard<std::mutex> lock(caches_->mutex);
    if (!caches_->welts.empty()) return caches_->welts;
    require(weyl_order <= 51840, "Weyl group enumeration beyond the E6 cap");
    std::array<std::array<int32_t, kMaxRank>, kMaxRank> id{};
    for (int i = 0; i < kMaxRank; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    struct Hash {
      size_t operator()(const std::array<std::array<int32_t, kMaxRank>, kMaxRank>& m) const {
        size_t h = 1469598103934665603ULL;
        for (const auto& row : m)
          for (int32_t v : row) h = hash_mix(h, static_cast<uint32_t>(v));
        return h;
      }
    };
    std::unordered_map<std::array<std::array<int32_t, kMaxRank>, kMaxRank>, int, Hash> seen;
    std::vector<WElt> out;
    out.push_back(WElt{id, 0, {}});
    seen.emplace(id, 0);
    for (size_t head = 0; head < out.size(); ++head) {
      auto base = out[head];
      for (int i = 0; i < n; ++i) {
        auto m = mat_mul(refl[static_cast<size_t>(i)], base.mat);
        if (seen.emplace(m, 1).second) out.push_back(WElt{m, base.parity + 1, {}});
      }
    }
    require(static_cast<long>(out.size()) == weyl_order, "Weyl enumeration mismatch");
    // inversion sets: alpha in R(w) iff w^{-1} alpha < 0
    for (auto& w : out) {
      w.inverts.assign(pos_roots.size(), 0);
    }
    // compute via images: for each element, act on each positive root; build
    // index of roots by key for sign lookup
    std::unordered_map<WKey, int, WKeyHash> rix;
    for (size_t i = 0; i < pos_roots.size(); ++i) {
      rix.emplace(wt_to_key2(pos_roots[i].fc), static_cast<int>(i) + 1);
      rix.emplace(wt_to_key2(wt_scale(pos_roots[i].fc, Rat(-1))), -(static_cast<int>(i) + 1));
    }
    for (auto& w : out) {
      // w^{-1} = transpose in an orthogonal rep; here invert by reusing orbit:
      // R(w) = { alpha > 0 : alpha in -(w R^+) }  <=>  alpha = -w beta
      for (size_t bi = 0; bi < pos_roots.size(); ++bi) {
        WKey img = apply_mat(w.mat, wt_to_key2(pos_roots[bi].fc));
        auto it = rix.find(img);
        require(it != rix.end(), "Weyl image is not a root");
        if (it->second < 0) w.inverts[static_cast<size_t>(-it->second - 1)] = 1;
      }
    }
    caches_->welts = std::move(out);
    return caches_->welts;
  }

  static std::array<std::array<int32_t, kMaxRank>, kMaxRank> mat_mul(
      const std::array<std::array<int32_t, kMaxRank>, kMaxRank>& a,
      const std::array<std::array<int32_t, kMaxRank>, kMaxRank>& b) {
    std::array<std::array<int32_t, kMaxRank>, kMaxRank> r{};
    for (int i = 0; i < kMaxRank; ++i)
      for (int k = 0; k < kMaxRank; ++k) {
        int32_t aik = a[static_cast<size_t>(i)][static_cast<size_t>(k)];
        if (!aik) continue;
        for (int j = 0; j < kMaxRank; ++j)
          r[static_cast<size_t>(i)][static_cast<size_t>(j)] += aik * b[static_cast<size_t>(k)][static_cast<size_t>(j)];
      }
    return r;
  }

 private:
  struct Caches {
    std::mutex mutex;
    std::vector<WElt> welts;
    std::unordered_map<WKey, std::vector<Wt>, WKeyHash> below;
  };
  mutable std::unique_ptr<Caches> caches_ = std::make_unique<Caches>();
};

namespace detail {

inline RatMat symmetric_gram(int n, const std::vector<Rat>& diag2,
                             const std::vector<std::tuple<int, int, Rat>>& edges) {
  RatMat g(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = diag2[static_cast<size_t>(i)];
  for (auto& [a, b, v] : edges) {
    g[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
    g[static_cast<size_t>(b)][static_cast<size_t>(a)] = v;
  }
  return g;
}

}  // namespace detail

inline AdmissiblePair AdmissiblePair::build(Family fam, int rank, SChoice sc) {
  AdmissiblePair P;
  P.family = fam;
  P.rank = rank;
  P.s_choice = sc;
  P.n = rank;
  int n = rank;
  using detail::symmetric_gram;
  std::vector<std::tuple<int, int, Rat>> edges;
  std::vector<Rat> diag;
  auto chain = [&](int upto, Rat v) {
    for (int i = 0; i + 1 < upto; ++i) edges.emplace_back(i, i + 1, v);
  };
  bool bc = false;
  switch (fam) {
    case Family::A:
      require(n >= 1, "A_n needs n >= 1");
      diag.assign(static_cast<size_t>(n), Rat(2));
      chain(n, Rat(-1));
      P.weyl_order = 1;
      for (int i = 2; i <= n + 1; ++i) P.weyl_order *= i;
      break;
    case Family::B:
      if (n < 2) throw UnsupportedPair("B_n needs n >= 2");
      diag.assign(static_cast<size_t>(n), Rat(4));
      diag[static_cast<size_t>(n - 1)] = 2;
      chain(n - 1, Rat(-2));
      edges.emplace_back(n - 2, n - 1, Rat(-2));
      P.weyl_order = 1;
      for (int i = 1; i <= n; ++i) P.weyl_order *= 2 * i;
      break;
    case Family::C:
      if (n < 2) throw UnsupportedPair("C_n needs n >= 2");
      diag.assign(static_cast<size_t>(n), Rat(2));
      diag[static_cast<size_t>(n - 1)] = 4;
      chain(n - 1, Rat(-1));
      edges.emplace_back(n - 2, n - 1, Rat(-2));
      P.weyl_order = 1;
      for (int i = 1; i <= n; ++i) P.weyl_order *= 2 * i;
      break;
    case Family::D: {
      if (n < 4) throw UnsupportedPair("D_n needs n >= 4");
      diag.assign(static_cast<size_t>(n), Rat(2));
      chain(n - 1, Rat(-1));
      edges.emplace_back(n - 3, n - 1, Rat(-1));
      long f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      long p2 = 1;
      for (int i = 0; i < n - 1; ++i) p2 *= 2;
      P.weyl_order = p2 * f;
      break;
    }
    case Family::G2:
      if (n != 2) throw UnsupportedPair("G2 has rank 2");
      diag = {Rat(2), Rat(6)};
      edges.emplace_back(0, 1, Rat(-3));
      P.weyl_order = 12;
      break;
    case Family::F4:
      if (n != 4) throw UnsupportedPair("F4 has rank 4");
      diag = {Rat(4), Rat(4), Rat(2), Rat(2)};
      edges.emplace_back(0, 1, Rat(-2));
      edges.emplace_back(1, 2, Rat(-2));
      edges.emplace_back(2, 3, Rat(-1));
      P.weyl_order = 1152;
      break;
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      int need = fam == Family::E6 ? 6 : fam == Family::E7 ? 7 : 8;
      if (n != need) throw UnsupportedPair("E family rank mismatch");
      diag.assign(static_cast<size_t>(n), Rat(2));
      edges.emplace_back(0, 2, Rat(-1));
      edges.emplace_back(2, 3, Rat(-1));
      edges.emplace_back(3, 4, Rat(-1));
      edges.emplace_back(4, 5, Rat(-1));
      if (need >= 7) edges.emplace_back(5, 6, Rat(-1));
      if (need >= 8) edges.emplace_back(6, 7, Rat(-1));
      edges.emplace_back(1, 3, Rat(-1));
      P.weyl_order = need == 6 ? 51840L : need == 7 ? 2903040L : 696729600L;
      break;
    }
    case Family::BC:
      if (n < 1) throw UnsupportedPair("BC_n needs n >= 1");
      bc = true;
      // R2 simple roots: e_i - e_{i+1} (|.|^2 = 4) and 2 e_n (|.|^2 = 8)
      diag.assign(static_cast<size_t>(n), Rat(4));
      diag[static_cast<size_t>(n - 1)] = 8;
      chain(n - 1, Rat(-2));
      if (n >= 2) edges.emplace_back(n - 2, n - 1, Rat(-4));
      P.weyl_order = 1;
      for (int i = 1; i <= n; ++i) P.weyl_order *= 2 * i;
      break;
  }
  P.nonreduced = bc;
  if (bc) {
    if (sc != SChoice::BC_S1 && sc != SChoice::BC_S2) throw UnsupportedPair("BC needs S1 or S2");
  } else if (sc != SChoice::S_equals_R && sc != SChoice::S_equals_R_dual) {
    throw UnsupportedPair("S1/S2 choices apply to BC only");
  }
  P.gram2 = symmetric_gram(n, diag, edges);
  P.d2.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) P.d2[static_cast<size_t>(i)] = diag[static_cast<size_t>(i)] / 2;
  P.cartan2.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = P.gram2[static_cast<size_t>(i)][static_cast<size_t>(j)] / P.d2[static_cast<size_t>(i)];
      require(is_integral(v), "Cartan entries must be integral");
      P.cartan2[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
    }
  // fundamental weight Gram: pi_i = sum_k M[k][i] sigma_k with C2 M = I
  RatMat m = mat_inverse(P.cartan2);
  P.gfund.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat s(0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          s += m[static_cast<size_t>(k)][static_cast<size_t>(i)] * m[static_cast<size_t>(l)][static_cast<size_t>(j)] *
               P.gram2[static_cast<size_t>(k)][static_cast<size_t>(l)];
      P.gfund[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
    }
  // reflection matrices on fundamental coordinates
  P.refl.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& M = P.refl[static_cast<size_t>(i)];
    for (int a = 0; a < kMaxRank; ++a)
      for (int b = 0; b < kMaxRank; ++b) M[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a == b) ? 1 : 0;
    for (int j = 0; j < n; ++j)
      M[static_cast<size_t>(j)][static_cast<size_t>(i)] -= static_cast<int32_t>(to_long(P.cartan2[static_cast<size_t>(j)][static_cast<size_t>(i)]));
  }
  // simple roots of R: the R2 simples, except the last one halves for BC
  P.rsimple.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Wt s(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = P.cartan2[static_cast<size_t>(j)][static_cast<size_t>(i)];
    if (bc && i == n - 1) s = wt_scale(s, rat(1, 2));
    P.rsimple[static_cast<size_t>(i)] = std::move(s);
  }
  {
    RatMat sm(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) sm[static_cast<size_t>(i)][static_cast<size_t>(j)] = P.rsimple[static_cast<size_t>(j)][static_cast<size_t>(i)];
    P.rsimple_inv = mat_inverse(sm);
  }
  // enumerate roots of R: orbits of the simple roots, plus doubles for BC
  {
    std::unordered_set<WKey, WKeyHash> seen;
    std::vector<Wt> all;
    std::vector<Wt> stack = P.rsimple;
    for (const auto& s : P.rsimple) seen.insert(wt_to_key2(s));
    while (!stack.empty()) {
      Wt w = stack.back();
      stack.pop_back();
      all.push_back(w);
      for (int i = 0; i < n; ++i) {
        Wt im = P.apply_refl_wt(i, w);
        if (seen.insert(wt_to_key2(im)).second) stack.push_back(im);
      }
    }
    if (bc) {
      std::vector<Wt> doubles;
      for (const auto& w : all) {
        Wt d = wt_scale(w, Rat(2));
        if (P.norm2_wt(w) == 2 && seen.insert(wt_to_key2(d)).second) doubles.push_back(d);
      }
      for (auto& d : doubles) all.push_back(d);
    }
    std::unordered_set<WKey, WKeyHash> rootset;
    for (const auto& w : all) rootset.insert(wt_to_key2(w));
    // positivity: R-simple-root coordinates all >= 0
    auto rcoords = [&](const Wt& w) {
      Wt x(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        Rat s(0);
        for (int j = 0; j < n; ++j) s += P.rsimple_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] * w[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = s;
      }
      return x;
    };
    std::set<Rat> lengths;
    for (const auto& w : all) lengths.insert(P.norm2_wt(w));
    P.orbit_len2.assign(lengths.begin(), lengths.end());
    P.r = static_cast<int>(P.orbit_len2.size());
    for (const auto& w : all) {
      auto x = rcoords(w);
      bool pos = true, neg = true;
      for (const auto& c : x) {
        if (c < 0) pos = false;
        if (c > 0) neg = false;
      }
      require(pos != neg, "root neither positive nor negative");
      if (!pos) continue;
      RootInfo ri;
      ri.fc = w;
      ri.key = WKey{};
      for (int i = 0; i < n; ++i) ri.key.c[i] = static_cast<int32_t>(to_long(w[static_cast<size_t>(i)]));
      ri.len2 = P.norm2_wt(w);
      ri.orbit = static_cast<int>(std::distance(P.orbit_len2.begin(),
                                                std::find(P.orbit_len2.begin(), P.orbit_len2.end(), ri.len2)));
      ri.divisible2 = rootset.count(wt_to_key2(wt_scale(w, Rat(2)))) > 0;
      ri.halvable = rootset.count(wt_to_key2(wt_scale(w, rat(1, 2)))) > 0;
      ri.covec = wt_scale(w, Rat(2) / ri.len2);
      P.pos_roots.push_back(std::move(ri));
    }
    // deterministic ordering: by height then lex
    std::sort(P.pos_roots.begin(), P.pos_roots.end(), [&](const RootInfo& a, const RootInfo& b) {
      WKey ka = wt_to_key2(a.fc), kb = wt_to_key2(b.fc);
      // height form not yet computed; order by coordinate sum of rcoords
      Rat ha(0), hb(0);
      for (const auto& c : rcoords(a.fc)) ha += c;
      for (const auto& c : rcoords(b.fc)) hb += c;
      if (ha != hb) return ha < hb;
      return lex_less(ka, kb);
    });
  }
  // u values per root and orbit
  for (auto& a : P.pos_roots) {
    switch (sc) {
      case SChoice::S_equals_R:
        a.u = 1;
        break;
      case SChoice::S_equals_R_dual: {
        Rat u = a.len2 / 2;
        require(is_integral(u), "S=R^vee needs even root norms");
        a.u = static_cast<int>(to_long(u));
        break;
      }
      case SChoice::BC_S1:
        a.u = a.halvable ? 2 : 1;
        break;
      case SChoice::BC_S2:
        a.u = (a.len2 == 2) ? 1 : 2;
        break;
    }
    a.star = wt_scale(a.fc, Rat(1) / a.u);
  }
  if (sc == SChoice::S_equals_R_dual) {
    std::set<int> uvals;
    for (const auto& a : P.pos_roots) uvals.insert(a.u);
    if (uvals.size() < 2) throw UnsupportedPair("S=R^vee requires two root lengths");
  }
  P.orbit_u.assign(static_cast<size_t>(P.r), 1);
  for (const auto& a : P.pos_roots) P.orbit_u[static_cast<size_t>(a.orbit)] = a.u;
  for (size_t i = 0; i < P.pos_roots.size(); ++i)
    if (!P.pos_roots[i].divisible2) P.r2_plus.push_back(static_cast<int>(i));
  // u_{2 alpha} = 2 u_alpha on divisible pairs
  for (const auto& a : P.pos_roots) {
    if (!a.divisible2) continue;
    for (const auto& b : P.pos_roots)
      if (b.fc == wt_scale(a.fc, Rat(2))) require(b.u == 2 * a.u, "u_{2a} != 2 u_a");
  }
  // rho = half sum over R2+, equals the all-ones weight
  P.rho = wt_zero(n);
  for (int idx : P.r2_plus) P.rho = wt_add(P.rho, wt_scale(P.pos_roots[static_cast<size_t>(idx)].fc, rat(1, 2)));
  for (int i = 0; i < n; ++i) require(P.rho[static_cast<size_t>(i)] == 1, "rho is not the all-ones weight");
  // height linear form (scaled integers)
  {
    long den = 1;
    std::vector<Rat> form(static_cast<size_t>(n), Rat(0));
    for (int j = 0; j < n; ++j) {
      Rat s(0);
      for (int i = 0; i < n; ++i) s += P.rsimple_inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
      form[static_cast<size_t>(j)] = s;
      den = lcm_long(den, to_long(Rat(s.get_den())));
    }
    P.ht_den = den;
    P.ht_form.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) P.ht_form[static_cast<size_t>(j)] = to_long(form[static_cast<size_t>(j)] * den);
  }
  // q-exponent denominator
  {
    long d = 2;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d = lcm_long(d, to_long(Rat(P.gfund[static_cast<size_t>(i)][static_cast<size_t>(j)].get_den())));
    P.D = static_cast<int>(lcm_long(4, 2 * d));
  }
  // minuscule fundamental weights of S^vee: omega with <omega, sigma^R_j> = delta,
  // i.e. the fundamental coweights of S; test <pi, alpha_*> in {0,1} on R^+.
  {
    // S simple roots: (alpha_i)_* for the R simples
    std::vector<Wt> ssimple;
    for (int i = 0; i < n; ++i) {
      // find the positive root equal to rsimple[i]
      const RootInfo* ri = nullptr;
      for (const auto& a : P.pos_roots)
        if (a.fc == P.rsimple[static_cast<size_t>(i)]) ri = &a;
      require(ri, "simple root missing from enumeration");
      ssimple.push_back(ri->star);
    }
    RatMat sm(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sm[static_cast<size_t>(i)][static_cast<size_t>(j)] = P.pair_wt(
          ssimple[static_cast<size_t>(i)], [&] {
            Wt e = wt_zero(n);
            e[static_cast<size_t>(j)] = 1;
            return e;
          }());
    // omega_i solves <omega_i, s_j> = delta_ij: with sm[i][j] = <s_i, pi_j>
    // the coordinate rows are (sm^T)^{-1}, i.e. columns of sm^{-1}.
    RatMat inv = mat_inverse(sm);
    for (int i = 0; i < n; ++i) {
      Wt omega(static_cast<size_t>(n));
      for (int j = 0; j < n; ++j) omega[static_cast<size_t>(j)] = inv[static_cast<size_t>(j)][static_cast<size_t>(i)];
      bool ok = true;
      for (const auto& a : P.pos_roots) {
        Rat v = P.pair_wt(omega, a.star);
        if (v != 0 && v != 1) ok = false;
      }
      if (ok) P.minuscule.push_back(omega);
    }
  }
  // quasi-minuscule pi = phi^vee, phi the dominant root with u_phi = 1
  for (size_t i = 0; i < P.pos_roots.size(); ++i) {
    const auto& a = P.pos_roots[i];
    if (a.u == 1 && P.dominant_wt(a.fc)) {
      P.quasi_minuscule = a.covec;
      P.phi_index = static_cast<int>(i);
    }
  }
  return P;
}

inline AdmissiblePair AdmissiblePair::parse(const std::string& desc) {
  std::string base = desc, suffix;
  auto colon = desc.find(':');
  if (colon != std::string::npos) {
    base = desc.substr(0, colon);
    suffix = desc.substr(colon + 1);
  }
  Family fam;
  size_t digits = 0;
  if (base.rfind("BC", 0) == 0) {
    fam = Family::BC;
    digits = 2;
  } else if (base.size() >= 1) {
    switch (base[0]) {
      case 'A': fam = Family::A; digits = 1; break;
      case 'B': fam = Family::B; digits = 1; break;
      case 'C': fam = Family::C; digits = 1; break;
      case 'D': fam = Family::D; digits = 1; break;
      case 'E': fam = base == "E6" ? Family::E6 : base == "E7" ? Family::E7 : Family::E8; digits = 1; break;
      case 'F': fam = Family::F4; digits = 1; break;
      case 'G': fam = Family::G2; digits = 1; break;
      default: throw UnsupportedPair("unknown family in descriptor: " + desc);
    }
  } else {
    throw UnsupportedPair("empty pair descriptor");
  }
  int rank = 0;
  try {
    rank = std::stoi(base.substr(digits));
  } catch (...) {
    throw UnsupportedPair("bad rank in descriptor: " + desc);
  }
  SChoice sc;
  if (fam == Family::BC) {
    if (suffix == "S1" || (suffix.empty() && rank == 1)) sc = SChoice::BC_S1;
    else if (suffix == "S2") sc = SChoice::BC_S2;
    else throw UnsupportedPair("BC descriptor needs :S1 or :S2");
  } else {
    if (suffix.empty()) sc = SChoice::S_equals_R;
    else if (suffix == "dual") sc = SChoice::S_equals_R_dual;
    else throw UnsupportedPair("unknown descriptor suffix: " + suffix);
  }
  AdmissiblePair P = build(fam, rank, sc);
  P.descriptor = desc;
  return P;
}

}  // namespace macrs
