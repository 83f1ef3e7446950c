#include "macrs/rootsys.hpp"

#include "catch_amalgamated.hpp"

using namespace macrs;

TEST_CASE("pair construction: A2, G2 dual, BC1") {
  auto A2 = AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R);
  CHECK(A2.pos_roots.size() == 3);
  CHECK(A2.r == 1);
  for (const auto& a : A2.pos_roots) CHECK(a.u == 1);

  auto G2 = AdmissiblePair::build(Family::G2, 2, SChoice::S_equals_R_dual);
  CHECK(G2.pos_roots.size() == 6);
  CHECK(G2.r == 2);
  for (const auto& a : G2.pos_roots) {
    if (a.len2 == 2) CHECK(a.u == 1);
    else CHECK(a.u == 3);
  }

  auto BC1 = AdmissiblePair::build(Family::BC, 1, SChoice::BC_S1);
  REQUIRE(BC1.pos_roots.size() == 2);
  CHECK(BC1.pos_roots[0].u == 1);
  CHECK(BC1.pos_roots[1].u == 2);
  CHECK(BC1.pos_roots[1].fc == wt_scale(BC1.pos_roots[0].fc, Rat(2)));
  CHECK(BC1.r == 2);

  CHECK_THROWS_AS(AdmissiblePair::build(Family::D, 3, SChoice::S_equals_R), UnsupportedPair);
  CHECK_THROWS_AS(AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R_dual), UnsupportedPair);
  CHECK_THROWS_AS(AdmissiblePair::build(Family::B, 2, SChoice::BC_S1), UnsupportedPair);
}

TEST_CASE("descriptor grammar") {
  CHECK(AdmissiblePair::parse("A2").family == Family::A);
  CHECK(AdmissiblePair::parse("B2:dual").s_choice == SChoice::S_equals_R_dual);
  CHECK(AdmissiblePair::parse("BC2:S1").s_choice == SChoice::BC_S1);
  CHECK(AdmissiblePair::parse("BC2:S2").s_choice == SChoice::BC_S2);
  CHECK(AdmissiblePair::parse("BC1").s_choice == SChoice::BC_S1);
  CHECK_THROWS_AS(AdmissiblePair::parse("H3"), UnsupportedPair);
  CHECK_THROWS_AS(AdmissiblePair::parse("BC2"), UnsupportedPair);
}

TEST_CASE("Weyl orbits") {
  auto A2 = AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R);
  Wt pi1 = {Rat(1), Rat(0)};
  auto orbit = A2.weyl_orbit_key(wt_to_key2(pi1));
  CHECK(orbit.size() == 3);
  CHECK(A2.stabilizer_order(wt_to_key2(pi1)) == 2);

  auto zero = A2.weyl_orbit_key(WKey{});
  CHECK(zero.size() == 1);
  CHECK(A2.stabilizer_order(WKey{}) == A2.weyl_order);

  auto B2 = AdmissiblePair::build(Family::B, 2, SChoice::S_equals_R);
  auto rho_orbit = B2.weyl_orbit_key(wt_to_key2(B2.rho));
  CHECK(rho_orbit.size() == 8);
  CHECK(B2.stabilizer_order(wt_to_key2(B2.rho)) == 1);

  SECTION("orbit independent of reflection order") {
    // reflect in a permuted order and compare as sets
    std::unordered_set<WKey, WKeyHash> seen;
    std::vector<WKey> stack{wt_to_key2(pi1)};
    seen.insert(stack[0]);
    while (!stack.empty()) {
      WKey k = stack.back();
      stack.pop_back();
      for (int i = A2.n - 1; i >= 0; --i) {
        WKey im = A2.apply_refl(i, k);
        if (seen.insert(im).second) stack.push_back(im);
      }
    }
    CHECK(seen.size() == orbit.size());
    for (const auto& k : orbit) CHECK(seen.count(k) == 1);
  }
}

TEST_CASE("dominant conjugates and signs") {
  auto A1 = AdmissiblePair::build(Family::A, 1, SChoice::S_equals_R);
  // nu = -rho: single reflection, sign -1
  Wt neg_rho = wt_scale(A1.rho, Rat(-1));
  auto [dom, sign] = A1.dominant_conjugate(neg_rho);
  CHECK(dom == A1.rho);
  CHECK(sign == -1);
  auto [dom0, sign0] = A1.dominant_conjugate(wt_zero(1));
  CHECK(sign0 == 0);

  auto A2 = AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R);
  Wt target = {Rat(2), Rat(1)};  // rho + pi1
  Wt moved = A2.apply_refl_wt(0, target);
  auto [dom2, sign2] = A2.dominant_conjugate(moved);
  CHECK(dom2 == target);
  CHECK(sign2 == -1);
}

TEST_CASE("dominance order and weights_below") {
  auto A1 = AdmissiblePair::build(Family::A, 1, SChoice::S_equals_R);
  Wt alpha = A1.pos_roots[0].fc;       // = 2 pi1
  Wt half = wt_scale(alpha, rat(1, 2));
  CHECK(A1.dominance_leq(wt_zero(1), alpha));
  CHECK(!A1.dominance_leq(half, alpha));  // different Q-coset

  auto A2 = AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R);
  Wt theta = {Rat(1), Rat(1)};  // alpha1 + alpha2
  auto below = A2.weights_below(theta);
  REQUIRE(below.size() == 2);
  CHECK(below[0] == theta);
  CHECK(below[1] == wt_zero(2));

  auto B2 = AdmissiblePair::build(Family::B, 2, SChoice::S_equals_R);
  Wt two_pi1 = {Rat(2), Rat(0)};
  auto wb = B2.weights_below(two_pi1);
  // brute force: every dominant mu in a coordinate box with mu <= lambda
  std::vector<Wt> brute;
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b) {
      Wt mu = {Rat(a), Rat(b)};
      if (B2.dominance_leq(mu, two_pi1)) brute.push_back(mu);
    }
  CHECK(wb.size() == brute.size());
  for (const auto& mu : brute)
    CHECK(std::find(wb.begin(), wb.end(), mu) != wb.end());
  // the order refines dominance
  for (size_t i = 0; i < wb.size(); ++i)
    for (size_t j = i + 1; j < wb.size(); ++j) CHECK(!B2.dominance_leq(wb[i], wb[j]));
}

TEST_CASE("special vectors") {
  auto A1 = AdmissiblePair::build(Family::A, 1, SChoice::S_equals_R);
  std::vector<Rat> k1 = {Rat(1)};
  Wt rk = A1.rho_k(k1);
  CHECK(rk == wt_scale(A1.pos_roots[0].fc, rat(1, 2)));
  CHECK(A1.pair_wt(rk, A1.pos_roots[0].covec) == 1);

  auto G2 = AdmissiblePair::build(Family::G2, 2, SChoice::S_equals_R_dual);
  CHECK(G2.minuscule.empty());
  REQUIRE(G2.phi_index >= 0);
  const auto& phi = G2.pos_roots[static_cast<size_t>(G2.phi_index)];
  CHECK(phi.len2 == 2);  // highest short root
  CHECK(G2.dominant_wt(phi.fc));
  // (6.1): <pi, alpha_*> is 2 exactly at phi, else 0 or 1
  for (size_t i = 0; i < G2.pos_roots.size(); ++i) {
    Rat v = G2.pair_wt(G2.quasi_minuscule, G2.pos_roots[i].star);
    if (static_cast<int>(i) == G2.phi_index) CHECK(v == 2);
    else CHECK((v == 0 || v == 1));
  }

  auto D4 = AdmissiblePair::build(Family::D, 4, SChoice::S_equals_R);
  CHECK(D4.minuscule.size() == 3);  // vector and the two spinors

  auto F4 = AdmissiblePair::build(Family::F4, 4, SChoice::S_equals_R_dual);
  CHECK(F4.minuscule.empty());
  CHECK(F4.pos_roots.size() == 24);

  SECTION("minuscule pairings lie in {0,1}") {
    for (const char* d : {"A3", "B3", "C3", "BC2:S1", "BC2:S2"}) {
      auto P = AdmissiblePair::parse(d);
      REQUIRE(!P.minuscule.empty());
      for (const auto& pi : P.minuscule)
        for (const auto& a : P.pos_roots) {
          Rat v = P.pair_wt(pi, a.star);
          CHECK((v == 0 || v == 1));
        }
    }
  }

  SECTION("<rho_k, alpha_i^vee> = k_i + 2 k_{2 alpha_i}") {
    for (const char* d : {"A2", "B2", "G2:dual", "BC2:S1", "BC2:S2", "BC1"}) {
      auto P = AdmissiblePair::parse(d);
      std::vector<Rat> k;
      for (int o = 0; o < P.r; ++o) k.push_back(rat(o + 1));
      Wt rk2 = P.rho_k(k);
      for (int i = 0; i < P.n; ++i) {
        const RootInfo* simple = nullptr;
        const RootInfo* dbl = nullptr;
        for (const auto& a : P.pos_roots) {
          if (a.fc == P.rsimple[static_cast<size_t>(i)]) simple = &a;
          if (a.fc == wt_scale(P.rsimple[static_cast<size_t>(i)], Rat(2))) dbl = &a;
        }
        REQUIRE(simple);
        Rat expect = k[static_cast<size_t>(simple->orbit)];
        if (dbl) expect += 2 * k[static_cast<size_t>(dbl->orbit)];
        CHECK(P.pair_wt(rk2, simple->covec) == expect);
      }
    }
  }

  SECTION("k=1 on reduced pairs gives rho_k = rho") {
    for (const char* d : {"A2", "B2", "D4", "G2"}) {
      auto P = AdmissiblePair::parse(d);
      std::vector<Rat> ones(static_cast<size_t>(P.r), Rat(1));
      CHECK(P.rho_k(ones) == P.rho);
    }
  }
}

TEST_CASE("full Weyl enumeration and inversion sets") {
  auto A2 = AdmissiblePair::build(Family::A, 2, SChoice::S_equals_R);
  const auto& W = A2.weyl_elements();
  REQUIRE(W.size() == 6);
  std::map<int, int> by_len;
  for (const auto& w : W) {
    int len = 0;
    for (char c : w.inverts) len += c;
    by_len[len]++;
    CHECK(len % 2 == w.parity % 2);
  }
  CHECK(by_len[0] == 1);
  CHECK(by_len[1] == 2);
  CHECK(by_len[2] == 2);
  CHECK(by_len[3] == 1);

  auto D4 = AdmissiblePair::build(Family::D, 4, SChoice::S_equals_R);
  CHECK(D4.weyl_elements().size() == 192);

  auto BC2 = AdmissiblePair::parse("BC2:S1");
  CHECK(BC2.weyl_elements().size() == 8);
}
