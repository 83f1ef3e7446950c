#include "macrs/scalar.hpp"

#include "catch_amalgamated.hpp"

using namespace macrs;

namespace {

// One symbolic ring (q, t) with D = 2 and one t-orbit, as in type A1.
ScalarRing sym_ring() {
  ScalarRing r;
  r.kind = RingKind::SymbolicQT;
  r.r = 1;
  r.bc = false;
  r.D = 2;
  r.u = {1};
  r.k = {Rat(1)};
  return r;
}

ScalarRing sub_ring(long k) {
  ScalarRing r;
  r.kind = RingKind::SubstitutedQ;
  r.r = 1;
  r.D = 2;
  r.u = {1};
  r.k = {Rat(k)};
  return r;
}

}  // namespace

TEST_CASE("field arithmetic and canonical forms") {
  ScalarRing R = sym_ring();
  Scalar one = Scalar::one(&R);
  Scalar q = Scalar::q_pow(&R, Rat(1));
  Scalar t = Scalar::t_pow(&R, 0, Rat(1));

  SECTION("(1-t)/(1-q) + (t-1)/(1-q) = 0") {
    Scalar a = (one - t) / (one - q);
    Scalar b = (t - one) / (one - q);
    CHECK((a + b).is_zero());
  }

  SECTION("q^(1/2) * q^(1/2) = q") {
    Scalar h = Scalar::q_pow(&R, rat(1, 2));
    CHECK(h * h == q);
  }

  SECTION("(1-q^2)/(1-q) equals 1+q exactly") {
    Scalar lhs = (one - q * q) / (one - q);
    CHECK(lhs == one + q);
    CHECK(lhs.is_polynomial());
  }

  SECTION("field axioms on random elements") {
    Rng rng(42);
    auto rnd = [&]() {
      Scalar s = Scalar::zero(&R);
      for (int i = 0; i < 3; ++i) {
        Scalar term = Scalar::from_rat(&R, rat(rng.range(-4, 4), rng.range(1, 3)));
        term = term * Scalar::q_pow(&R, Rat(rng.range(-2, 2)));
        term = term * Scalar::t_pow(&R, 0, Rat(rng.range(0, 2)));
        s = s + term;
      }
      return s;
    };
    for (int trial = 0; trial < 12; ++trial) {
      Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK(a + b == b + a);
      CHECK((a + b) * c == a * c + b * c);
      if (!c.is_zero()) CHECK(a * c / c == a);
    }
  }

  SECTION("division by zero raises") {
    CHECK_THROWS_AS(one / Scalar::zero(&R), DivisionByZero);
  }

  SECTION("canonical string form") {
    Scalar s = (one + q) * t;
    CHECK(s.str() == "q*t1 + t1");
    Scalar f = (one - t) / (one - q);
    CHECK(f.str() == "(t1 - 1)/(q - 1)");
  }
}

TEST_CASE("q-Pochhammer") {
  ScalarRing R = sym_ring();
  Scalar one = Scalar::one(&R);
  Scalar q = Scalar::q_pow(&R, Rat(1));
  Scalar t = Scalar::t_pow(&R, 0, Rat(1));

  CHECK(q_pochhammer(t, q, 0) == one);
  CHECK(q_pochhammer(t, q, 2) == (one - t) * (one - q * t));
  CHECK(q_pochhammer(q, q, 3) == (one - q) * (one - q * q) * (one - q * q * q));

  SECTION("recurrence (x;q)_{k+1} = (x;q)_k (1 - x q^k)") {
    for (long k = 0; k < 5; ++k) {
      Scalar lhs = q_pochhammer(t, q, k + 1);
      Scalar rhs = q_pochhammer(t, q, k) * (one - t * Scalar::q_pow(&R, Rat(k)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("substitution and evaluation") {
  ScalarRing R = sym_ring();
  Scalar one = Scalar::one(&R);
  Scalar q = Scalar::q_pow(&R, Rat(1));
  Scalar t = Scalar::t_pow(&R, 0, Rat(1));

  SECTION("t -> q turns (1-t)/(1-q) into 1") {
    ScalarRing S = sub_ring(1);
    Scalar f = (one - t) / (one - q);
    CHECK(f.substitute_t(&S) == Scalar::one(&S));
  }

  SECTION("q -> 0 of (1+q)(1-t)/(1-qt)") {
    Scalar f = (one + q) * (one - t) / (one - q * t);
    Scalar at0 = f.subst_slot_value(0, Rat(0));
    CHECK(at0 == one - t);
  }

  SECTION("evaluation after canonicalization: (1-q^2)/(1-q) at q=1 gives 2") {
    Scalar f = (one - q * q) / (one - q);
    // canonical form is 1+q, so there is no pole left
    Scalar at1 = f.subst_slot_value(0, Rat(1));
    CHECK(at1 == Scalar::from_rat(&R, Rat(2)));
  }

  SECTION("pole detection") {
    Scalar f = one / (one - q);
    CHECK_THROWS_AS(f.subst_slot_value(0, Rat(1)), PoleAtPoint);
  }
}

TEST_CASE("limit q -> 1") {
  ScalarRing S = sub_ring(1);
  Scalar one = Scalar::one(&S);
  Scalar q = Scalar::q_pow(&S, Rat(1));

  SECTION("(1-q^a)/(1-q^b) -> a/b") {
    for (long a = 1; a <= 4; ++a)
      for (long b = 1; b <= 4; ++b) {
        Scalar f = (one - Scalar::q_pow(&S, Rat(a))) / (one - Scalar::q_pow(&S, Rat(b)));
        CHECK(f.limit_q_to_1() == rat(a, b));
      }
  }

  SECTION("(1+q)(1-q)/(1-q^2) -> 1") {
    Scalar f = (one + q) * (one - q) / (one - q * q);
    CHECK(f.limit_q_to_1() == Rat(1));
  }

  SECTION("constants pass through") {
    CHECK(Scalar::from_rat(&S, rat(7, 3)).limit_q_to_1() == rat(7, 3));
  }

  SECTION("divergent limit raises") {
    Scalar f = one / (one - q);
    CHECK_THROWS_AS(f.limit_q_to_1(), PoleAtPoint);
  }
}

TEST_CASE("probing soundness: symbolic zero vanishes at 50 random points") {
  ScalarRing R = sym_ring();
  Scalar one = Scalar::one(&R);
  Scalar q = Scalar::q_pow(&R, Rat(1));
  Scalar t = Scalar::t_pow(&R, 0, Rat(1));
  // an identity: (1-t)(1+q) + (t-1)(1+q) == 0, telescoped pochhammers, etc.
  Scalar z = (one - t) * (one + q) + (t - one) * (one + q);
  Scalar w = q_pochhammer(t, q, 3) - (one - t) * (one - q * t) * (one - q * q * t);
  REQUIRE(z.is_zero());
  REQUIRE(w.is_zero());
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    // points assign q^(1/2) and t^(1/2)
    std::vector<Rat> pt = {rng.small_rat(), rng.small_rat()};
    Scalar probe = (one - t) * (one + q) + (t - one) * (one + q);
    CHECK(probe.to_rat_at(pt) == Rat(0));
  }
}
