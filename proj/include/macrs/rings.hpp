#pragma once

#include "macrs/rootsys.hpp"
#include "macrs/scalar.hpp"

namespace macrs {

inline ScalarRing ring_symbolic(const AdmissiblePair& P) {
  ScalarRing r;
  r.kind = RingKind::SymbolicQT;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k.assign(static_cast<size_t>(P.r), Rat(0));
  return r;
}

inline ScalarRing ring_substituted(const AdmissiblePair& P, const std::vector<Rat>& k) {
  require(static_cast<int>(k.size()) == P.r, "k must have one entry per orbit");
  for (const auto& v : k)
    if (!is_integral(v) || v < 0) throw NonIntegerK("integer k >= 0 required in substituted mode");
  ScalarRing r;
  r.kind = RingKind::SubstitutedQ;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k = k;
  return r;
}

inline ScalarRing ring_probed(const AdmissiblePair& P, const std::vector<Rat>& k, Rng& rng) {
  for (const auto& v : k)
    if (!is_integral(v) || v < 0) throw NonIntegerK("integer k >= 0 required in probed mode");
  ScalarRing r;
  r.kind = RingKind::Probed;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k = k;
  r.probe_q = rng.small_rat();
  return r;
}

inline ScalarRing ring_t_only(const AdmissiblePair& P) {
  ScalarRing r;
  r.kind = RingKind::TOnly;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k.assign(static_cast<size_t>(P.r), Rat(0));
  return r;
}

inline ScalarRing ring_probed_t(const AdmissiblePair& P, Rng& rng) {
  ScalarRing r;
  r.kind = RingKind::Probed;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k.assign(static_cast<size_t>(P.r), Rat(0));
  r.probe_t_direct = true;
  for (int o = 0; o < P.r; ++o) r.probe_thalf.push_back(rng.small_rat());
  return r;
}

inline ScalarRing ring_k_symbolic(const AdmissiblePair& P) {
  ScalarRing r;
  r.kind = RingKind::KSymbolic;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k.assign(static_cast<size_t>(P.r), Rat(0));
  return r;
}

inline ScalarRing ring_k_rational(const AdmissiblePair& P, const std::vector<Rat>& k) {
  require(static_cast<int>(k.size()) == P.r, "k must have one entry per orbit");
  ScalarRing r;
  r.kind = RingKind::KRational;
  r.r = P.r;
  r.bc = P.nonreduced;
  r.D = P.D;
  r.u = P.orbit_u;
  r.k = k;
  return r;
}

}  // namespace macrs
