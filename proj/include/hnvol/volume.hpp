#pragma once

// Volume of L = O(m) (x) pi1* O_{P(F)}(l) (x) pi* M on X = P(F) x_C P(E) from
// the HN data of E and F, plus the finite-n discrete oracle.

#include "hnvol/hn_core.hpp"
#include "hnvol/measures.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hnvol {

struct BundleInput {
  HNProfile prof_e;
  HNProfile prof_f = HNProfile::trivial();
  long m = 1;
  long l = 0;
  Rational a = 0;  // degree of M on the curve
};

/// How the limit-measure knots are scaled by (m, l).
enum class KnotScaling {
  derivation,  // knots m * s_i and l * s'_j; matches the discrete oracle
  literal,     // knots s_i and s'_j regardless of m, l
};

struct VolumeReport {
  long dim_x = 0;
  Rational vol_generic_fiber = 0;
  SpectralMeasure measure;
  Rational integral = 0;
  Rational volume = 0;
  std::vector<std::pair<long, Rational>> oracle_samples;
  std::vector<std::string> notes;
};

namespace detail {

inline long rank_as_long(const HNProfile& p) {
  const Integer r = p.rank();
  if (r > 1'000'000) throw ValidationError("bundle rank too large: " + r.str());
  return r.convert_to<long>();
}

}  // namespace detail

/// Top self-intersection of m H1 + l H2 on P^{e-1} x P^{f-1}; zero when the
/// class is not big. A point factor (rank 1) places no condition on its
/// coefficient.
inline Rational generic_fiber_volume(long e, long f, long m, long l) {
  if (e < 1 || f < 1) throw ValidationError("ranks must be >= 1");
  if ((e > 1 && m <= 0) || (f > 1 && l <= 0)) return 0;
  const auto ue = static_cast<unsigned>(e - 1);
  const auto uf = static_cast<unsigned>(f - 1);
  const Integer mult = factorial(ue + uf) / (factorial(ue) * factorial(uf));
  return Rational(ipow(Integer(m), ue) * ipow(Integer(l), uf) * mult);
}

/// vol_X(L) = dim X * vol(L_K) * int (x + a)_+ d(limit measure).
inline VolumeReport volume_exact(const BundleInput& in, KnotScaling scaling = KnotScaling::derivation) {
  const long e = detail::rank_as_long(in.prof_e);
  const long f = detail::rank_as_long(in.prof_f);
  VolumeReport rep;
  rep.dim_x = e + f - 1;
  rep.vol_generic_fiber = generic_fiber_volume(e, f, in.m, in.l);
  if (rep.vol_generic_fiber == 0) {
    rep.notes.emplace_back("L_K is not big; volume reported as 0");
    return rep;
  }
  const Rational se = scaling == KnotScaling::derivation ? Rational(in.m) : Rational(1);
  const Rational sf = scaling == KnotScaling::derivation ? Rational(in.l) : Rational(1);
  rep.measure = detail::simplex_pushforward(slope_vector(in.prof_e), slope_vector(in.prof_f), se, sf);
  rep.integral = integrate_plus(rep.measure, in.a);
  rep.volume = Rational(rep.dim_x) * rep.vol_generic_fiber * rep.integral;
  if (rep.volume < 0 || rep.volume != Rational(rep.dim_x) * rep.vol_generic_fiber * rep.integral)
    throw InvariantError("volume factorization broken");
  return rep;
}

namespace detail {

inline HNProfile pushforward_profile(const BundleInput& in, long n) {
  if (n < 1) throw ValidationError("oracle level n must be positive");
  if (in.m < 0 || in.l < 0) throw ValidationError("discrete oracle needs m*n >= 0 and l*n >= 0");
  return tensor_profile(sym_profile(in.prof_e, in.m * n), sym_profile(in.prof_f, in.l * n));
}

}  // namespace detail

/// V_n = (dim X)! / n^{dim X} * sum_j R''_j max(w_j + n a, 0), where (w_j, R''_j)
/// is the HN profile of Sym^{mn} E (x) Sym^{ln} F.
inline Rational volume_discrete_oracle(const BundleInput& in, long n) {
  const HNProfile t = detail::pushforward_profile(in, n);
  const long dim = detail::rank_as_long(in.prof_e) + detail::rank_as_long(in.prof_f) - 1;
  Rational sum = 0;
  const Rational shift = in.a * n;
  for (const auto& pc : t.pieces()) sum += Rational(pc.rank) * positive_part(pc.slope + shift);
  return Rational(factorial(static_cast<unsigned>(dim))) * sum / rpow(Rational(n), static_cast<unsigned>(dim));
}

/// T_{1/n} nu_{pi_* L^n} = T_{1/n} tau_{na} nu_{Sym^{mn} E (x) Sym^{ln} F}.
inline SpectralMeasure nu_pi_discrete(const BundleInput& in, long n) {
  const HNProfile t = twist_profile(detail::pushforward_profile(in, n), in.a * n);
  return scale_T(Rational(1, n), nu_of_profile(t));
}

/// Limit of nu_pi_discrete as n grows: tau_a of the derivation-scaled limit.
inline SpectralMeasure nu_pi_limit(const BundleInput& in) {
  return shift_tau(in.a, detail::simplex_pushforward(slope_vector(in.prof_e), slope_vector(in.prof_f), in.m, in.l));
}

}  // namespace hnvol
