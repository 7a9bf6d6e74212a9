#pragma once

// Finite measures on the rational line made of atoms plus a piecewise
// polynomial density, with exact arithmetic throughout (W1 excepted).

#include "hnvol/hn_core.hpp"
#include "hnvol/poly.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace hnvol {

struct Atom {
  Rational point;
  Rational mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Density `density(x)` on the half-open interval [lo, hi).
struct DensityPiece {
  Rational lo;
  Rational hi;
  Poly density;

  friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

namespace detail {

/// Splits possibly overlapping pieces at every endpoint and sums the
/// polynomials on each elementary interval.
inline std::vector<DensityPiece> refine_and_sum(const std::vector<DensityPiece>& in) {
  std::vector<Rational> cuts;
  for (const auto& p : in) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<DensityPiece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Poly sum;
    for (const auto& p : in)
      if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) sum += p.density;
    if (!sum.is_zero()) out.push_back({cuts[i], cuts[i + 1], std::move(sum)});
  }
  return out;
}

}  // namespace detail

/// Atoms plus compactly supported piecewise-polynomial density.
///
/// Canonical form: atoms sorted by point with equal points merged and zero
/// masses dropped; density pieces disjoint, sorted, nonzero, and adjacent
/// pieces carrying the same polynomial merged. Structural equality is
/// therefore equality of measures.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;
  SpectralMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces) {
    for (const auto& a : atoms)
      if (a.mass < 0) throw ValidationError("atom mass must be nonnegative");
    for (const auto& p : pieces)
      if (!(p.lo < p.hi)) throw ValidationError("density interval must satisfy lo < hi");

    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
    for (auto& a : atoms) {
      if (!atoms_.empty() && atoms_.back().point == a.point)
        atoms_.back().mass += a.mass;
      else
        atoms_.push_back(std::move(a));
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.mass == 0; });

    for (auto& p : detail::refine_and_sum(pieces)) {
      if (!pieces_.empty() && pieces_.back().hi == p.lo && pieces_.back().density == p.density)
        pieces_.back().hi = p.hi;
      else
        pieces_.push_back(std::move(p));
    }
  }

  static SpectralMeasure dirac(const Rational& x, const Rational& mass = 1) { return {{{x, mass}}, {}}; }
  static SpectralMeasure uniform(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw ValidationError("uniform measure needs lo < hi");
    return {{}, {{lo, hi, Poly::constant(Rational(1) / (hi - lo))}}};
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  /// Integral of x^k against the measure.
  Rational moment(unsigned k) const {
    Rational out = 0;
    for (const auto& a : atoms_) out += a.mass * rpow(a.point, k);
    for (const auto& p : pieces_) out += (p.density * Poly::monomial(1, k)).integrate(p.lo, p.hi);
    return out;
  }
  Rational total_mass() const { return moment(0); }
  bool is_probability() const { return total_mass() == 1; }
  /// Mean of the normalized measure.
  Rational mean() const {
    const Rational mass = total_mass();
    if (mass == 0) throw ValidationError("mean of a zero measure");
    return moment(1) / mass;
  }

  Rational support_min() const {
    require_nonempty();
    std::optional<Rational> lo;
    if (!atoms_.empty()) lo = atoms_.front().point;
    if (!pieces_.empty() && (!lo || pieces_.front().lo < *lo)) lo = pieces_.front().lo;
    return *lo;
  }
  Rational support_max() const {
    require_nonempty();
    std::optional<Rational> hi;
    if (!atoms_.empty()) hi = atoms_.back().point;
    if (!pieces_.empty() && (!hi || pieces_.back().hi > *hi)) hi = pieces_.back().hi;
    return *hi;
  }

  /// Density values at every interval endpoint and midpoint are >= 0.
  bool density_spot_nonnegative() const {
    for (const auto& p : pieces_) {
      const Rational mid = (p.lo + p.hi) / 2;
      if (p.density(p.lo) < 0 || p.density(mid) < 0 || p.density(p.hi) < 0) return false;
    }
    return true;
  }

  /// Absolutely continuous part at x (0 outside the pieces).
  Rational density_at(const Rational& x) const {
    for (const auto& p : pieces_)
      if (p.lo <= x && x < p.hi) return p.density(x);
    return 0;
  }

  friend bool operator==(const SpectralMeasure&, const SpectralMeasure&) = default;

 private:
  void require_nonempty() const {
    if (empty()) throw ValidationError("support of an empty measure");
  }
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
};

/// nu_E: atom of mass r_i / rank at every HN slope.
inline SpectralMeasure nu_of_profile(const HNProfile& p) {
  const Rational total(p.rank());
  std::vector<Atom> atoms;
  for (const auto& pc : p.pieces()) atoms.push_back({pc.slope, Rational(pc.rank) / total});
  return {std::move(atoms), {}};
}

/// T_eps: pushforward under x -> eps * x.
inline SpectralMeasure scale_T(const Rational& eps, const SpectralMeasure& m) {
  if (eps <= 0) throw ValidationError("T_eps requires eps > 0");
  std::vector<Atom> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({a.point * eps, a.mass});
  std::vector<DensityPiece> pieces;
  const Rational inv = Rational(1) / eps;
  for (const auto& p : m.pieces()) pieces.push_back({p.lo * eps, p.hi * eps, p.density.compose_affine(inv, 0) * inv});
  return {std::move(atoms), std::move(pieces)};
}

/// tau_a: pushforward under x -> x + a.
inline SpectralMeasure shift_tau(const Rational& a, const SpectralMeasure& m) {
  std::vector<Atom> atoms;
  for (const auto& at : m.atoms()) atoms.push_back({at.point + a, at.mass});
  std::vector<DensityPiece> pieces;
  for (const auto& p : m.pieces()) pieces.push_back({p.lo + a, p.hi + a, p.density.compose_affine(1, -a)});
  return {std::move(atoms), std::move(pieces)};
}

/// Law of <s, X> for X uniform on the standard simplex, s = knots
/// (Curry-Schoenberg B-spline). The density on each knot interval is
/// (n-1) * [t_0..t_{n-1}] (t - x)_+^{n-2}, computed as a polynomial in x via
/// confluent divided differences so repeated knots are handled exactly.
inline SpectralMeasure bspline_measure(std::vector<Rational> knots) {
  if (knots.empty()) throw ValidationError("B-spline needs at least one knot");
  if (!std::is_sorted(knots.begin(), knots.end())) throw ValidationError("B-spline knots must be non-decreasing");
  if (knots.front() == knots.back()) return SpectralMeasure::dirac(knots.front());

  const std::size_t n = knots.size();
  const unsigned deg = static_cast<unsigned>(n - 2);
  std::vector<Rational> breaks(knots);
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<DensityPiece> pieces;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const Rational& left = breaks[j];
    // d^r/dt^r (t - x)^deg / r! at t = z, as a polynomial in x; zero for
    // knots left of the interval where (t - x)_+ vanishes identically.
    const auto taylor = [&](const Rational& z, std::size_t r) -> Poly {
      if (z <= left || r > deg) return {};
      return Poly::linear(-1, z).pow(deg - static_cast<unsigned>(r)) *
             Rational(binomial(deg, static_cast<long>(r)));
    };
    std::vector<Poly> table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = taylor(knots[i], 0);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t i = 0; i + r < n; ++i) {
        if (knots[i] == knots[i + r])
          table[i] = taylor(knots[i], r);
        else
          table[i] = (table[i + 1] - table[i]) * (Rational(1) / (knots[i + r] - knots[i]));
      }
    }
    pieces.push_back({breaks[j], breaks[j + 1], table[0] * Rational(n - 1)});
  }
  SpectralMeasure out({}, std::move(pieces));
  if (out.total_mass() != 1) throw InvariantError("B-spline density does not integrate to 1");
  return out;
}

inline SpectralMeasure bspline_measure(const SlopeVector& s) { return bspline_measure(s.entries()); }

namespace detail {

/// Convolution of f on [a,b) with g on [c,d): h(z) = int f(x) g(z - x) dx.
inline std::vector<DensityPiece> convolve_pieces(const DensityPiece& f, const DensityPiece& g) {
  // H(x, z) = f(x) g(z - x) as a polynomial in x with coefficients in z.
  const auto& gc = g.density.coeffs();
  std::vector<Poly> gx;  // coefficient of x^k in g(z - x)
  for (std::size_t j = 0; j < gc.size(); ++j)
    for (std::size_t k = 0; k <= j; ++k) {
      if (gx.size() <= k) gx.resize(k + 1);
      Rational c = gc[j] * Rational(binomial(j, static_cast<long>(k)));
      if (k % 2 == 1) c = -c;
      gx[k] += Poly::monomial(c, j - k);
    }
  const auto& fc = f.density.coeffs();
  std::vector<Poly> hx(fc.size() + gx.size());
  for (std::size_t i = 0; i < fc.size(); ++i)
    for (std::size_t k = 0; k < gx.size(); ++k) hx[i + k] += gx[k] * fc[i];
  // Antiderivative in x.
  std::vector<Poly> ax(hx.size() + 1);
  for (std::size_t p = 0; p < hx.size(); ++p) ax[p + 1] = hx[p] * (Rational(1) / Rational(p + 1));
  // Evaluate at x = alpha * z + beta.
  const auto at = [&](const Rational& alpha, const Rational& beta) {
    Poly out;
    const Poly sub = Poly::linear(alpha, beta);
    for (auto it = ax.rbegin(); it != ax.rend(); ++it) out = out * sub + *it;
    return out;
  };

  std::vector<Rational> cuts{f.lo + g.lo, f.lo + g.hi, f.hi + g.lo, f.hi + g.hi};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<DensityPiece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    // x ranges over [max(a, z - d), min(b, z - c)).
    const Poly lower = f.lo >= mid - g.hi ? at(0, f.lo) : at(1, -g.hi);
    const Poly upper = f.hi <= mid - g.lo ? at(0, f.hi) : at(1, -g.lo);
    Poly h = upper - lower;
    if (!h.is_zero()) out.push_back({cuts[i], cuts[i + 1], std::move(h)});
  }
  return out;
}

}  // namespace detail

/// Law of the sum of independent draws from m1 and m2.
inline SpectralMeasure convolve(const SpectralMeasure& m1, const SpectralMeasure& m2) {
  std::vector<Atom> atoms;
  for (const auto& a : m1.atoms())
    for (const auto& b : m2.atoms()) atoms.push_back({a.point + b.point, a.mass * b.mass});
  std::vector<DensityPiece> pieces;
  const auto atom_times_density = [&](const Atom& a, const DensityPiece& p) {
    pieces.push_back({p.lo + a.point, p.hi + a.point, p.density.compose_affine(1, -a.point) * a.mass});
  };
  for (const auto& a : m1.atoms())
    for (const auto& p : m2.pieces()) atom_times_density(a, p);
  for (const auto& a : m2.atoms())
    for (const auto& p : m1.pieces()) atom_times_density(a, p);
  for (const auto& p : m1.pieces())
    for (const auto& q : m2.pieces())
      for (auto& piece : detail::convolve_pieces(p, q)) pieces.push_back(std::move(piece));
  SpectralMeasure out(std::move(atoms), std::move(pieces));
  if (out.total_mass() != m1.total_mass() * m2.total_mass())
    throw InvariantError("convolution did not multiply masses");
  return out;
}

namespace detail {

inline std::vector<Rational> scaled_knots(const SlopeVector& s, const Rational& scale) {
  std::vector<Rational> k;
  for (const auto& v : s.entries()) k.push_back(v * scale);
  std::sort(k.begin(), k.end());
  return k;
}

/// Law of scaleE <sE, X> + scaleF <sF, X'> with X, X' independent uniform on
/// their simplices. Any rational scale is allowed here.
inline SpectralMeasure simplex_pushforward(const SlopeVector& sE, const SlopeVector& sF, const Rational& scaleE,
                                           const Rational& scaleF) {
  if (sE.empty()) throw ValidationError("slope vector of E must be nonempty");
  SpectralMeasure out = bspline_measure(scaled_knots(sE, scaleE));
  if (!sF.empty()) out = convolve(out, bspline_measure(scaled_knots(sF, scaleF)));
  return out;
}

}  // namespace detail

/// Vague limit of T_{1/n} nu_{Sym^{mn} E (x) Sym^{ln} F}: the pushforward of
/// normalized Lebesgue measure on the product of simplices under
/// x -> mScale <sE, x> + lScale <sF, x'>. Pass mScale = lScale = 1 for the
/// unscaled functional.
inline SpectralMeasure limit_measure(const SlopeVector& sE, const SlopeVector& sF, const Rational& m_scale,
                                     const Rational& l_scale) {
  if (m_scale <= 0) throw ValidationError("mScale must be positive");
  if (!sF.empty() && l_scale < 0) throw ValidationError("lScale must be nonnegative");
  return detail::simplex_pushforward(sE, sF, m_scale, l_scale);
}

/// Exact value of int max(x + a, 0) dm.
inline Rational integrate_plus(const SpectralMeasure& m, const Rational& a) {
  Rational out = 0;
  for (const auto& at : m.atoms()) out += at.mass * positive_part(at.point + a);
  const Rational cut = -a;
  for (const auto& p : m.pieces()) {
    const Rational lo = std::max(p.lo, cut);
    if (lo >= p.hi) continue;
    out += (p.density * Poly::linear(1, a)).integrate(lo, p.hi);
  }
  return out;
}

/// Right-continuous cumulative distribution function, exact and piecewise
/// polynomial between the atom points and density breakpoints.
class Cdf {
 public:
  explicit Cdf(const SpectralMeasure& m) {
    std::vector<Rational> cuts;
    for (const auto& a : m.atoms()) cuts.push_back(a.point);
    for (const auto& p : m.pieces()) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Rational below = 0;  // F just left of the current cut
    std::size_t atom_i = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      Rational base = below;
      while (atom_i < m.atoms().size() && m.atoms()[atom_i].point == cuts[i]) base += m.atoms()[atom_i++].mass;
      Segment seg{cuts[i], Poly::constant(base), {}};
      if (i + 1 < cuts.size()) {
        for (const auto& p : m.pieces())
          if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) {
            const Poly anti = p.density.antiderivative();
            seg.value = anti - Poly::constant(anti(cuts[i]) - base);
          }
        below = seg.value(cuts[i + 1]);
      }
      seg.value_d = seg.value.to_double();
      segments_.push_back(std::move(seg));
      lo_d_.push_back(hnvol::to_double(cuts[i]));
    }
  }

  Rational operator()(const Rational& x) const {
    std::size_t k = segments_.size();
    while (k > 0 && segments_[k - 1].lo > x) --k;
    if (k == 0) return 0;
    return segments_[k - 1].value(x);
  }

  double at(double x) const {
    const auto it = std::upper_bound(lo_d_.begin(), lo_d_.end(), x);
    if (it == lo_d_.begin()) return 0.0;
    const auto k = static_cast<std::size_t>(it - lo_d_.begin()) - 1;
    return horner(segments_[k].value_d, x);
  }

 private:
  struct Segment {
    Rational lo;
    Poly value;  // F on [lo, next lo); constant total mass on the last one
    std::vector<double> value_d;
  };
  std::vector<Segment> segments_;
  std::vector<double> lo_d_;
};

inline Cdf cdf(const SpectralMeasure& m) { return Cdf(m); }

struct W1Estimate {
  double value;
  /// Midpoint-rule bound: each cell errs by at most h times the oscillation
  /// of F1 - F2 on it, and the total variation of F1 - F2 is at most 2.
  double error_bound;
};

/// Grid estimate of W1(m1, m2) = int |F1 - F2| dx.
inline W1Estimate w1_distance(const SpectralMeasure& m1, const SpectralMeasure& m2, long grid_size = 100000) {
  if (!m1.is_probability() || !m2.is_probability()) throw ValidationError("W1 needs probability measures");
  if (grid_size < 1) throw ValidationError("W1 grid size must be positive");
  const double lo = to_double(std::min(m1.support_min(), m2.support_min()));
  const double hi = to_double(std::max(m1.support_max(), m2.support_max()));
  const double len = hi - lo;
  if (len <= 0.0) return {0.0, 0.0};
  const Cdf f1(m1), f2(m2);
  const double h = len / static_cast<double>(grid_size);
  double sum = 0.0;
  for (long i = 0; i < grid_size; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * h;
    sum += std::abs(f1.at(x) - f2.at(x));
  }
  return {sum * h, 2.0 * h};
}

}  // namespace hnvol
