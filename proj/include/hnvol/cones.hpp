#pragma once

// Numerical divisor classes, 3-fold intersection forms and the effective /
// nef cone generators of projective bundles over surfaces.

#include "hnvol/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hnvol {

using Basis = std::vector<std::string>;

inline constexpr const char* kXi = "xi";

inline std::string pullback_label(const std::string& base_label) { return "pi*" + base_label; }

/// Coordinates of a numerical class in a labelled basis.
struct ClassVector {
  Basis basis;
  std::vector<Rational> coords;

  ClassVector() = default;
  ClassVector(Basis b, std::vector<Rational> c) : basis(std::move(b)), coords(std::move(c)) {
    if (basis.size() != coords.size()) throw ValidationError("class vector length does not match its basis");
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (basis[i] == basis[j]) throw ValidationError("duplicate basis label " + basis[i]);
  }

  std::size_t size() const { return coords.size(); }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& v) { return v == 0; });
  }

  friend bool operator==(const ClassVector&, const ClassVector&) = default;
};

inline ClassVector basis_vector(const Basis& basis, std::size_t i) {
  std::vector<Rational> c(basis.size());
  c.at(i) = 1;
  return {basis, std::move(c)};
}

/// Symmetric bilinear intersection pairing on a surface.
struct SurfaceForm {
  Basis basis;
  std::vector<std::vector<Rational>> matrix;

  SurfaceForm(Basis b, std::vector<std::vector<Rational>> m) : basis(std::move(b)), matrix(std::move(m)) {
    const std::size_t n = basis.size();
    if (matrix.size() != n) throw ValidationError("surface form has wrong size");
    for (const auto& row : matrix)
      if (row.size() != n) throw ValidationError("surface form has wrong size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (matrix[i][j] != matrix[j][i]) throw ValidationError("surface form is not symmetric");
  }

  Rational operator()(const std::vector<Rational>& u, const std::vector<Rational>& v) const {
    Rational out = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) out += u[i] * matrix[i][j] * v[j];
    return out;
  }
};

/// Symmetric trilinear form: top intersection numbers of a 3-fold.
class TriForm {
 public:
  explicit TriForm(Basis basis) : basis_(std::move(basis)), n_(basis_.size()), t_(n_ * n_ * n_) {}

  const Basis& basis() const { return basis_; }
  std::size_t dim() const { return n_; }

  /// Sets the entry for every permutation of (i, j, k).
  void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    const std::size_t p[3] = {i, j, k};
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& s : perms) t_[index(p[s[0]], p[s[1]], p[s[2]])] = v;
  }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return t_[index(i, j, k)]; }

  Rational operator()(const ClassVector& u, const ClassVector& v, const ClassVector& w) const {
    if (u.basis != basis_ || v.basis != basis_ || w.basis != basis_)
      throw ValidationError("intersection form evaluated on a different basis");
    Rational out = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (u.coords[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (v.coords[j] == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) out += u.coords[i] * v.coords[j] * w.coords[k] * at(i, j, k);
      }
    }
    return out;
  }

  bool symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (at(i, j, k) != at(j, i, k) || at(i, j, k) != at(i, k, j)) return false;
    return true;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * n_ + j) * n_ + k; }
  Basis basis_;
  std::size_t n_;
  std::vector<Rational> t_;
};

/// Cone spanned by generators over one shared basis.
struct PolyCone {
  Basis basis;
  std::vector<ClassVector> generators;

  PolyCone(Basis b, std::vector<ClassVector> gens) : basis(std::move(b)), generators(std::move(gens)) {
    for (const auto& g : generators) {
      if (g.basis != basis) throw ValidationError("cone generator on a different basis");
      if (g.is_zero()) throw ValidationError("cone generator must be nonzero");
    }
  }

  std::vector<std::vector<Rational>> matrix() const {
    std::vector<std::vector<Rational>> out;
    for (const auto& g : generators) out.push_back(g.coords);
    return out;
  }

  friend bool operator==(const PolyCone&, const PolyCone&) = default;
};

/// c2(End E) = 2 r c2(E) - (r - 1) c1(E)^2.
inline Rational discriminant_end(long r, const Rational& c1_sq, const Rational& c2) {
  if (r < 1) throw ValidationError("rank must be >= 1");
  return Rational(2 * r) * c2 - Rational(r - 1) * c1_sq;
}

/// Intersection form of P(E) for a rank-2 bundle E on a surface, in the basis
/// (xi, pi*D_1, ..., pi*D_k). Reduction via xi^2 = pi*c1 xi - pi*c2:
///   xi pi*D1 pi*D2 = D1.D2,  xi^2 pi*D = c1.D,  xi^3 = c1^2 - c2,
/// and any product of three pullbacks vanishes.
inline TriForm triform_pe_over_surface(const ClassVector& c1_e, const Rational& c2_e, const SurfaceForm& base) {
  if (c1_e.basis != base.basis) throw ValidationError("c1(E) and the surface form use different bases");
  const std::size_t k = base.basis.size();
  Basis basis{kXi};
  for (const auto& label : base.basis) basis.push_back(pullback_label(label));
  TriForm form(std::move(basis));
  form.set(0, 0, 0, base(c1_e.coords, c1_e.coords) - c2_e);
  for (std::size_t i = 0; i < k; ++i) {
    form.set(0, 0, i + 1, base(c1_e.coords, basis_vector(base.basis, i).coords));
    for (std::size_t j = 0; j < k; ++j) form.set(0, i + 1, j + 1, base.matrix[i][j]);
  }
  return form;
}

/// Residuals of xi^2 - pi*c1 xi + c2 [pi* point] against each basis class;
/// all zero for a form built from consistent reduction rules.
inline std::vector<Rational> grothendieck_residuals(const TriForm& form, const ClassVector& c1_e, const Rational& c2_e) {
  const Basis& b = form.basis();
  const ClassVector xi = basis_vector(b, 0);
  std::vector<Rational> lifted{0};
  lifted.insert(lifted.end(), c1_e.coords.begin(), c1_e.coords.end());
  const ClassVector pc1(b, lifted);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const ClassVector x = basis_vector(b, i);
    const Rational point_term = i == 0 ? Rational(1) : Rational(0);  // pi*(point) . x
    out.push_back(form(xi, xi, x) - form(pc1, xi, x) + c2_e * point_term);
  }
  return out;
}

namespace detail {

inline ClassVector lift_to_bundle(const Basis& bundle_basis, const Rational& xi_coeff, const ClassVector& base) {
  std::vector<Rational> c{xi_coeff};
  c.insert(c.end(), base.coords.begin(), base.coords.end());
  return {bundle_basis, std::move(c)};
}

inline Basis bundle_basis(const Basis& base) {
  Basis b{kXi};
  for (const auto& label : base) b.push_back(pullback_label(label));
  return b;
}

}  // namespace detail

/// Effective cone of P(E) for E semistable with vanishing discriminant:
/// lambda_E = xi - pi*(c1(E)/r) together with the pullbacks of the base
/// generators.
inline PolyCone cone_thm41(const std::vector<ClassVector>& eff_gens_x, const ClassVector& c1e_over_r) {
  if (eff_gens_x.empty()) throw ValidationError("base effective cone needs generators");
  const Basis b = detail::bundle_basis(c1e_over_r.basis);
  std::vector<ClassVector> gens;
  ClassVector neg = c1e_over_r;
  for (auto& v : neg.coords) v = -v;
  gens.push_back(detail::lift_to_bundle(b, 1, neg));
  for (const auto& g : eff_gens_x) {
    if (g.basis != c1e_over_r.basis) throw ValidationError("base generator on a different basis");
    gens.push_back(detail::lift_to_bundle(b, 0, g));
  }
  return {b, std::move(gens)};
}

struct EffNef {
  PolyCone eff;
  PolyCone nef;
};

inline const Basis& picard_one_basis() {
  static const Basis b{kXi, pullback_label("L_X")};
  return b;
}

/// P(O + L) with L = n L_X over a Picard-one surface: Eff spanned by
/// xi - n pi*L_X and pi*L_X, Nef by xi and pi*L_X.
inline EffNef cone_thm48(long n) {
  if (n <= 0) throw ValidationError("n must be a positive integer");
  const Basis& b = picard_one_basis();
  PolyCone eff(b, {ClassVector(b, {1, -n}), ClassVector(b, {0, 1})});
  PolyCone nef(b, {ClassVector(b, {1, 0}), ClassVector(b, {0, 1})});
  return {std::move(eff), std::move(nef)};
}

/// Intersection form of P(O + n L_X) over a Picard-one surface with
/// L_X^2 = lx_sq.
inline TriForm triform_thm48(long n, const Rational& lx_sq = 1) {
  const SurfaceForm base({"L_X"}, {{lx_sq}});
  return triform_pe_over_surface(ClassVector({"L_X"}, {Rational(n)}), 0, base);
}

/// Effective cone of P(O + L + M), L = m L_X, M = n L_X, m >= n >= 1, via the
/// cone isomorphism with P(L + M). P(L + M) = P(O + (L - M)) after twisting
/// by M^{-1}, which sends xi1 to xi1' = xi1 - n rho*L_X; its cone comes from
/// the split rank-2 case (m > n) or the semistable case (m = n). The result
/// is mapped back to (xi1, rho*L_X) and transported by a xi1 + b rho*L_X ->
/// a xi + b pi*L_X.
inline PolyCone cone_thm49(long m, long n) {
  if (n <= 0 || m < n) throw ValidationError("need m >= n >= 1");
  const Basis& b = picard_one_basis();
  // Generators of Eff(P(O + (m-n) L_X)) in (xi1', rho*L_X).
  std::vector<std::vector<Rational>> twisted;
  if (m > n) {
    for (const auto& g : cone_thm48(m - n).eff.generators) twisted.push_back(g.coords);
  } else {
    // O + O is semistable with c1 = 0, so lambda = xi1'.
    twisted = {{1, 0}, {0, 1}};
  }
  std::vector<ClassVector> gens;
  for (const auto& g : twisted) {
    // a xi1' + c rho*L = a xi1 + (c - a n) rho*L.
    const Rational a = g[0];
    const Rational c = g[1] - a * n;
    gens.emplace_back(b, std::vector<Rational>{a, c});  // U1 transport
  }
  return {b, std::move(gens)};
}

inline const Basis& ruled_surface_bundle_basis() {
  static const Basis b{kXi, pullback_label("eta"), pullback_label("f")};
  return b;
}

/// P(O + L) over a ruled surface P_C(W) with c1(L) = a eta + b f nef.
/// Eff: xi - a pi*eta - b pi*f, pi*eta, pi*f. Nef: xi, pi*(eta - mu_min f),
/// pi*f (the pullback of the base nef cone).
inline EffNef cone_thm410(const Rational& a, const Rational& b, const Rational& mu_min_w, const Rational& deg_w) {
  static_cast<void>(deg_w);  // enters only through the intersection form
  if (a < 0 || b + a * mu_min_w < 0)
    throw ValidationError("c1(L) = a eta + b f is not nef on the ruled surface");
  const Basis& basis = ruled_surface_bundle_basis();
  PolyCone eff(basis, {ClassVector(basis, {1, -a, -b}), ClassVector(basis, {0, 1, 0}), ClassVector(basis, {0, 0, 1})});
  PolyCone nef(basis,
               {ClassVector(basis, {1, 0, 0}), ClassVector(basis, {0, 1, -mu_min_w}), ClassVector(basis, {0, 0, 1})});
  return {std::move(eff), std::move(nef)};
}

/// Intersection form for the ruled-surface case: eta^2 = deg W, eta.f = 1,
/// f^2 = 0, c1(E) = a eta + b f, c2(E) = 0.
inline TriForm triform_thm410(const Rational& a, const Rational& b, const Rational& deg_w) {
  const SurfaceForm base({"eta", "f"}, {{deg_w, 1}, {1, 0}});
  return triform_pe_over_surface(ClassVector({"eta", "f"}, {a, b}), 0, base);
}

namespace detail {

using Matrix = std::vector<std::vector<Rational>>;

/// Row-reduces [A | rhs] and returns one solution (free variables zero), or
/// nullopt when inconsistent. `rank_out` receives rank(A).
inline std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> rhs, std::size_t* rank_out = nullptr) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= factor * a[r][j];
      rhs[i] -= factor * rhs[r];
    }
    pivots.push_back(c);
    ++r;
  }
  if (rank_out) *rank_out = r;
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = rhs[i];
  return x;
}

}  // namespace detail

struct MembershipResult {
  bool inside = false;
  /// Generator coefficients when v lies in the span (nonnegative iff inside).
  std::optional<std::vector<Rational>> coords;
  /// Functional w with w.g_i >= 0 for all generators and w.v < 0.
  std::optional<std::vector<Rational>> separating;
};

/// Exact membership test in a simplicial cone with an inside certificate or
/// a separating functional.
inline MembershipResult cone_membership(const PolyCone& cone, const ClassVector& v) {
  if (v.basis != cone.basis) throw ValidationError("query class on a different basis");
  const std::size_t d = cone.basis.size();
  const std::size_t k = cone.generators.size();
  detail::Matrix g(d, std::vector<Rational>(k));  // columns are generators
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < d; ++i) g[i][j] = cone.generators[j].coords[i];
  std::size_t rank = 0;
  const auto x = detail::solve(g, v.coords, &rank);
  if (rank != k) throw ValidationError("membership requires linearly independent generators");

  const auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  MembershipResult res;
  if (x) {
    res.coords = *x;
    const auto neg = std::find_if(x->begin(), x->end(), [](const Rational& c) { return c < 0; });
    if (neg == x->end()) {
      res.inside = true;
      return res;
    }
    // Dual basis element: w.g_i = [i == j] for the offending index j.
    const auto j = static_cast<std::size_t>(neg - x->begin());
    detail::Matrix gt(k, std::vector<Rational>(d));
    for (std::size_t i = 0; i < k; ++i) gt[i] = cone.generators[i].coords;
    std::vector<Rational> e(k);
    e[j] = 1;
    res.separating = *detail::solve(gt, e);
  } else {
    // w = -(v - proj_span(v)) is orthogonal to every generator and w.v = -|r|^2.
    detail::Matrix gram(k, std::vector<Rational>(k));
    std::vector<Rational> gv(k);
    for (std::size_t i = 0; i < k; ++i) {
      gv[i] = dot(cone.generators[i].coords, v.coords);
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(cone.generators[i].coords, cone.generators[j].coords);
    }
    const auto y = detail::solve(gram, gv);
    std::vector<Rational> w(v.coords);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) w[i] -= (*y)[j] * cone.generators[j].coords[i];
    for (auto& c : w) c = -c;
    res.separating = std::move(w);
  }
  const auto& w = *res.separating;
  for (const auto& gen : cone.generators)
    if (dot(w, gen.coords) < 0) throw InvariantError("separating functional is negative on a generator");
  if (dot(w, v.coords) >= 0) throw InvariantError("separating functional does not separate");
  return res;
}

/// Necessary condition for claimed cones on a 3-fold: products of two nef
/// classes are movable, so they pair nonnegatively with every effective
/// generator.
inline bool duality_check(const PolyCone& eff, const PolyCone& nef, const TriForm& form) {
  if (eff.basis != nef.basis || eff.basis != form.basis()) throw ValidationError("cones and form use different bases");
  for (const auto& ge : eff.generators)
    for (std::size_t i = 0; i < nef.generators.size(); ++i)
      for (std::size_t j = i; j < nef.generators.size(); ++j)
        if (form(ge, nef.generators[i], nef.generators[j]) < 0) return false;
  return true;
}

}  // namespace hnvol
