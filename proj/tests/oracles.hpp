#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's algorithms; only its number types and containers are shared.

#include "hnvol/hn_core.hpp"
#include "hnvol/measures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using hnvol::HNPiece;
using hnvol::HNProfile;
using hnvol::Integer;
using hnvol::Rational;

using Buckets = std::map<Rational, Integer>;

inline Buckets buckets_of(const HNProfile& p) {
  Buckets b;
  for (const auto& pc : p.pieces()) b[pc.slope] += pc.rank;
  return b;
}

// Pairwise sums, grouped.
inline Buckets tensor(const HNProfile& p, const HNProfile& q) {
  Buckets b;
  for (const auto& x : p.pieces())
    for (const auto& y : q.pieces()) b[x.slope + y.slope] += x.rank * y.rank;
  return b;
}

// Pascal's triangle, no closed form.
inline Integer choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  std::vector<Integer> row{1};
  for (long i = 1; i <= n; ++i) {
    std::vector<Integer> next(row.size() + 1);
    next.front() = next.back() = 1;
    for (std::size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

// Sym^N by recursion over the last coordinate of the composition.
inline Buckets sym(const HNProfile& p, long n) {
  const auto& pcs = p.pieces();
  Buckets out;
  std::function<void(std::size_t, long, Rational, Integer)> go = [&](std::size_t i, long left, Rational slope,
                                                                     Integer rank) {
    if (i + 1 == pcs.size()) {
      const long r = pcs[i].rank.convert_to<long>();
      out[slope + Rational(left) * pcs[i].slope] += rank * choose(left + r - 1, r - 1);
      return;
    }
    const long r = pcs[i].rank.convert_to<long>();
    for (long a = 0; a <= left; ++a)
      go(i + 1, left - a, slope + Rational(a) * pcs[i].slope, rank * choose(a + r - 1, r - 1));
  };
  go(0, n, 0, 1);
  return out;
}

// Complete homogeneous symmetric polynomial h_k(x_1..x_e) via
// h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j).
inline Rational h(const std::vector<Rational>& x, unsigned k) {
  std::vector<Rational> cur(k + 1, Rational(0));
  cur[0] = 1;
  for (const auto& v : x)
    for (unsigned d = 1; d <= k; ++d) cur[d] += v * cur[d - 1];
  return cur[k];
}

// k-th moment of <s, X> for X uniform on the standard simplex.
inline Rational simplex_moment(const std::vector<Rational>& knots, unsigned k) {
  const unsigned e = static_cast<unsigned>(knots.size());
  return h(knots, k) * Rational(hnvol::factorial(k) * hnvol::factorial(e - 1)) /
         Rational(hnvol::factorial(e - 1 + k));
}

// Exact W1 between an atomic probability measure and uniform[lo, hi]:
// between consecutive atoms F1 is a constant c and F2 is linear, so |c - F2|
// integrates in closed form after splitting at the crossing point.
inline Rational w1_atomic_vs_uniform(const std::vector<std::pair<Rational, Rational>>& atoms, const Rational& lo,
                                     const Rational& hi) {
  std::vector<Rational> cuts{lo, hi};
  for (const auto& [x, w] : atoms) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto f1 = [&](const Rational& x) {
    Rational c = 0;
    for (const auto& [p, w] : atoms)
      if (p <= x) c += w;
    return c;
  };
  const auto f2 = [&](const Rational& x) {
    if (x <= lo) return Rational(0);
    if (x >= hi) return Rational(1);
    return Rational((x - lo) / (hi - lo));
  };
  // |g| for affine g integrates to the area of at most two triangles/trapezoids.
  const auto abs_affine = [](const Rational& a, const Rational& b, const Rational& ga, const Rational& gb) {
    if ((ga >= 0 && gb >= 0) || (ga <= 0 && gb <= 0)) return hnvol::rabs(ga + gb) / 2 * (b - a);
    const Rational root = a + (b - a) * ga / (ga - gb);
    return (hnvol::rabs(ga) * (root - a) + hnvol::rabs(gb) * (b - root)) / 2;
  };
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational a = cuts[i], b = cuts[i + 1];
    const Rational c = f1(a);
    // F2 is affine on [a, b] only within [lo, hi]; split there too.
    std::vector<Rational> sub{a, b};
    if (lo > a && lo < b) sub.insert(sub.begin() + 1, lo);
    if (hi > a && hi < b) sub.insert(sub.end() - 1, hi);
    for (std::size_t j = 0; j + 1 < sub.size(); ++j)
      total += abs_affine(sub[j], sub[j + 1], c - f2(sub[j]), c - f2(sub[j + 1]));
  }
  return total;
}

// Seeded random generators shared by the property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rational slope(long num_bound = 10, long den_bound = 4) {
    return Rational(integer(-num_bound, num_bound)) / Rational(integer(1, den_bound));
  }
  // Profile with at most `pieces` pieces and total rank at most `max_rank`.
  HNProfile profile(long pieces, long max_rank) {
    const long d = integer(1, pieces);
    std::vector<HNPiece> out;
    long budget = max_rank;
    for (long i = 0; i < d && budget > 0; ++i) {
      const long r = integer(1, std::max<long>(1, budget - (d - i - 1)));
      budget -= r;
      out.push_back({slope(), r});
    }
    return HNProfile(std::move(out));
  }
  std::vector<Rational> knots(long count, bool repeats) {
    std::vector<Rational> k;
    for (long i = 0; i < count; ++i) {
      if (repeats && !k.empty() && integer(0, 2) == 0)
        k.push_back(k[static_cast<std::size_t>(integer(0, static_cast<long>(k.size()) - 1))]);
      else
        k.push_back(slope(6, 3));
    }
    std::sort(k.begin(), k.end());
    return k;
  }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace oracle
