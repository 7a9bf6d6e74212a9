#pragma once

// Harder-Narasimhan calculus on numerical profiles: a profile is the list of
// (slope, rank) pairs of the semistable graded pieces, slopes ascending.

#include "hnvol/rational.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <utility>
#include <vector>

namespace hnvol {

struct HNPiece {
  Rational slope;
  Integer rank;

  friend bool operator==(const HNPiece&, const HNPiece&) = default;
};

/// Ordered (slope, rank) data with strictly increasing slopes and ranks >= 1.
class HNProfile {
 public:
  /// Sorts by slope and merges equal slopes. Throws ValidationError on an
  /// empty list or a nonpositive rank.
  explicit HNProfile(std::vector<HNPiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw ValidationError("HN profile needs at least one piece");
    for (const auto& p : pieces_)
      if (p.rank < 1) throw ValidationError("HN profile rank must be positive, got " + p.rank.str());
    std::stable_sort(pieces_.begin(), pieces_.end(),
                     [](const HNPiece& a, const HNPiece& b) { return a.slope < b.slope; });
    std::vector<HNPiece> merged;
    for (auto& p : pieces_) {
      if (!merged.empty() && merged.back().slope == p.slope)
        merged.back().rank += p.rank;
      else
        merged.push_back(std::move(p));
    }
    pieces_ = std::move(merged);
  }

  /// The semistable rank-1 slope-0 profile (the trivial line bundle).
  static HNProfile trivial() { return HNProfile({{Rational(0), Integer(1)}}); }

  const std::vector<HNPiece>& pieces() const { return pieces_; }
  std::size_t length() const { return pieces_.size(); }

  Integer rank() const {
    Integer r = 0;
    for (const auto& p : pieces_) r += p.rank;
    return r;
  }
  Rational degree() const {
    Rational d = 0;
    for (const auto& p : pieces_) d += p.slope * Rational(p.rank);
    return d;
  }
  Rational slope() const { return degree() / Rational(rank()); }
  const Rational& mu_min() const { return pieces_.front().slope; }
  const Rational& mu_max() const { return pieces_.back().slope; }
  bool semistable() const { return pieces_.size() == 1; }

  friend bool operator==(const HNProfile&, const HNProfile&) = default;

 private:
  std::vector<HNPiece> pieces_;
};

inline HNProfile make_profile(const std::vector<std::pair<Rational, Integer>>& slope_rank_pairs) {
  std::vector<HNPiece> pieces;
  pieces.reserve(slope_rank_pairs.size());
  for (const auto& [s, r] : slope_rank_pairs) pieces.push_back({s, r});
  return HNProfile(std::move(pieces));
}

struct ProfileStats {
  Integer rank;
  Rational degree;
  Rational slope;
  Rational mu_min;
  Rational mu_max;
};

inline ProfileStats profile_stats(const HNProfile& p) {
  return {p.rank(), p.degree(), p.slope(), p.mu_min(), p.mu_max()};
}

/// Non-decreasing list of slopes, each HN slope repeated rank-many times.
class SlopeVector {
 public:
  SlopeVector() = default;
  explicit SlopeVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
    if (!std::is_sorted(entries_.begin(), entries_.end()))
      throw ValidationError("slope vector must be non-decreasing");
  }
  const std::vector<Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const SlopeVector&, const SlopeVector&) = default;

 private:
  std::vector<Rational> entries_;
};

inline SlopeVector slope_vector(const HNProfile& p) {
  constexpr unsigned kMaxEntries = 1u << 20;
  if (p.rank() > kMaxEntries) throw ValidationError("slope vector too long: rank " + p.rank().str());
  std::vector<Rational> out;
  for (const auto& piece : p.pieces())
    for (Integer i = 0; i < piece.rank; ++i) out.push_back(piece.slope);
  return SlopeVector(std::move(out));
}

namespace detail {

inline HNProfile profile_from_buckets(const std::map<Rational, Integer>& buckets) {
  std::vector<HNPiece> pieces;
  pieces.reserve(buckets.size());
  for (const auto& [s, r] : buckets)
    if (r != 0) pieces.push_back({s, r});
  return HNProfile(std::move(pieces));
}

}  // namespace detail

/// HN profile of P (x) Q: slopes mu_a + mu'_b, ranks r_a r'_b summed per value.
inline HNProfile tensor_profile(const HNProfile& p, const HNProfile& q) {
  std::map<Rational, Integer> buckets;
  for (const auto& a : p.pieces())
    for (const auto& b : q.pieces()) buckets[a.slope + b.slope] += a.rank * b.rank;
  return detail::profile_from_buckets(buckets);
}

/// Literal construction through the index poset Theta = J1 x J2: the
/// filtration steps are the upward-closed sets A_j = {alpha : mu_alpha >= v_j}
/// and the graded ranks are rk Im_{A_j} - rk Im_{A_{j+1}}, where Im_A splits
/// as the sum of Q_a (x) Q'_b over the saturation of A.
inline HNProfile tensor_profile_bruteforce(const HNProfile& p, const HNProfile& q) {
  const std::size_t d = p.length();
  const std::size_t h = q.length();
  const auto idx = [h](std::size_t a, std::size_t b) { return a * h + b; };

  std::vector<Rational> mu(d * h);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < h; ++b) mu[idx(a, b)] = p.pieces()[a].slope + q.pieces()[b].slope;

  std::vector<Rational> values(mu);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  using Subset = std::vector<bool>;
  const auto saturation = [&](const Subset& s) {
    Subset out(d * h, false);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < h; ++b) {
        if (!s[idx(a, b)]) continue;
        for (std::size_t c = a; c < d; ++c)
          for (std::size_t e = b; e < h; ++e) out[idx(c, e)] = true;
      }
    return out;
  };
  const auto image_rank = [&](const Subset& s) {
    const Subset sat = saturation(s);
    Integer r = 0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < h; ++b)
        if (sat[idx(a, b)]) r += p.pieces()[a].rank * q.pieces()[b].rank;
    return r;
  };

  std::vector<Subset> steps;  // A_0 .. A_m, with A_m empty
  for (const auto& v : values) {
    Subset s(d * h, false);
    for (std::size_t i = 0; i < mu.size(); ++i) s[i] = mu[i] >= v;
    if (saturation(s) != s) throw InvariantError("HN step set is not saturated");
    steps.push_back(std::move(s));
  }
  steps.emplace_back(d * h, false);

  std::vector<HNPiece> pieces;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Integer r = image_rank(steps[j]) - image_rank(steps[j + 1]);
    if (r <= 0) throw InvariantError("HN filtration step is not strict");
    pieces.push_back({values[j], r});
  }
  return HNProfile(std::move(pieces));
}

enum class SymStrategy { enumerate, dp };

namespace detail {

/// binom(a + r - 1, r - 1) for a = 0..n: ranks of Sym^a of a rank-r bundle.
inline std::vector<Integer> sym_rank_table(const Integer& r, long n) {
  std::vector<Integer> t(static_cast<std::size_t>(n) + 1);
  t[0] = 1;
  for (long a = 1; a <= n; ++a) t[static_cast<std::size_t>(a)] = t[static_cast<std::size_t>(a - 1)] * (r - 1 + a) / a;
  return t;
}

/// Visits every composition of `total` into `parts.size()` nonnegative parts
/// without materializing the list.
template <class Visit>
void for_each_composition(long total, std::vector<long>& parts, Visit&& visit) {
  const std::size_t k = parts.size();
  if (k == 0) {
    if (total == 0) visit(parts);
    return;
  }
  std::fill(parts.begin(), parts.end(), 0);
  parts[0] = total;
  while (true) {
    visit(parts);
    if (k == 1) return;
    const long tail = parts[k - 1];
    parts[k - 1] = 0;
    std::size_t i = k - 1;
    while (i > 0 && parts[i - 1] == 0) --i;
    if (i == 0) return;
    --parts[i - 1];
    parts[i] = tail + 1;
  }
}

inline std::map<Rational, Integer> sym_enumerate_range(const HNProfile& p, long n,
                                                       const std::vector<std::vector<Integer>>& tables,
                                                       unsigned worker, unsigned workers) {
  std::map<Rational, Integer> buckets;
  const auto& pcs = p.pieces();
  const std::size_t d = pcs.size();
  std::vector<long> rest(d - 1);
  for (long lead = static_cast<long>(worker); lead <= n; lead += static_cast<long>(workers)) {
    const Rational lead_slope = Rational(lead) * pcs[0].slope;
    const Integer& lead_rank = tables[0][static_cast<std::size_t>(lead)];
    for_each_composition(n - lead, rest, [&](const std::vector<long>& a) {
      Rational s = lead_slope;
      Integer r = lead_rank;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        s += Rational(a[i]) * pcs[i + 1].slope;
        r *= tables[i + 1][static_cast<std::size_t>(a[i])];
      }
      buckets[s] += r;
    });
  }
  return buckets;
}

}  // namespace detail

/// HN profile of Sym^N of a bundle with profile P. Graded pieces are indexed
/// by compositions (a_0..a_{d-1}) of N, with slope sum a_i mu_i and rank
/// prod binom(a_i + r_i - 1, r_i - 1).
///
/// `enumerate` walks all compositions (split over `workers` threads by the
/// leading part); `dp` convolves one piece at a time over integer slope keys
/// obtained by clearing denominators. Both give identical results.
inline HNProfile sym_profile(const HNProfile& p, long n, SymStrategy strategy = SymStrategy::dp,
                             unsigned workers = 1) {
  if (n < 0) throw ValidationError("symmetric power exponent must be nonnegative");
  if (n == 0) return HNProfile::trivial();
  const auto& pcs = p.pieces();
  std::vector<std::vector<Integer>> tables;
  for (const auto& pc : pcs) tables.push_back(detail::sym_rank_table(pc.rank, n));

  if (strategy == SymStrategy::enumerate) {
    if (workers <= 1) return detail::profile_from_buckets(detail::sym_enumerate_range(p, n, tables, 0, 1));
    std::vector<std::future<std::map<Rational, Integer>>> parts;
    for (unsigned w = 0; w < workers; ++w)
      parts.push_back(std::async(std::launch::async, [&, w] {
        return detail::sym_enumerate_range(p, n, tables, w, workers);
      }));
    std::map<Rational, Integer> buckets;
    for (auto& f : parts)
      for (const auto& [s, r] : f.get()) buckets[s] += r;
    return detail::profile_from_buckets(buckets);
  }

  Integer common = 1;
  for (const auto& pc : pcs) common = lcm(common, denom(pc.slope));
  std::vector<Integer> keys;
  for (const auto& pc : pcs) keys.push_back(numer(pc.slope * Rational(common)));

  // level[c] maps integer slope key -> rank for compositions of c over the
  // pieces processed so far.
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::map<Integer, Integer>> level(nn + 1);
  level[0][0] = 1;
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    const bool last = i + 1 == pcs.size();
    std::vector<std::map<Integer, Integer>> next(nn + 1);
    for (std::size_t c = last ? nn : 0; c <= nn; ++c) {
      auto& out = next[c];
      for (std::size_t a = 0; a <= c; ++a) {
        const auto& src = level[c - a];
        if (src.empty()) continue;
        const Integer shift = keys[i] * a;
        for (const auto& [k, r] : src) out[k + shift] += r * tables[i][a];
      }
    }
    level = std::move(next);
  }
  std::map<Rational, Integer> buckets;
  for (const auto& [k, r] : level[nn]) buckets.emplace(make_rational(k, common), r);
  return detail::profile_from_buckets(buckets);
}

/// Twisting by a degree-a line bundle shifts every slope by a.
inline HNProfile twist_profile(const HNProfile& p, const Rational& a) {
  std::vector<HNPiece> out(p.pieces());
  for (auto& pc : out) pc.slope += a;
  return HNProfile(std::move(out));
}

}  // namespace hnvol
