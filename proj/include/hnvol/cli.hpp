#pragma once

// JSON job front end: validates a command payload, dispatches to the
// computational modules and renders one deterministic output document.
//
// Rationals travel as "p/q" strings (plain integers also accepted on input);
// ranks and counts are JSON integers, or decimal strings when they do not
// fit in 64 bits.

#include "hnvol/cones.hpp"
#include "hnvol/hn_core.hpp"
#include "hnvol/measures.hpp"
#include "hnvol/volume.hpp"

#include "json.hpp"

#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hnvol::cli {

using Json = nlohmann::ordered_json;

enum class OutputMode { exact, decimal, both };

inline const char* to_string(OutputMode m) {
  switch (m) {
    case OutputMode::exact: return "exact";
    case OutputMode::decimal: return "decimal";
    case OutputMode::both: return "both";
  }
  return "exact";
}

inline OutputMode parse_output_mode(const std::string& s) {
  if (s == "exact") return OutputMode::exact;
  if (s == "decimal") return OutputMode::decimal;
  if (s == "both") return OutputMode::both;
  throw ValidationError("unknown output mode '" + s + "' (expected exact|decimal|both)");
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"hn-tensor",        "hn-sym", "measure-limit", "measure-discrete",
                                          "volume",           "volume-oracle", "cone"};
  return c;
}

struct JobSpec {
  std::string command;
  Json payload = Json::object();
  std::vector<long> n_list;
  std::optional<std::string> case_id;
  bool both_scalings = false;
  long grid = 100000;
};

struct RunResult {
  std::string document;
  int exit_code = 0;
};

// ---------------------------------------------------------------- decoding

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError("field '" + path + "': expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError("field '" + path + "." + key + "': missing");
  return *it;
}

inline Rational as_rational(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const ValidationError& e) {
    throw ValidationError("field '" + path + "': " + e.what());
  }
  throw ValidationError("field '" + path + "': expected a rational string \"p/q\" or an integer");
}

inline Integer as_integer(const Json& j, const std::string& path) {
  const Rational r = as_rational(j, path);
  if (!is_integer(r)) throw ValidationError("field '" + path + "': expected an integer");
  return numer(r);
}

inline long as_long(const Json& j, const std::string& path) {
  const Integer v = as_integer(j, path);
  if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
    throw ValidationError("field '" + path + "': integer out of range");
  return v.convert_to<long>();
}

inline HNProfile as_profile(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ValidationError("field '" + path + "': expected a nonempty array of pieces");
  std::vector<HNPiece> pieces;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& e = j[i];
    if (e.is_array() && e.size() == 2)
      pieces.push_back({as_rational(e[0], p + "[0]"), as_integer(e[1], p + "[1]")});
    else if (e.is_object())
      pieces.push_back({as_rational(field(e, "slope", p), p + ".slope"), as_integer(field(e, "rank", p), p + ".rank")});
    else
      throw ValidationError("field '" + p + "': expected {\"slope\", \"rank\"} or [slope, rank]");
    if (pieces.back().rank < 1) throw ValidationError("field '" + p + "': rank must be positive");
  }
  return HNProfile(std::move(pieces));
}

inline std::vector<Rational> as_rational_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("field '" + path + "': expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::optional<HNProfile> optional_profile(const Json& payload, const std::string& key) {
  if (!payload.contains(key) || payload[key].is_null()) return std::nullopt;
  return as_profile(payload[key], key);
}

inline Rational optional_rational(const Json& payload, const std::string& key, const Rational& fallback) {
  if (!payload.contains(key)) return fallback;
  return as_rational(payload[key], key);
}

inline long optional_long(const Json& payload, const std::string& key, long fallback) {
  if (!payload.contains(key)) return fallback;
  return as_long(payload[key], key);
}

inline BundleInput as_bundle(const Json& payload) {
  BundleInput in{as_profile(field(payload, "profE", "input"), "profE")};
  if (auto f = optional_profile(payload, "profF")) in.prof_f = *f;
  in.m = optional_long(payload, "m", 1);
  in.l = optional_long(payload, "l", 0);
  in.a = optional_rational(payload, "a", 0);
  return in;
}

inline std::vector<long> n_values(const JobSpec& job) {
  if (!job.n_list.empty()) return job.n_list;
  if (job.payload.contains("n")) {
    const Json& j = job.payload["n"];
    if (j.is_array()) {
      std::vector<long> out;
      for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_long(j[i], "n[" + std::to_string(i) + "]"));
      return out;
    }
    return {as_long(j, "n")};
  }
  return {};
}

// ---------------------------------------------------------------- encoding

class Encoder {
 public:
  explicit Encoder(OutputMode mode) : mode_(mode) {}

  Json num(const Rational& x) const {
    switch (mode_) {
      case OutputMode::exact: return hnvol::to_string(x);
      case OutputMode::decimal: return Json{{"approx", to_decimal(x)}};
      case OutputMode::both: return Json{{"exact", hnvol::to_string(x)}, {"approx", to_decimal(x)}};
    }
    return hnvol::to_string(x);
  }
  static Json exact(const Rational& x) { return hnvol::to_string(x); }
  static Json integer(const Integer& v) {
    if (v <= std::numeric_limits<long long>::max() && v >= std::numeric_limits<long long>::min())
      return v.convert_to<long long>();
    return v.str();
  }
  static Json approx(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return std::string(buf);
  }

  Json profile(const HNProfile& p, bool exact_only = false) const {
    Json arr = Json::array();
    for (const auto& pc : p.pieces())
      arr.push_back(Json{{"slope", exact_only ? exact(pc.slope) : num(pc.slope)}, {"rank", integer(pc.rank)}});
    return arr;
  }
  Json profile_summary(const HNProfile& p) const {
    const auto st = profile_stats(p);
    return Json{{"pieces", profile(p)},          {"rank", integer(st.rank)}, {"degree", num(st.degree)},
                {"slope", num(st.slope)},        {"mu_min", num(st.mu_min)}, {"mu_max", num(st.mu_max)}};
  }
  Json measure(const SpectralMeasure& m) const {
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) atoms.push_back(Json{{"point", num(a.point)}, {"mass", num(a.mass)}});
    Json pieces = Json::array();
    for (const auto& p : m.pieces()) {
      Json coeffs = Json::array();
      for (const auto& c : p.density.coeffs()) coeffs.push_back(num(c));
      pieces.push_back(Json{{"lo", num(p.lo)}, {"hi", num(p.hi)}, {"coeffs", std::move(coeffs)}});
    }
    return Json{{"atoms", std::move(atoms)}, {"pieces", std::move(pieces)}};
  }
  Json matrix(const std::vector<std::vector<Rational>>& rows) const {
    Json out = Json::array();
    for (const auto& r : rows) {
      Json row = Json::array();
      for (const auto& v : r) row.push_back(num(v));
      out.push_back(std::move(row));
    }
    return out;
  }
  Json vec(const std::vector<Rational>& v) const {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(num(x));
    return out;
  }

 private:
  OutputMode mode_;
};

inline Json plot_table(const SpectralMeasure& m, long samples, const Encoder& enc) {
  if (samples < 2) throw ValidationError("field 'plot_samples': need at least 2 samples");
  const Rational lo = m.support_min();
  const Rational hi = m.support_max();
  const Cdf f(m);
  Json rows = Json::array();
  for (long i = 0; i < samples; ++i) {
    const Rational x = lo + (hi - lo) * Rational(i) / Rational(samples - 1);
    rows.push_back(Json{{"x", enc.num(x)}, {"density", enc.num(m.density_at(x))}, {"cdf", enc.num(f(x))}});
  }
  return rows;
}

inline Json bundle_echo(const BundleInput& in, const Encoder& enc) {
  return Json{{"profE", enc.profile(in.prof_e, true)},
              {"profF", enc.profile(in.prof_f, true)},
              {"m", in.m},
              {"l", in.l},
              {"a", Encoder::exact(in.a)}};
}

// ---------------------------------------------------------------- commands

inline Json cmd_hn_tensor(const JobSpec& job, const Encoder& enc, Json& input) {
  const HNProfile p = as_profile(field(job.payload, "P", "input"), "P");
  const HNProfile q = as_profile(field(job.payload, "Q", "input"), "Q");
  input = Json{{"P", enc.profile(p, true)}, {"Q", enc.profile(q, true)}};
  const HNProfile t = tensor_profile(p, q);
  const bool agrees = t == tensor_profile_bruteforce(p, q);
  if (!agrees) throw InvariantError("tensor_profile disagrees with the saturated-set construction");
  Json out = enc.profile_summary(t);
  out["checks"] = Json{{"bruteforce_agrees", agrees}};
  return out;
}

inline Json cmd_hn_sym(const JobSpec& job, const Encoder& enc, Json& input) {
  const HNProfile p = as_profile(field(job.payload, "P", "input"), "P");
  const long n = as_long(field(job.payload, "N", "input"), "N");
  std::string strategy = "dp";
  if (job.payload.contains("strategy")) {
    if (!job.payload["strategy"].is_string()) throw ValidationError("field 'strategy': expected \"dp\" or \"enumerate\"");
    strategy = job.payload["strategy"].get<std::string>();
  }
  if (strategy != "dp" && strategy != "enumerate")
    throw ValidationError("field 'strategy': expected \"dp\" or \"enumerate\"");
  input = Json{{"P", enc.profile(p, true)}, {"N", n}, {"strategy", strategy}};
  const HNProfile chosen = sym_profile(p, n, strategy == "dp" ? SymStrategy::dp : SymStrategy::enumerate);
  const HNProfile other = sym_profile(p, n, strategy == "dp" ? SymStrategy::enumerate : SymStrategy::dp);
  if (chosen != other) throw InvariantError("sym_profile strategies disagree");
  const Integer expected_rank = binomial(Integer(n) + p.rank() - 1, p.rank() - 1);
  if (chosen.rank() != expected_rank) throw InvariantError("Sym rank identity violated");
  Json out = enc.profile_summary(chosen);
  out["checks"] = Json{{"strategies_agree", true}, {"total_rank_identity", true}};
  return out;
}

inline Json cmd_measure_limit(const JobSpec& job, const Encoder& enc, Json& input) {
  const Json& pl = job.payload;
  SlopeVector se, sf;
  if (pl.contains("sE"))
    se = SlopeVector(as_rational_list(pl["sE"], "sE"));
  else
    se = slope_vector(as_profile(field(pl, "profE", "input"), "profE"));
  if (pl.contains("sF"))
    sf = SlopeVector(as_rational_list(pl["sF"], "sF"));
  else if (auto f = optional_profile(pl, "profF"))
    sf = slope_vector(*f);
  const Rational m = optional_rational(pl, "m", 1);
  const Rational l = optional_rational(pl, "l", 1);
  Json se_j = Json::array(), sf_j = Json::array();
  for (const auto& v : se.entries()) se_j.push_back(Encoder::exact(v));
  for (const auto& v : sf.entries()) sf_j.push_back(Encoder::exact(v));
  input = Json{{"sE", se_j}, {"sF", sf_j}, {"m", Encoder::exact(m)}, {"l", Encoder::exact(l)}};
  const SpectralMeasure mu = limit_measure(se, sf, m, l);
  Json out{{"measure", enc.measure(mu)}, {"mass", enc.num(mu.total_mass())}, {"mean", enc.num(mu.mean())}};
  if (pl.contains("plot_samples")) {
    const long k = as_long(pl["plot_samples"], "plot_samples");
    input["plot_samples"] = k;
    out["plot"] = plot_table(mu, k, enc);
  }
  return out;
}

inline Json cmd_measure_discrete(const JobSpec& job, const Encoder& enc, Json& input) {
  const BundleInput in = as_bundle(job.payload);
  const std::vector<long> ns = n_values(job);
  if (ns.empty()) throw ValidationError("field 'n': give --n or an \"n\" list");
  input = bundle_echo(in, enc);
  input["n"] = ns;
  const SpectralMeasure limit = nu_pi_limit(in);
  const long grid = job.payload.contains("grid") ? as_long(job.payload["grid"], "grid") : job.grid;
  if (grid < 1) throw ValidationError("field 'grid': must be positive");
  input["grid"] = grid;
  Json levels = Json::array();
  for (long n : ns) {
    const SpectralMeasure disc = nu_pi_discrete(in, n);
    const W1Estimate w = w1_distance(disc, limit, grid);
    levels.push_back(Json{{"n", n},
                          {"measure", enc.measure(disc)},
                          {"w1_to_limit", Json{{"approx", Encoder::approx(w.value)},
                                               {"error_bound", Encoder::approx(w.error_bound)}}}});
  }
  return Json{{"limit", enc.measure(limit)}, {"levels", std::move(levels)}};
}

inline Json volume_json(const VolumeReport& r, const Encoder& enc) {
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"dim_x", r.dim_x},
              {"vol_generic_fiber", enc.num(r.vol_generic_fiber)},
              {"measure", enc.measure(r.measure)},
              {"integral", enc.num(r.integral)},
              {"volume", enc.num(r.volume)},
              {"notes", std::move(notes)}};
}

inline Json cmd_volume(const JobSpec& job, const Encoder& enc, Json& input) {
  const BundleInput in = as_bundle(job.payload);
  bool both = job.both_scalings;
  if (job.payload.contains("both_scalings")) {
    if (!job.payload["both_scalings"].is_boolean()) throw ValidationError("field 'both_scalings': expected a boolean");
    both = both || job.payload["both_scalings"].get<bool>();
  }
  input = bundle_echo(in, enc);
  input["both_scalings"] = both;
  Json out = volume_json(volume_exact(in), enc);
  // With a rank-1 F the l-scaling moves no knot, so only m can separate the readings.
  if (both && (in.m != 1 || (in.l != 1 && in.prof_f.rank() > 1))) {
    out["literal_reading"] = volume_json(volume_exact(in, KnotScaling::literal), enc);
    out["scaling_note"] =
        "volume uses knots m*s_i, l*s'_j (matches the discrete oracle); literal_reading uses unscaled knots";
  }
  return out;
}

inline Json cmd_volume_oracle(const JobSpec& job, const Encoder& enc, Json& input) {
  const BundleInput in = as_bundle(job.payload);
  const std::vector<long> ns = n_values(job);
  if (ns.empty()) throw ValidationError("field 'n': give --n or an \"n\" list");
  input = bundle_echo(in, enc);
  input["n"] = ns;
  const VolumeReport rep = volume_exact(in);
  Json table = Json::array();
  for (long n : ns) {
    const Rational v = volume_discrete_oracle(in, n);
    table.push_back(Json{{"n", n}, {"V_n", enc.num(v)}, {"delta", enc.num(v - rep.volume)}});
  }
  return Json{{"volume", enc.num(rep.volume)}, {"table", std::move(table)}};
}

inline Json cone_json(const PolyCone& c, const Encoder& enc) { return enc.matrix(c.matrix()); }

inline Json membership_json(const PolyCone& cone, const Json& query, const Encoder& enc) {
  const ClassVector v(cone.basis, as_rational_list(query, "query"));
  const MembershipResult r = cone_membership(cone, v);
  Json out{{"inside", r.inside}};
  if (r.coords) out["coords"] = enc.vec(*r.coords);
  if (r.separating) out["separating"] = enc.vec(*r.separating);
  return out;
}

inline Json cmd_cone(const JobSpec& job, const Encoder& enc, Json& input) {
  const Json& pl = job.payload;
  const std::string id = job.case_id ? *job.case_id : pl.contains("case") ? pl["case"].get<std::string>() : "";
  if (id.empty()) throw ValidationError("field 'case': give --case thm4.1|thm4.8|thm4.9|thm4.10");
  Json out;
  std::optional<PolyCone> eff_for_query;
  input = Json{{"case", id}};
  const auto first_n = [&]() -> long {
    const auto ns = n_values(job);
    if (ns.size() != 1) throw ValidationError("field 'n': expected exactly one value");
    return ns.front();
  };
  if (id == "thm4.8") {
    const long n = first_n();
    const Rational lx_sq = optional_rational(pl, "L_X_squared", 1);
    if (lx_sq <= 0) throw ValidationError("field 'L_X_squared': must be positive");
    input["n"] = n;
    input["L_X_squared"] = Encoder::exact(lx_sq);
    const EffNef c = cone_thm48(n);
    const TriForm form = triform_thm48(n, lx_sq);
    out = Json{{"basis", c.eff.basis},
               {"eff_generators", cone_json(c.eff, enc)},
               {"nef_generators", cone_json(c.nef, enc)},
               {"duality_check", duality_check(c.eff, c.nef, form)}};
    eff_for_query = c.eff;
  } else if (id == "thm4.9") {
    const long m = as_long(field(pl, "m", "input"), "m");
    const long n = first_n();
    input["m"] = m;
    input["n"] = n;
    const PolyCone c = cone_thm49(m, n);
    out = Json{{"basis", c.basis}, {"eff_generators", cone_json(c, enc)}};
    eff_for_query = c;
  } else if (id == "thm4.10") {
    const Rational a = as_rational(field(pl, "a", "input"), "a");
    const Rational b = as_rational(field(pl, "b", "input"), "b");
    const Rational mu = as_rational(field(pl, "mu_min_W", "input"), "mu_min_W");
    const Rational deg = as_rational(field(pl, "deg_W", "input"), "deg_W");
    input.update(Json{{"a", Encoder::exact(a)}, {"b", Encoder::exact(b)}, {"mu_min_W", Encoder::exact(mu)},
                      {"deg_W", Encoder::exact(deg)}});
    const EffNef c = cone_thm410(a, b, mu, deg);
    const TriForm form = triform_thm410(a, b, deg);
    out = Json{{"basis", c.eff.basis},
               {"eff_generators", cone_json(c.eff, enc)},
               {"nef_generators", cone_json(c.nef, enc)},
               {"duality_check", duality_check(c.eff, c.nef, form)},
               {"discriminant_end", enc.num(discriminant_end(2, Rational(2) * a * b + a * a * deg, 0))}};
    eff_for_query = c.eff;
  } else if (id == "thm4.1") {
    const Json& bj = field(pl, "base_basis", "input");
    if (!bj.is_array()) throw ValidationError("field 'base_basis': expected an array of labels");
    Basis base;
    for (const auto& s : bj) {
      if (!s.is_string()) throw ValidationError("field 'base_basis': labels must be strings");
      base.push_back(s.get<std::string>());
    }
    const ClassVector c1(base, as_rational_list(field(pl, "c1_over_r", "input"), "c1_over_r"));
    const Json& gj = field(pl, "eff_generators", "input");
    if (!gj.is_array()) throw ValidationError("field 'eff_generators': expected an array");
    std::vector<ClassVector> gens;
    Json gens_echo = Json::array();
    for (std::size_t i = 0; i < gj.size(); ++i) {
      gens.emplace_back(base, as_rational_list(gj[i], "eff_generators[" + std::to_string(i) + "]"));
      Json row = Json::array();
      for (const auto& v : gens.back().coords) row.push_back(Encoder::exact(v));
      gens_echo.push_back(std::move(row));
    }
    Json c1_echo = Json::array();
    for (const auto& v : c1.coords) c1_echo.push_back(Encoder::exact(v));
    input.update(Json{{"base_basis", base}, {"c1_over_r", c1_echo}, {"eff_generators", gens_echo}});
    const PolyCone c = cone_thm41(gens, c1);
    out = Json{{"basis", c.basis}, {"eff_generators", cone_json(c, enc)}};
    eff_for_query = c;
  } else {
    throw ValidationError("field 'case': unknown case '" + id + "'");
  }
  if (pl.contains("query")) {
    Json q = Json::array();
    for (const auto& v : as_rational_list(pl["query"], "query")) q.push_back(Encoder::exact(v));
    input["query"] = q;
    out["membership"] = membership_json(*eff_for_query, pl["query"], enc);
  }
  return out;
}

}  // namespace detail

/// Runs one job and renders the output document. Exit code 0 on success,
/// 2 on validation errors, 3 on internal invariant violations.
inline RunResult run(const JobSpec& job, OutputMode mode) {
  const detail::Encoder enc(mode);
  Json doc{{"command", job.command}, {"output_mode", to_string(mode)}};
  try {
    Json input;
    Json result;
    if (job.command == "hn-tensor")
      result = detail::cmd_hn_tensor(job, enc, input);
    else if (job.command == "hn-sym")
      result = detail::cmd_hn_sym(job, enc, input);
    else if (job.command == "measure-limit")
      result = detail::cmd_measure_limit(job, enc, input);
    else if (job.command == "measure-discrete")
      result = detail::cmd_measure_discrete(job, enc, input);
    else if (job.command == "volume")
      result = detail::cmd_volume(job, enc, input);
    else if (job.command == "volume-oracle")
      result = detail::cmd_volume_oracle(job, enc, input);
    else if (job.command == "cone")
      result = detail::cmd_cone(job, enc, input);
    else
      throw ValidationError("unknown command '" + job.command + "'");
    doc["input"] = std::move(input);
    doc["result"] = std::move(result);
    return {doc.dump(2) + "\n", 0};
  } catch (const ValidationError& e) {
    doc["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
    return {doc.dump(2) + "\n", 2};
  } catch (const nlohmann::json::exception& e) {
    doc["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
    return {doc.dump(2) + "\n", 2};
  } catch (const std::exception& e) {
    doc["error"] = Json{{"kind", "invariant"}, {"message", e.what()}};
    return {doc.dump(2) + "\n", 3};
  }
}

/// A job document bundles the command with its payload and flags:
///   {"command": "volume", "options": {"n": [10], "case": "thm4.8", ...}, "payload": {...}}
inline bool is_job_document(const Json& j) {
  return j.is_object() && j.contains("command") && j.contains("payload");
}

inline std::pair<JobSpec, OutputMode> job_from_document(const Json& j) {
  JobSpec job;
  OutputMode mode = OutputMode::exact;
  if (!j["command"].is_string()) throw ValidationError("field 'command': expected a string");
  job.command = j["command"].get<std::string>();
  job.payload = j["payload"];
  if (!job.payload.is_object()) throw ValidationError("field 'payload': expected an object");
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) throw ValidationError("field 'options': expected an object");
    if (o.contains("n")) {
      const Json& n = o["n"];
      if (n.is_array())
        for (std::size_t i = 0; i < n.size(); ++i)
          job.n_list.push_back(detail::as_long(n[i], "options.n[" + std::to_string(i) + "]"));
      else
        job.n_list.push_back(detail::as_long(n, "options.n"));
    }
    if (o.contains("case")) {
      if (!o["case"].is_string()) throw ValidationError("field 'options.case': expected a string");
      job.case_id = o["case"].get<std::string>();
    }
    if (o.contains("both_scalings")) {
      if (!o["both_scalings"].is_boolean()) throw ValidationError("field 'options.both_scalings': expected a boolean");
      job.both_scalings = o["both_scalings"].get<bool>();
    }
    if (o.contains("grid")) job.grid = detail::as_long(o["grid"], "options.grid");
    if (o.contains("output_mode")) {
      if (!o["output_mode"].is_string()) throw ValidationError("field 'options.output_mode': expected a string");
      mode = parse_output_mode(o["output_mode"].get<std::string>());
    }
  }
  return {std::move(job), mode};
}

/// Parses a job payload, reporting syntax errors as "line L, column C".
inline Json parse_payload(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("input line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": malformed JSON");
  }
}

}  // namespace hnvol::cli
