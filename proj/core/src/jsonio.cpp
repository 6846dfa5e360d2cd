#include "orbitprimes/jsonio.hpp"

#include <sstream>

#include "json.hpp"
#include "orbitprimes/version.hpp"

namespace orbitprimes {
namespace {

using ojson = nlohmann::ordered_json;

std::string rat(const Rational& x) { return to_string(x); }
std::string big(const BigInt& n) { return to_string(n); }

ojson enc_map(const MapSpec& m) {
  return ojson{{"d", m.d}, {"c", rat(m.c)}, {"a0", rat(m.a0)}};
}

ojson enc_class_counts(const std::vector<ClassCount>& classes) {
  ojson arr = ojson::array();
  for (const auto& cc : classes) {
    arr.push_back(ojson{{"residue", cc.residue},
                        {"primes", cc.primes},
                        {"divides", cc.divides},
                        {"not_divides", cc.not_divides},
                        {"ratio", rat(cc.ratio)}});
  }
  return arr;
}

ojson enc_prob_vector(const ProbVector& dist) {
  ojson entries = ojson::object();
  for (const auto& [k, p] : dist.entries) entries[std::to_string(k)] = rat(p);
  return ojson{{"entries", entries},
               {"prob_positive", rat(dist.prob_positive())},
               {"expectation", rat(dist.expectation())}};
}

std::string dump(const ojson& j) { return j.dump(2); }

void csv_row(std::ostringstream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

}  // namespace

std::string to_json(const CriticalOrbit& o) {
  ojson vals = ojson::array();
  for (const auto& v : o.values) vals.push_back(rat(v));
  return dump(ojson{{"values", vals},
                    {"finite", o.finite_flag},
                    {"repeat_first", o.repeat_first},
                    {"repeat_second", o.repeat_second}});
}

std::string to_json(const OrbitModResult& r) {
  const char* verdict = r.verdict == OrbitVerdict::Divides       ? "divides"
                        : r.verdict == OrbitVerdict::NotDivides  ? "not_divides"
                                                                 : "bad_prime";
  ojson j{{"verdict", verdict}, {"n", r.n}, {"steps", r.steps}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return dump(j);
}

std::string to_json(const RdsReport& r) {
  ojson primes = ojson::array();
  for (const auto& p : r.primes) primes.push_back(big(p));
  ojson viols = ojson::array();
  for (const auto& v : r.violations) {
    viols.push_back(ojson{{"p", big(v.p)},
                          {"rule", v.rule},
                          {"n", v.n},
                          {"j", v.j},
                          {"detail", v.detail}});
  }
  return dump(ojson{{"N", r.N},
                    {"primes", primes},
                    {"valuations", r.valuations},
                    {"violations", viols},
                    {"ok", r.ok()}});
}

std::string to_json(const FactorList& f) {
  ojson factors = ojson::array();
  for (const auto& e : f.factors) {
    factors.push_back(
        ojson{{"factor", format_poly(e.factor)},
              {"degree", e.factor.degree()},
              {"multiplicity", e.multiplicity}});
  }
  return dump(ojson{{"unit", rat(f.unit)},
                    {"factors", factors},
                    {"total_count", f.total_count()},
                    {"certified", f.certified}});
}

std::string to_json(const StabilityCertificate& cert) {
  using Kind = StabilityCertificate::Kind;
  ojson j;
  switch (cert.kind) {
    case Kind::FirststabCertified:
      j["kind"] = "firststab_certified";
      j["N"] = cert.N;
      break;
    case Kind::FirststabFails:
      j["kind"] = "firststab_fails";
      j["n"] = cert.n;
      j["condition_id"] = cert.condition_id;
      j["offending_value"] = rat(cert.offending_value);
      j["power"] = cert.power;
      break;
    case Kind::EventuallyStable:
      j["kind"] = "eventually_stable";
      j["p"] = big(cert.p);
      j["e"] = cert.e;
      j["factor_count_bound"] = big(cert.bound);
      j["place_prime_to_d"] = cert.place_prime_to_d;
      j["has_coprime_place"] = cert.has_coprime_place;
      break;
    case Kind::Inconclusive:
      j["kind"] = "inconclusive";
      break;
  }
  if (!cert.reason.empty()) j["reason"] = cert.reason;
  return dump(j);
}

std::string to_json(const ZCaseReport& r) {
  ojson entries = ojson::array();
  for (const auto& e : r.entries) {
    entries.push_back(ojson{{"n", e.n},
                            {"target", e.target},
                            {"route", e.route},
                            {"certified", e.certified}});
  }
  ojson j{{"p", r.p}, {"c", big(r.c)}, {"N", r.N},
          {"c_is_pth_power", r.c_is_pth_power}};
  if (r.c_is_pth_power) j["r"] = big(r.r);
  j["entries"] = entries;
  j["all_certified"] = r.all_certified();
  return dump(j);
}

std::string to_json(const MaximalityResult& r) {
  ojson j{{"found", r.found}};
  if (r.found) {
    j["witness"] = ojson{{"n", r.witness.n},
                         {"p", big(r.witness.p)},
                         {"valuations", r.witness.valuations}};
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  return dump(j);
}

std::string to_json(const NewtonPolygon& np) {
  ojson slopes = ojson::array();
  for (const auto& s : np.slopes)
    slopes.push_back(ojson{{"slope", rat(s.slope)}, {"length", s.length}});
  return dump(ojson{{"points", np.points},
                    {"vertices", np.vertices},
                    {"slopes", slopes},
                    {"single_segment", np.single_segment()}});
}

std::string to_json(const RamTower& t) {
  ojson e = ojson::array(), k = ojson::array();
  for (const auto& v : t.e) e.push_back(big(v));
  for (const auto& v : t.k) k.push_back(big(v));
  ojson j{{"d", t.d}, {"r", t.r}, {"e", e}, {"k", k}, {"n0", t.n0},
          {"ok", t.ok()}};
  if (!t.ok()) j["violation"] = t.violation;
  return dump(j);
}

std::string to_json(const ProbVector& dist) { return dump(enc_prob_vector(dist)); }

std::string to_json(const std::vector<ProbVector>& levels) {
  ojson arr = ojson::array();
  for (size_t i = 0; i < levels.size(); ++i) {
    ojson row = enc_prob_vector(levels[i]);
    ojson with_level{{"level", i}};
    with_level.update(row);
    arr.push_back(with_level);
  }
  return dump(ojson{{"levels", arr}});
}

std::string to_json(const ConditionalReport& r) {
  ojson diag = ojson::array();
  for (const auto& [t, p] : r.diagonal)
    diag.push_back(ojson{{"t", t}, {"prob", rat(p)}});
  return dump(ojson{{"d", r.d},
                    {"m_checked", r.m_checked},
                    {"diagonal", diag},
                    {"max_positive_conditional", rat(r.max_positive_conditional)},
                    {"all_at_most_half", r.all_at_most_half},
                    {"martingale_exact", r.martingale_exact},
                    {"closed_form_matches", r.closed_form_matches}});
}

std::string to_json(const ExtinctionCurve& curve) {
  ojson q = ojson::array(), s = ojson::array();
  for (const auto& v : curve.q) q.push_back(rat(v));
  for (const auto& v : curve.survival) s.push_back(rat(v));
  return dump(ojson{{"d", curve.d},
                    {"t0", curve.t0},
                    {"exact_levels", curve.exact_levels},
                    {"extinct", q},
                    {"survival", s},
                    {"survival_approx", curve.survival_approx}});
}

std::string to_json(const MginvReport& r) {
  ojson j{{"d", r.d},
          {"M", r.M},
          {"group_order", r.group_order},
          {"modules_checked", r.modules_checked},
          {"all_have_invariant", r.all_have_invariant}};
  if (!r.all_have_invariant) j["counterexample"] = r.counterexample;
  return dump(j);
}

std::string to_json(const DensityReport& rep) {
  ojson curve = ojson::array();
  for (const auto& row : rep.curve) {
    curve.push_back(ojson{{"X", row.X},
                          {"primes", row.primes},
                          {"divides", row.divides},
                          {"not_divides", row.not_divides},
                          {"ratio", rat(row.ratio)},
                          {"classes", enc_class_counts(row.classes)}});
  }
  return dump(ojson{{"map", enc_map(rep.map)},
                    {"X", rep.X},
                    {"class_modulus", rep.class_modulus},
                    {"finite_orbit", rep.finite_orbit},
                    {"total_primes", rep.total_primes},
                    {"divides", rep.divides},
                    {"not_divides", rep.not_divides},
                    {"bad_count", rep.bad_count},
                    {"bad_primes", rep.bad_primes},
                    {"ratio", rat(rep.ratio)},
                    {"classes", enc_class_counts(rep.classes)},
                    {"curve", curve}});
}

std::string to_csv(const CriticalOrbit& o) {
  std::ostringstream out;
  csv_row(out, {"n", "value"});
  for (size_t i = 0; i < o.values.size(); ++i)
    csv_row(out, {std::to_string(i + 1), rat(o.values[i])});
  return out.str();
}

std::string to_csv(const std::vector<ProbVector>& levels) {
  std::ostringstream out;
  csv_row(out, {"level", "k", "prob"});
  for (size_t i = 0; i < levels.size(); ++i)
    for (const auto& [k, p] : levels[i].entries)
      csv_row(out, {std::to_string(i), std::to_string(k), rat(p)});
  return out.str();
}

std::string to_csv(const ExtinctionCurve& curve) {
  std::ostringstream out;
  csv_row(out, {"n", "extinct", "survival", "survival_approx"});
  for (size_t n = 0; n < curve.survival_approx.size(); ++n) {
    std::string q = n < curve.q.size() ? rat(curve.q[n]) : std::string();
    std::string s = n < curve.survival.size() ? rat(curve.survival[n]) : std::string();
    ojson approx = curve.survival_approx[n];  // shortest round-trip formatting
    csv_row(out, {std::to_string(n), q, s, approx.dump()});
  }
  return out.str();
}

std::string to_csv(const DensityReport& rep) {
  std::ostringstream out;
  csv_row(out, {"X", "class", "primes", "divides", "ratio"});
  auto rows_for = [&](long X, long primes, long divides, const Rational& ratio,
                      const std::vector<ClassCount>& classes) {
    csv_row(out, {std::to_string(X), "all", std::to_string(primes),
                  std::to_string(divides), rat(ratio)});
    for (const auto& cc : classes)
      csv_row(out, {std::to_string(X),
                    std::to_string(cc.residue) + "%" + std::to_string(rep.class_modulus),
                    std::to_string(cc.primes), std::to_string(cc.divides),
                    rat(cc.ratio)});
  };
  for (const auto& row : rep.curve)
    rows_for(row.X, row.primes, row.divides, row.ratio, row.classes);
  if (rep.curve.empty() || rep.curve.back().X != rep.X)
    rows_for(rep.X, rep.divides + rep.not_divides, rep.divides, rep.ratio,
             rep.classes);
  return out.str();
}

std::string wrap_run(const RunMeta& meta, const std::string& payload_json) {
  ojson doc{{"tool", "orbitprimes"},
            {"version", kVersion},
            {"command", meta.command},
            {"seed", meta.seed},
            {"config", ojson::parse(meta.config_json)},
            {"result", ojson::parse(payload_json)}};
  return dump(doc);
}

namespace {

void flatten(const ojson& node, const std::string& path, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items())
      flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (node.is_array()) {
    for (size_t i = 0; i < node.size(); ++i)
      flatten(node[i], path + "[" + std::to_string(i) + "]", out);
    if (node.empty()) out << path << " = []\n";
  } else {
    out << path << " = "
        << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
  }
}

}  // namespace

std::string json_to_text(const std::string& doc) {
  std::ostringstream out;
  flatten(ojson::parse(doc), "", out);
  return out.str();
}

}  // namespace orbitprimes
