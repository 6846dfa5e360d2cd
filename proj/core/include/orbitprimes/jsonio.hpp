#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitprimes/density.hpp"
#include "orbitprimes/dynamics.hpp"
#include "orbitprimes/factor_q.hpp"
#include "orbitprimes/galois.hpp"
#include "orbitprimes/localfields.hpp"
#include "orbitprimes/stability.hpp"

namespace orbitprimes {

// JSON text for each report type. Every rational prints as an exact "a/b"
// string; decimal values appear only under keys that say approx. Output is
// deterministic: fixed key order, no timestamps, no locale dependence.
std::string to_json(const CriticalOrbit& o);
std::string to_json(const OrbitModResult& r);
std::string to_json(const RdsReport& r);
std::string to_json(const FactorList& f);
std::string to_json(const StabilityCertificate& cert);
std::string to_json(const ZCaseReport& r);
std::string to_json(const MaximalityResult& r);
std::string to_json(const NewtonPolygon& np);
std::string to_json(const RamTower& t);
std::string to_json(const ProbVector& dist);
std::string to_json(const std::vector<ProbVector>& levels);
std::string to_json(const ConditionalReport& r);
std::string to_json(const ExtinctionCurve& curve);
std::string to_json(const MginvReport& r);
std::string to_json(const DensityReport& rep);

// CSV bodies (header line plus data rows, '\n' separated) for the tabular
// reports. Rationals stay exact "a/b" text here too.
std::string to_csv(const CriticalOrbit& o);
std::string to_csv(const std::vector<ProbVector>& levels);
std::string to_csv(const ExtinctionCurve& curve);
std::string to_csv(const DensityReport& rep);

// Full run document: tool, version, command, seed and the resolved config,
// followed by the result payload. Both JSON arguments must parse.
struct RunMeta {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_json = "{}";
};
std::string wrap_run(const RunMeta& meta, const std::string& payload_json);

// Flat "key = value" rendering of a JSON document, one line per leaf.
std::string json_to_text(const std::string& doc);

}  // namespace orbitprimes
