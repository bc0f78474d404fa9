#pragma once

#include <json.hpp>

#include "starres/sympow.hpp"

namespace starres {

using json = nlohmann::ordered_json;

struct SerializeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json ring_to_json(const WeightedRing& ring);
WeightedRing ring_from_json(const json& j);

json module_to_json(const GradedFreeModule& m);
ModulePtr module_from_json(const json& j, const WeightedRing& ring);

json map_to_json(const ModuleMap& m);  // row-major polynomial strings
ModuleMap map_from_json(const json& j, ModulePtr source, ModulePtr target);

json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const json& j);

json record_to_json(const StarTransformRecord& r);
StarTransformRecord record_from_json(const json& j);

json report_to_json(const LengthReport& rep, const Ideal& symbolic);
json epsilon_to_json(const EpsilonTable& t);

std::string report_to_text(const LengthReport& rep, const Ideal& symbolic);
std::string epsilon_to_text(const EpsilonTable& t);

/// Canonical serialization: fixed two-space indentation and a trailing
/// newline, so save -> load -> save is byte-identical.
std::string dump_canonical(const json& j);

/// Re-runs the pass recorded in `r` with its stored choices pinned and
/// compares every derived artifact; throws StarError on any mismatch.
void recheck_record(const StarTransformRecord& r, bool check_oracle);

}  // namespace starres
