#pragma once

// Text serialization shared by the CLI and tests.
//
// Sample batch JSON:
//   {"algorithm": "splitmix64", "seed": 42, "method": "Analytic", "n": 3,
//    "spec": {"family": "weibull2", "params": {"a": 1, "b": 1},
//             "support": [0, null]},
//    "values": [...]}
// Infinite support bounds are written as null.
//
// Errata entry JSON:
//   {"family": "xie_lai3", "verdict": "NoClosedForm",
//    "max_roundtrip_error_printed": null,
//    "max_roundtrip_error_implemented": null,
//    "lambert_argument_nonnegative": true, "note": "..."}

#include <span>
#include <string>

#include <json.hpp>

#include "lwsim/distributions.hpp"
#include "lwsim/sampler.hpp"
#include "lwsim/verification.hpp"

namespace lwsim::io {

/// Shortest representation that round-trips to the same double (at most 17
/// significant digits).
std::string format_number(double v);

nlohmann::json to_json(const DistributionSpec& spec);
nlohmann::json to_json(const SampleBatch& batch);
nlohmann::json to_json(const ErrataEntry& entry);
nlohmann::json to_json(std::span<const ErrataEntry> report);

/// "value" header, then one value per line.
std::string to_csv(const SampleBatch& batch);
std::string to_csv(std::span<const ErrataEntry> report);

}  // namespace lwsim::io
