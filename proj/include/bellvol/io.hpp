#pragma once

// JSON schemas shared by the CLI and the Python module.
//
//   point     {"c00": x, "c01": x, "c10": x, "c11": x}
//   behavior  {"settings": [{"i": 0, "j": 0, "p": {"++": p, "+-": p, "-+": p, "--": p}}, ...]}
//             probabilities are "p/q" strings or integers
//   estimate  {"region", "method", "value", "std_error", "n", "seed"}

#include "bellvol/behavior.hpp"
#include "bellvol/membership.hpp"
#include "bellvol/metric.hpp"
#include "bellvol/volume.hpp"

#include <json.hpp>

#include <string>

namespace bellvol {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
class InputError : public Error {
public:
    using Error::Error;
};

Json point_to_json(const CorrelationPoint& p);
CorrelationPoint point_from_json(const Json& j);

/// Accepts a JSON object or an inline "c00,c01,c10,c11" list.
CorrelationPoint parse_point(const std::string& text);

Json table_to_json(const JointProbabilityTable& t);
JointProbabilityTable table_from_json(const Json& j);

Json estimate_to_json(const VolumeEstimate& e);
VolumeEstimate estimate_from_json(const Json& j);

Json profile_to_json(const MembershipProfile& p);
Json distance_to_json(const ToggleDistance& d);

}  // namespace bellvol
