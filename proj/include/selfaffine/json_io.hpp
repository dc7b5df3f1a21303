#pragma once

#include <string>

#include <json.hpp>

#include "selfaffine/system.hpp"

namespace selfaffine {

using json = nlohmann::ordered_json;

// Canonical serialization: {"d":..,"m":..,"c":[..],"epsilon":[..],
// "maps":[{"scale":..,"rotation":[[..]],"translation":[..]},..]}.
// Doubles are emitted with shortest-round-trip precision, so
// system_from_json(system_to_json(s)) reproduces s bit for bit.
json system_to_json(const SelfAffineSystem& sys);

// Accepts the canonical form, a preset reference
// {"preset":"polya"|"okamoto"|"riesz_nagy"|"gray", "theta_deg":..|"a":..},
// or a measure {"measure":{"intervals":[[s,t],..],"orientations":[..],
// "weights":[..]}}.  Throws std::invalid_argument on malformed input.
SelfAffineSystem system_from_json(const json& j);

json measure_to_json(const MeasureSpec& spec);
MeasureSpec measure_from_json(const json& j);

// Reads either a file path or inline JSON (first non-space char '{').
SelfAffineSystem load_system(const std::string& path_or_json);

}  // namespace selfaffine
