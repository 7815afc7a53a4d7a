#pragma once

#include <json.hpp>

#include "flexbh/assignment.hpp"
#include "flexbh/bounds.hpp"
#include "flexbh/search.hpp"
#include "flexbh/topology.hpp"
#include "flexbh/zfscheme.hpp"

namespace flexbh {

using Json = nlohmann::ordered_json;

// Parsers throw std::invalid_argument on malformed documents. Rationals are
// always written as "p/q" strings; indices are 1-based throughout.

Json topology_to_json(const NetworkTopology& t);
NetworkTopology topology_from_json(const Json& j);

Json assignment_to_json(const MessageAssignment& a);
MessageAssignment assignment_from_json(const Json& j);

/// Beams are written only when designed.
Json scheme_to_json(const ZFScheme& s);
ZFScheme scheme_from_json(const Json& j);

Json dof_to_json(const DoFResult& r);
Json witness_to_json(const BoundWitness& w);
Json periodic_to_json(const PeriodicScheme& p);

}  // namespace flexbh
