#pragma once

#include "boolalg/amalgam.hpp"
#include "boolalg/commute.hpp"
#include "boolalg/core.hpp"
#include "boolalg/cube.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace boolalg {

using Json = nlohmann::json;

// {"ground": m, "bits": [...]} with bits ascending.
Json element_to_json(const Element& x);
Element element_from_json(const Json& j);

// {"ground": m, "blocks": [[...],...]} with blocks in canonical order.
Json subalgebra_to_json(const Subalgebra& s);
Subalgebra subalgebra_from_json(const Json& j);

// {"ground": m, "subalgebras": [...]}.
Json family_to_json(const std::vector<Subalgebra>& family);
std::vector<Subalgebra> family_from_json(const Json& j);

// {"atomCounts": [...], "pairs": [{"i","j","interAtoms","mapI","mapJ"},...]}.
Json system_to_json(const OverlapSystem& sys);
OverlapSystem system_from_json(const Json& j);

/// Accepts either a family (embedded first) or a system.
OverlapSystem system_or_family_from_json(const Json& j);

Json predicate_to_json(const PredicateResult& r);
Json well_to_json(const WellReport& r);
Json pushout_to_json(const PushoutResult& r, bool emitCoprojections);
Json assembly_to_json(const AssemblyResult& r);
Json reflection_to_json(const ReflectionReport& r);

// {"n":..., "spaces": {"": k, "0": k0, ...}, "maps": {"->0": [...], ...}}
// keyed by subset strings of coordinate digits.
Json cube_to_json(const FinCube& cube);

} // namespace boolalg
