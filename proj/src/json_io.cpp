#include "boolalg/json_io.hpp"

namespace boolalg {

namespace {

int get_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw schema_error(std::string("expected integer field '") + key + "'");
    return j[key].get<int>();
}

std::vector<int> get_int_array(const Json& j) {
    if (!j.is_array())
        throw schema_error("expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw schema_error("expected an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

} // namespace

Json element_to_json(const Element& x) {
    return Json{{"ground", x.ground}, {"bits", x.bits.to_points()}};
}

Element element_from_json(const Json& j) {
    int ground = get_int(j, "ground");
    if (ground < 1 || ground > kMaxGround)
        throw schema_error("element ground out of range");
    if (!j.contains("bits"))
        throw schema_error("expected field 'bits'");
    return Element(ground, Bits::from_points(get_int_array(j["bits"]), ground));
}

Json subalgebra_to_json(const Subalgebra& s) {
    Json blocks = Json::array();
    for (const Bits& b : s.blocks())
        blocks.push_back(b.to_points());
    return Json{{"ground", s.ground()}, {"blocks", blocks}};
}

Subalgebra subalgebra_from_json(const Json& j) {
    int ground = get_int(j, "ground");
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw schema_error("expected field 'blocks'");
    std::vector<Bits> blocks;
    for (const auto& blk : j["blocks"])
        blocks.push_back(Bits::from_points(get_int_array(blk), ground));
    return Subalgebra::from_blocks(ground, std::move(blocks));
}

Json family_to_json(const std::vector<Subalgebra>& family) {
    Json subs = Json::array();
    for (const Subalgebra& s : family)
        subs.push_back(subalgebra_to_json(s));
    return Json{{"ground", family.empty() ? 0 : family[0].ground()}, {"subalgebras", subs}};
}

std::vector<Subalgebra> family_from_json(const Json& j) {
    int ground = get_int(j, "ground");
    if (!j.contains("subalgebras") || !j["subalgebras"].is_array())
        throw schema_error("expected field 'subalgebras'");
    std::vector<Subalgebra> out;
    for (const auto& sj : j["subalgebras"]) {
        Subalgebra s = subalgebra_from_json(sj);
        if (s.ground() != ground)
            throw schema_error("subalgebra ground differs from the family ground");
        out.push_back(std::move(s));
    }
    return out;
}

Json system_to_json(const OverlapSystem& sys) {
    Json pairs = Json::array();
    for (const PairOverlap& p : sys.pairs)
        pairs.push_back(Json{{"i", p.i},
                             {"j", p.j},
                             {"interAtoms", p.interAtoms},
                             {"mapI", p.mapI},
                             {"mapJ", p.mapJ}});
    return Json{{"atomCounts", sys.atomCounts}, {"pairs", pairs}};
}

OverlapSystem system_from_json(const Json& j) {
    OverlapSystem sys;
    if (!j.contains("atomCounts"))
        throw schema_error("expected field 'atomCounts'");
    sys.atomCounts = get_int_array(j["atomCounts"]);
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array())
            throw schema_error("expected 'pairs' to be an array");
        for (const auto& pj : j["pairs"]) {
            PairOverlap p;
            p.i = get_int(pj, "i");
            p.j = get_int(pj, "j");
            p.interAtoms = get_int(pj, "interAtoms");
            if (!pj.contains("mapI") || !pj.contains("mapJ"))
                throw schema_error("pair is missing 'mapI' or 'mapJ'");
            p.mapI = get_int_array(pj["mapI"]);
            p.mapJ = get_int_array(pj["mapJ"]);
            sys.pairs.push_back(std::move(p));
        }
    }
    sys.validate();
    return sys;
}

OverlapSystem system_or_family_from_json(const Json& j) {
    if (j.contains("subalgebras"))
        return embed_as_system(family_from_json(j));
    return system_from_json(j);
}

Json predicate_to_json(const PredicateResult& r) {
    Json j{{"result", r.value}};
    j["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    return j;
}

Json well_to_json(const WellReport& r) {
    Json j{{"result", r.value}};
    if (r.value)
        j["counterexample"] = nullptr;
    else
        j["counterexample"] = Json{{"subset", r.subset}, {"tuple", r.tuple}};
    return j;
}

Json pushout_to_json(const PushoutResult& r, bool emitCoprojections) {
    Json j;
    j["atomCount"] = r.atom_count();
    j["tuples"] = r.tuples;
    Json inj = Json::array();
    for (size_t i = 0; i < r.injectivity.size(); ++i) {
        Json e{{"algebra", static_cast<int>(i)}, {"injective", r.injectivity[i].injective}};
        e["collapsedAtom"] =
            r.injectivity[i].collapsedAtom ? Json(*r.injectivity[i].collapsedAtom) : Json(nullptr);
        inj.push_back(e);
    }
    j["injectivity"] = inj;
    if (emitCoprojections)
        j["coprojections"] = r.coprojections;
    return j;
}

Json assembly_to_json(const AssemblyResult& r) {
    Json j{{"ok", r.ok}, {"log", r.log}};
    Json stages = Json::array();
    for (const AssemblyStage& st : r.stages)
        stages.push_back(
            Json{{"algebra", st.algebra}, {"ground", st.ground}, {"embeddings", st.embeddings}});
    j["stages"] = stages;
    if (!r.ok) {
        j["failedStage"] = r.failedStage;
        j["failure"] = to_string(r.failure);
        j["detail"] = r.detail;
    }
    return j;
}

Json reflection_to_json(const ReflectionReport& r) {
    Json j{{"result", r.ok}};
    if (!r.ok) {
        j["failedCondition"] = r.failedCondition;
        j["detail"] = r.detail;
    }
    return j;
}

namespace {

std::string subset_key(int s) {
    std::string key;
    for (int i = 0; i < 8; ++i)
        if ((s >> i) & 1)
            key += std::to_string(i);
    return key;
}

} // namespace

Json cube_to_json(const FinCube& cube) {
    Json spaces = Json::object();
    for (int s = 0; s < cube.subsets(); ++s)
        spaces[subset_key(s)] = cube.size(s);
    Json maps = Json::object();
    for (int s = 0; s < cube.subsets(); ++s)
        for (int t = s; t < cube.subsets(); ++t) {
            if ((s & t) != s || s == t)
                continue;
            maps[subset_key(s) + "->" + subset_key(t)] = cube.map(s, t).table;
        }
    return Json{{"n", cube.dim()}, {"spaces", spaces}, {"maps", maps}};
}

} // namespace boolalg
