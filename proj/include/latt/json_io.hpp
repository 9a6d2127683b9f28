#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latt/errors.hpp"
#include "latt/extend.hpp"
#include "latt/lattice.hpp"
#include "latt/poset.hpp"
#include "latt/set_family.hpp"

namespace latt {

using json = nlohmann::ordered_json;

// Lattice/poset files: {"n": <int>, "covers": [[a,b], ...]},
// optionally {"inserted": {"<atom>": parent, ...}} for standard forms.
// Family files: {"universe": <int>, "sets": [[label, ...], ...]}.

inline json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

inline bool is_family_json(const json& j) { return j.is_object() && j.contains("universe"); }

struct ParsedCovers {
    int n = 0;
    std::vector<std::pair<int, int>> covers;
    std::map<int, int> inserted;   // atom index -> parent index
};

inline ParsedCovers parse_covers(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("covers"))
        throw ParseError("expected an object with \"n\" and \"covers\"");
    ParsedCovers out;
    if (!j["n"].is_number_integer()) throw ParseError("field \"n\" must be an integer");
    out.n = j["n"].get<int>();
    if (!j["covers"].is_array()) throw ParseError("field \"covers\" must be an array");
    for (const auto& e : j["covers"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("each cover must be a pair of integers");
        out.covers.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (j.contains("inserted")) {
        if (!j["inserted"].is_object()) throw ParseError("field \"inserted\" must be a map");
        for (auto it = j["inserted"].begin(); it != j["inserted"].end(); ++it) {
            int atom;
            try {
                atom = std::stoi(it.key());
            } catch (...) {
                throw ParseError("inserted key \"" + it.key() + "\" is not an index");
            }
            if (!it.value().is_number_integer())
                throw ParseError("inserted parent must be an integer");
            out.inserted[atom] = it.value().get<int>();
        }
    }
    return out;
}

inline Poset parse_poset(const json& j) {
    ParsedCovers pc = parse_covers(j);
    try {
        return Poset::from_covers(pc.n, pc.covers);
    } catch (const InvalidCovers& e) {
        throw ParseError(e.what());
    }
}

inline Lattice parse_lattice(const json& j) {
    ParsedCovers pc = parse_covers(j);
    try {
        return Lattice::build(pc.n, pc.covers);
    } catch (const InvalidCovers& e) {
        throw ParseError(e.what());
    }
}

/// Standard-form files reconstruct the base lattice from the non-inserted
/// elements, which must occupy indices 0..n-k-1.
inline StandardForm parse_standard_form(const json& j) {
    ParsedCovers pc = parse_covers(j);
    if (pc.inserted.empty()) throw ParseError("standard form needs an \"inserted\" map");
    int base_n = pc.n - (int)pc.inserted.size();
    std::map<int, int> delta;
    for (auto [atom, parent] : pc.inserted) {
        if (atom < base_n || atom >= pc.n)
            throw ParseError("inserted atoms must occupy the trailing indices");
        if (parent < 0 || parent >= base_n) throw ParseError("inserted parent out of range");
        delta[parent]++;
    }
    std::vector<std::pair<int, int>> base_covers;
    for (auto [a, b] : pc.covers)
        if (a < base_n && b < base_n) base_covers.emplace_back(a, b);
    try {
        Lattice base = Lattice::build(base_n, base_covers);
        StandardForm form = make_standard_form(base, delta);
        if (!(form.result.covers() == Lattice::build(pc.n, pc.covers).covers()))
            throw ParseError("covers disagree with the delta reconstruction");
        return form;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("not a valid standard form: ") + e.what());
    }
}

inline SetFamily parse_family(const json& j) {
    if (!j.is_object() || !j.contains("universe") || !j.contains("sets"))
        throw ParseError("expected an object with \"universe\" and \"sets\"");
    if (!j["universe"].is_number_integer())
        throw ParseError("field \"universe\" must be an integer");
    int u = j["universe"].get<int>();
    if (u < 0 || u > kMaxUniverse) throw ParseError("universe size out of range");
    if (!j["sets"].is_array()) throw ParseError("field \"sets\" must be an array");
    std::vector<Mask> sets;
    for (const auto& e : j["sets"]) {
        if (!e.is_array()) throw ParseError("each set must be an array of labels");
        Mask m = 0;
        for (const auto& l : e) {
            if (!l.is_number_integer()) throw ParseError("labels must be integers");
            int label = l.get<int>();
            if (label < 1 || label > u)
                throw ParseError("label " + std::to_string(label) + " outside 1.." +
                                 std::to_string(u));
            m |= label_bit(label);
        }
        sets.push_back(m);
    }
    try {
        return SetFamily(u, std::move(sets));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

inline json to_json(const Poset& p) {
    json j;
    j["n"] = p.size();
    j["covers"] = json::array();
    for (auto [a, b] : p.covers()) j["covers"].push_back({a, b});
    return j;
}

inline json to_json(const Lattice& l) { return to_json(l.poset()); }

inline json to_json(const StandardForm& f) {
    json j = to_json(f.result);
    json ins = json::object();
    for (int v = f.base.size(); v < f.result.size(); ++v)
        ins[std::to_string(v)] = f.inserted_parent[v];
    j["inserted"] = std::move(ins);
    return j;
}

inline json to_json(const SetFamily& f) {
    json j;
    j["universe"] = f.universe();
    j["sets"] = json::array();
    for (Mask m : f.sets()) j["sets"].push_back(labels_of(m));
    return j;
}

inline std::vector<Mask> parse_script(const json& j) {
    if (!j.is_array()) throw ParseError("script must be an array of label arrays");
    std::vector<Mask> out;
    for (const auto& e : j) {
        if (!e.is_array()) throw ParseError("each script entry must be an array of labels");
        Mask m = 0;
        for (const auto& l : e) {
            if (!l.is_number_integer() || l.get<int>() < 1)
                throw ParseError("script labels must be positive integers");
            m |= label_bit(l.get<int>());
        }
        out.push_back(m);
    }
    return out;
}

} // namespace latt
