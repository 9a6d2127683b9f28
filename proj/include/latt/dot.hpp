#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "latt/lattice.hpp"
#include "latt/mask.hpp"
#include "latt/poset.hpp"
#include "latt/set_family.hpp"

namespace latt {

/// Hasse diagram as DOT: one node per element, one edge per cover, elements of
/// equal height share a rank.
inline void write_dot(std::ostream& os, const Poset& p,
                      const std::vector<std::string>& labels,
                      const std::string& name = "hasse") {
    os << "digraph " << name << " {\n";
    os << "  rankdir=BT;\n  node [shape=plaintext];\n";
    for (int v = 0; v < p.size(); ++v)
        os << "  n" << v << " [label=\"" << labels[v] << "\"];\n";
    std::map<int, std::vector<int>> by_height;
    for (int v = 0; v < p.size(); ++v) by_height[p.height(v)].push_back(v);
    for (auto& [h, vs] : by_height) {
        os << "  { rank=same;";
        for (int v : vs) os << " n" << v << ";";
        os << " }\n";
    }
    for (auto [a, b] : p.covers()) os << "  n" << a << " -> n" << b << ";\n";
    os << "}\n";
}

inline void write_dot(std::ostream& os, const Poset& p, const std::string& name = "hasse") {
    std::vector<std::string> labels;
    for (int v = 0; v < p.size(); ++v) labels.push_back(std::to_string(v));
    write_dot(os, p, labels, name);
}

inline void write_dot(std::ostream& os, const Lattice& l, const std::string& name = "hasse") {
    write_dot(os, l.poset(), name);
}

inline void write_dot(std::ostream& os, const SetFamily& f, const std::string& name = "family") {
    std::vector<std::string> labels;
    for (Mask m : f.sets()) labels.push_back(m == 0 ? "{}" : mask_str(m));
    write_dot(os, f.to_poset(), labels, name);
}

/// Lattice with an attached set representation: nodes carry atom sets.
inline void write_dot(std::ostream& os, const Lattice& l, const std::vector<Mask>& atom_sets,
                      const std::string& name = "hasse") {
    std::vector<std::string> labels;
    for (int v = 0; v < l.size(); ++v)
        labels.push_back(atom_sets[v] == 0 ? "{}" : mask_str(atom_sets[v]));
    write_dot(os, l.poset(), labels, name);
}

} // namespace latt
