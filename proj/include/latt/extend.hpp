#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/set_family.hpp"

namespace latt {

/// H(L) = L - (A(L) u {0}): hosts for inserted atoms.
inline std::vector<int> h_set(const Lattice& l) {
    std::vector<char> drop(l.size(), 0);
    drop[l.bottom()] = 1;
    for (int a : l.atoms()) drop[a] = 1;
    std::vector<int> out;
    for (int x = 0; x < l.size(); ++x)
        if (!drop[x]) out.push_back(x);
    return out;
}

/// A base lattice L together with a delta assignment (counts of new atoms
/// inserted under elements of H(L)) and the resulting lattice P. Inserted
/// atoms take indices |L|, |L|+1, ... in parent-sorted order; atoms under one
/// parent are interchangeable, so counts are all that is kept.
struct StandardForm {
    Lattice base;
    std::map<int, int> delta;          // host element -> number of inserted atoms
    Lattice result;
    std::vector<int> inserted_parent;  // result index -> parent, -1 for originals
};

namespace detail {

inline StandardForm apply_delta(const Lattice& l, const std::map<int, int>& delta) {
    int n = l.size();
    int extra = 0;
    for (auto& [x, c] : delta) { (void)x; extra += c; }

    std::vector<std::pair<int, int>> covers = l.covers();
    std::vector<int> parent(n + extra, -1);
    int next = n;
    for (auto& [x, c] : delta)
        for (int i = 0; i < c; ++i) {
            covers.emplace_back(l.bottom(), next);
            covers.emplace_back(next, x);
            parent[next] = x;
            ++next;
        }

    StandardForm form;
    form.base = l;
    form.delta = delta;
    form.result = Lattice::build(n + extra, std::move(covers));
    form.inserted_parent = std::move(parent);
    return form;
}

} // namespace detail

/// Builds the standard form for an explicit delta profile. Validates the
/// defining conditions: hosts lie in H(L) and every non-atom join-irreducible
/// receives at least one new atom.
inline StandardForm make_standard_form(const Lattice& l, const std::map<int, int>& delta) {
    std::vector<int> hs = h_set(l);
    for (auto& [x, c] : delta) {
        if (c < 0) throw Error("negative delta count");
        if (c > 0 && std::find(hs.begin(), hs.end(), x) == hs.end())
            throw Error("delta host " + std::to_string(x) + " outside H(L)");
    }
    std::vector<int> ji = l.join_irreducibles();
    for (int x : ji) {
        if (std::find(hs.begin(), hs.end(), x) == hs.end()) continue;
        auto it = delta.find(x);
        if (it == delta.end() || it->second == 0)
            throw Error("join-irreducible host " + std::to_string(x) + " needs an atom");
    }
    return detail::apply_delta(l, delta);
}

/// The minimal member of E(L): exactly one new atom under each non-atom
/// join-irreducible, so |A(P)| = |J(L)|.
inline StandardForm minimal_standard_form(const Lattice& l) {
    if (!l.is_semimodular()) throw NotSemimodular("input lattice is not semimodular");
    std::vector<int> hs = h_set(l);
    std::map<int, int> delta;
    for (int x : l.join_irreducibles())
        if (std::find(hs.begin(), hs.end(), x) != hs.end()) delta[x] = 1;
    return detail::apply_delta(l, delta);
}

/// All members of E(L) with at most |J(L) n H(L)| + extra_budget inserted
/// atoms, one representative per delta profile. Deterministic order.
inline std::vector<StandardForm> standard_forms(const Lattice& l, int extra_budget) {
    if (!l.is_semimodular()) throw NotSemimodular("input lattice is not semimodular");
    std::vector<int> hosts = h_set(l);
    std::vector<char> forced(l.size(), 0);
    for (int x : l.join_irreducibles()) forced[x] = 1;

    std::vector<StandardForm> out;
    std::map<int, int> delta;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
        if (i == hosts.size()) {
            out.push_back(detail::apply_delta(l, delta));
            return;
        }
        int x = hosts[i];
        int lo = forced[x] ? 1 : 0;
        for (int c = lo; c - lo <= budget; ++c) {
            if (c > 0) delta[x] = c;
            rec(i + 1, budget - (c - lo));
            delta.erase(x);
        }
    };
    rec(0, extra_budget);
    std::sort(out.begin(), out.end(), [](const StandardForm& a, const StandardForm& b) {
        if (a.result.size() != b.result.size()) return a.result.size() < b.result.size();
        return a.delta < b.delta;
    });
    return out;
}

inline int inserted_atom_count(const StandardForm& f) {
    return f.result.size() - f.base.size();
}

/// Removal of one inserted atom from a non-minimal form: returns
/// P = Q - {r} together with the transformed family {X - {r} : X in T^Q_L}.
/// r must be the last-indexed atom of some parent whose removal keeps the form
/// standard. The overload without r picks the last eligible atom.
struct RemovalResult {
    StandardForm form;          // Q - {r}, reindexed (r was the removed index)
    SetFamily transformed;      // {X - {r}} with labels compressed past r's label
    int removed_index;          // index of r in Q
    int removed_label;          // atom label of r in S_Q's universe
};

inline std::vector<int> removable_atoms(const StandardForm& q) {
    std::vector<int> ji = q.base.join_irreducibles();
    std::vector<int> out;
    for (int v = q.base.size(); v < q.result.size(); ++v) {
        int parent = q.inserted_parent[v];
        int count = q.delta.at(parent);
        bool parent_forced =
            std::find(ji.begin(), ji.end(), parent) != ji.end();
        if (count >= 2 || !parent_forced) out.push_back(v);
    }
    return out;
}

inline RemovalResult remove_atom(const StandardForm& q, int r) {
    auto rem = removable_atoms(q);
    if (rem.empty()) throw AtMinimum("form already has |A(P)| = |J(L)| atoms");
    if (std::find(rem.begin(), rem.end(), r) == rem.end())
        throw Error("atom " + std::to_string(r) + " is not removable");

    Representation repq = represent(q.result);
    int r_label = repq.atom_label[r];

    // Rebuild the smaller form; hosts are base elements, so the reduced delta
    // carries over unchanged.
    std::map<int, int> delta = q.delta;
    int parent = q.inserted_parent[r];
    if (--delta[parent] == 0) delta.erase(parent);
    StandardForm p = detail::apply_delta(q.base, delta);

    // T^Q_L with r's label deleted and higher labels compressed.
    std::vector<int> image;
    for (int x = 0; x < q.base.size(); ++x) image.push_back(x);
    SetFamily tq = embedded_family(q.result, image);
    std::vector<Mask> sets;
    for (Mask m : tq.sets()) {
        Mask keep = m & ~label_bit(r_label);
        Mask low = keep & (label_bit(r_label) - 1);
        Mask high = keep & ~(label_bit(r_label) - 1);
        sets.push_back(low | (high >> 1));
    }
    RemovalResult res{std::move(p), SetFamily(tq.universe() - 1, std::move(sets)), r, r_label};

    // The transformed family must coincide with the embedded family
    // recomputed directly on the smaller form.
    SetFamily direct = embedded_family(res.form.result, image);
    if (!(direct == res.transformed))
        throw Error("atom removal does not commute with the embedded family");
    return res;
}

inline RemovalResult remove_atom(const StandardForm& q) {
    auto rem = removable_atoms(q);
    if (rem.empty()) throw AtMinimum("form already has |A(P)| = |J(L)| atoms");
    return remove_atom(q, rem.back());
}

/// Atom elimination on a geometric family: H = {W - {r} : W in K,
/// closure(W - {r}) = closure(W)}. Labels above r are compressed down.
inline SetFamily reduce_geometric(const SetFamily& k, int r_label) {
    if (!k.to_lattice().is_geometric())
        throw NotGeometric("reduction input must be a geometric family");
    if (!k.contains(label_bit(r_label)))
        throw Error("label " + std::to_string(r_label) + " is not an atom of the family");
    std::vector<Mask> sets;
    for (Mask w : k.sets()) {
        Mask less = w & ~label_bit(r_label);
        if (k.closure(less) != k.closure(w)) continue;
        Mask low = less & (label_bit(r_label) - 1);
        Mask high = less & ~(label_bit(r_label) - 1);
        sets.push_back(low | (high >> 1));
    }
    std::sort(sets.begin(), sets.end(), mask_less);
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    SetFamily h(k.universe() - 1, std::move(sets));
    if (h.size() >= k.size())
        throw Error("reduction failed to shrink the family");
    if (!h.to_lattice().is_geometric())
        throw Error("reduced family is not geometric");
    return h;
}

} // namespace latt
