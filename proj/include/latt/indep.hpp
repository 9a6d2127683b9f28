#pragma once

#include <algorithm>
#include <vector>

#include "latt/errors.hpp"
#include "latt/mask.hpp"
#include "latt/set_family.hpp"

namespace latt {

/// The independent function on a set-family lattice: for each member X, the
/// collection of atom sets sigma built bottom-up along height-respecting
/// covers, one new atom per step. Each sigma is stored as a mask (a set of
/// atom labels), so union-of-sigma is the mask itself.
struct IndependentFamily {
    std::vector<std::vector<Mask>> per_member;   // index-aligned with family.sets()

    const std::vector<Mask>& of(const SetFamily& f, Mask x) const {
        return per_member[f.index_of(x)];
    }
};

inline IndependentFamily independent_function(const SetFamily& f) {
    const auto& hs = f.heights();
    IndependentFamily out;
    out.per_member.assign(f.size(), {});

    // Family atoms below each member. Atoms are members themselves, so sigma
    // is kept as the union mask; this coincides with sets-of-singletons in
    // every family the algorithm touches.
    std::vector<std::vector<Mask>> atoms_below(f.size());
    for (Mask a : f.family_atoms())
        for (int i = 0; i < f.size(); ++i)
            if (subset_of(a, f.at(i))) atoms_below[i].push_back(a);

    auto pairs = f.cover_pairs();
    for (int i = 0; i < f.size(); ++i) {
        if (hs[i] == 0) {
            out.per_member[i] = {Mask{0}};
            continue;
        }
        std::vector<Mask> acc;
        for (auto [lo, hi] : pairs) {
            if (hi != i || hs[lo] + 1 != hs[i]) continue;
            for (Mask a : atoms_below[i]) {
                bool below_lo = std::find(atoms_below[lo].begin(), atoms_below[lo].end(),
                                          a) != atoms_below[lo].end();
                if (below_lo) continue;
                for (Mask sigma : out.per_member[lo]) acc.push_back(sigma | a);
            }
        }
        std::sort(acc.begin(), acc.end(), mask_less);
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        if (acc.empty())
            throw MalformedFamily("member " + mask_str(f.at(i)) +
                                  " of height >= 1 received no independent sets");
        out.per_member[i] = std::move(acc);
    }
    return out;
}

/// The level maps: varphi(i) = members of height i, phi(i) = independent sets
/// of height-i members. Index 0 is included (varphi(0) = {{}}).
struct LevelMaps {
    std::vector<std::vector<Mask>> varphi;
    std::vector<std::vector<Mask>> phi;
};

inline LevelMaps levels(const SetFamily& f) {
    IndependentFamily ind = independent_function(f);
    LevelMaps lm;
    int m = f.length();
    lm.varphi.assign(m + 1, {});
    lm.phi.assign(m + 1, {});
    for (int i = 0; i < f.size(); ++i) {
        int h = f.heights()[i];
        lm.varphi[h].push_back(f.at(i));
        for (Mask s : ind.per_member[i]) lm.phi[h].push_back(s);
    }
    for (auto& v : lm.phi) {
        std::sort(v.begin(), v.end(), mask_less);
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return lm;
}

} // namespace latt
