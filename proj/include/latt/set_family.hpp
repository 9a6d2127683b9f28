#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/mask.hpp"

namespace latt {

/// A family of atom-label subsets ordered by inclusion. Stored deduplicated and
/// sorted by (cardinality, value). Must contain the empty set and a unique
/// maximal member. Immutable; with_set builds an extended copy.
class SetFamily {
public:
    SetFamily() = default;

    SetFamily(int universe, std::vector<Mask> sets) : universe_(universe) {
        if (universe < 0 || universe > kMaxUniverse)
            throw InvalidCovers("universe size out of range");
        std::sort(sets.begin(), sets.end(), mask_less);
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        if (sets.empty() || sets.front() != 0)
            throw Error("set family must contain the empty set");
        for (Mask m : sets)
            if (!subset_of(m, full_mask(universe)))
                throw Error("member " + mask_str(m) + " exceeds the universe");
        for (std::size_t i = 0; i + 1 < sets.size(); ++i)
            if (!subset_of(sets[i], sets.back()) && !subset_of(sets.back(), sets[i]))
                throw Error("set family lacks a unique maximal member");
        sets_ = std::move(sets);
        compute_heights();
    }

    int universe() const { return universe_; }
    const std::vector<Mask>& sets() const { return sets_; }
    int size() const { return (int)sets_.size(); }
    Mask at(int i) const { return sets_[i]; }
    Mask top_set() const { return sets_.back(); }

    bool contains(Mask m) const {
        auto it = std::lower_bound(sets_.begin(), sets_.end(), m, mask_less);
        return it != sets_.end() && *it == m;
    }
    int index_of(Mask m) const {
        auto it = std::lower_bound(sets_.begin(), sets_.end(), m, mask_less);
        if (it == sets_.end() || *it != m) return -1;
        return (int)(it - sets_.begin());
    }

    SetFamily with_set(Mask m) const {
        std::vector<Mask> s = sets_;
        s.push_back(m);
        return SetFamily(universe_, std::move(s));
    }

    /// Longest-chain height of each member under inclusion.
    const std::vector<int>& heights() const { return height_; }
    int height_of(Mask m) const { return height_[index_of(m)]; }
    int length() const { return height_.empty() ? 0 : height_[sets_.size() - 1]; }

    /// Members of height exactly h, in storage order (the varphi map).
    std::vector<Mask> level(int h) const {
        std::vector<Mask> out;
        for (int i = 0; i < size(); ++i)
            if (height_[i] == h) out.push_back(sets_[i]);
        return out;
    }

    /// Atoms of the family: height-1 members (singletons when all are present).
    std::vector<Mask> family_atoms() const { return level(1); }

    /// Atoms of the family lying below m.
    std::vector<Mask> family_atoms_below(Mask m) const {
        std::vector<Mask> out;
        for (Mask a : level(1))
            if (subset_of(a, m)) out.push_back(a);
        return out;
    }

    bool intersection_closed() const {
        for (std::size_t i = 0; i < sets_.size(); ++i)
            for (std::size_t j = i + 1; j < sets_.size(); ++j)
                if (!contains(sets_[i] & sets_[j])) return false;
        return true;
    }

    /// Closure of X: the join, in this family, of all family atoms contained in
    /// X. Join is computed as the least member above the union; if several
    /// minimal upper bounds exist (family not a lattice) JoinUndefined is raised
    /// rather than picking one.
    Mask closure(Mask x) const {
        Mask u = 0;
        for (Mask a : family_atoms())
            if (subset_of(a, x)) u |= a;
        return least_above(u);
    }

    /// Least member containing m; JoinUndefined when minimal upper bounds are
    /// not unique, impossible when the family is intersection-closed with a top.
    Mask least_above(Mask m) const {
        std::vector<Mask> ubs;
        for (Mask s : sets_)
            if (subset_of(m, s)) ubs.push_back(s);
        if (ubs.empty()) throw JoinUndefined("no member contains " + mask_str(m));
        Mask cand = ubs.front();   // smallest in (card, value) order
        for (Mask s : ubs)
            if (!subset_of(cand, s))
                throw JoinUndefined("several minimal members contain " + mask_str(m));
        return cand;
    }

    /// Cover pairs (i, j) of member indices under inclusion.
    std::vector<std::pair<int, int>> cover_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) {
                if (i == j || !subset_of(sets_[i], sets_[j])) continue;
                bool cover = true;
                for (int k = 0; k < size() && cover; ++k)
                    if (k != i && k != j && subset_of(sets_[i], sets_[k]) &&
                        subset_of(sets_[k], sets_[j]) && sets_[k] != sets_[i] &&
                        sets_[k] != sets_[j])
                        cover = false;
                if (cover) out.emplace_back(i, j);
            }
        return out;
    }

    Poset to_poset() const { return Poset::from_covers(size(), cover_pairs()); }
    Lattice to_lattice() const { return Lattice::build(size(), cover_pairs()); }

    bool operator==(const SetFamily& o) const {
        return universe_ == o.universe_ && sets_ == o.sets_;
    }
    bool operator<(const SetFamily& o) const {
        if (sets_.size() != o.sets_.size()) return sets_.size() < o.sets_.size();
        for (std::size_t i = 0; i < sets_.size(); ++i)
            if (sets_[i] != o.sets_[i]) return mask_less(sets_[i], o.sets_[i]);
        return false;
    }

private:
    void compute_heights() {
        // Storage order (card, value) is a linear extension of inclusion, so a
        // single left-to-right pass settles every height.
        height_.assign(sets_.size(), 0);
        for (std::size_t i = 0; i < sets_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (sets_[j] != sets_[i] && subset_of(sets_[j], sets_[i]))
                    height_[i] = std::max(height_[i], height_[j] + 1);
    }

    int universe_ = 0;
    std::vector<Mask> sets_;
    std::vector<int> height_;
};

/// The representation S_P = {A(x) : x in P} of an atomistic lattice P, with
/// the element map x -> A(x). Atom labels are 1..|A(P)| in ascending order of
/// the atoms' element indices. Throws NotAtomistic with a violating pair.
struct Representation {
    SetFamily family;
    std::vector<Mask> atom_set;   // element index -> A(x) as a mask
    std::vector<int> atom_label;  // element index -> its label, 0 for non-atoms
};

inline Representation represent(const Lattice& p) {
    if (auto v = p.poset().atomistic_violation())
        throw NotAtomistic(v->first, v->second);

    std::vector<int> atoms = p.atoms();
    Representation rep;
    rep.atom_label.assign(p.size(), 0);
    for (std::size_t i = 0; i < atoms.size(); ++i)
        rep.atom_label[atoms[i]] = (int)i + 1;

    rep.atom_set.assign(p.size(), 0);
    std::vector<Mask> sets;
    for (int x = 0; x < p.size(); ++x) {
        Mask m = 0;
        for (int a : p.atoms_below(x)) m |= label_bit(rep.atom_label[a]);
        rep.atom_set[x] = m;
        sets.push_back(m);
    }
    rep.family = SetFamily((int)atoms.size(), std::move(sets));

    // x -> A(x) must be an order isomorphism onto (S_P, subset).
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (p.leq(x, y) != subset_of(rep.atom_set[x], rep.atom_set[y]))
                throw NotAtomistic(x, y);
    return rep;
}

inline SetFamily set_representation(const Lattice& p) { return represent(p).family; }

/// T^P_L = {A_P(x) : x in S} for S the image of L inside P. S must be closed
/// under P's meets and joins; NotSublattice otherwise.
inline SetFamily embedded_family(const Lattice& p, const std::vector<int>& s) {
    std::vector<char> in(p.size(), 0);
    for (int x : s) in.at(x) = 1;
    for (int a : s)
        for (int b : s)
            if (!in[p.meet(a, b)] || !in[p.join(a, b)])
                throw NotSublattice("image not closed under meet/join at (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
    Representation rep = represent(p);
    std::vector<Mask> sets;
    for (int x : s) sets.push_back(rep.atom_set[x]);
    return SetFamily(rep.family.universe(), std::move(sets));
}

/// All permutations of labels 1..u (as label->label maps) under which the
/// family maps onto itself setwise.
inline std::vector<std::vector<int>> family_stabilizer(const SetFamily& f) {
    const int u = f.universe();
    std::vector<int> perm(u);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (Mask m : f.sets()) {
            Mask img = 0;
            for (int l : labels_of(m)) img |= label_bit(perm[l - 1]);
            if (!f.contains(img)) { ok = false; break; }
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline SetFamily apply_label_perm(const SetFamily& f, const std::vector<int>& perm) {
    std::vector<Mask> sets;
    for (Mask m : f.sets()) {
        Mask img = 0;
        for (int l : labels_of(m)) img |= label_bit(perm[l - 1]);
        sets.push_back(img);
    }
    return SetFamily(f.universe(), std::move(sets));
}

/// Canonical key of a family under a supplied group of label permutations:
/// the (card,value)-least image. With the full symmetric group this is a
/// canonical form for atom-relabeling isomorphism.
inline std::vector<Mask> canonical_family_key(const SetFamily& f,
                                              const std::vector<std::vector<int>>& perms) {
    std::vector<Mask> best = f.sets();
    for (const auto& perm : perms) {
        std::vector<Mask> img;
        img.reserve(f.sets().size());
        for (Mask m : f.sets()) {
            Mask t = 0;
            for (int l : labels_of(m)) t |= label_bit(perm[l - 1]);
            img.push_back(t);
        }
        std::sort(img.begin(), img.end(), mask_less);
        if (std::lexicographical_compare(img.begin(), img.end(), best.begin(), best.end(),
                                         mask_less))
            best = std::move(img);
    }
    return best;
}

inline std::vector<std::vector<int>> all_label_perms(int universe) {
    std::vector<int> perm(universe);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Families with all singletons present are atomistic posets; two of them are
/// isomorphic as posets exactly when some label permutation maps one onto the
/// other.
inline bool families_isomorphic(const SetFamily& a, const SetFamily& b) {
    if (a.universe() != b.universe() || a.size() != b.size()) return false;
    auto perms = all_label_perms(a.universe());
    return canonical_family_key(a, perms) == canonical_family_key(b, perms);
}

} // namespace latt
