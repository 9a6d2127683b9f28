#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "latt/poset.hpp"

namespace latt {

/// Canonical relabeling of a poset's cover DAG: a permutation perm with
/// perm[old] = new such that the relabeled, sorted cover list is minimal over
/// all labelings consistent with an iterated degree/height refinement.
/// Instances stay small (<= ~20 elements), so backtracking over the refined
/// classes is enough; no partition-pruning sophistication.
class CanonicalForm {
public:
    std::vector<int> perm;                       // old index -> canonical index
    std::vector<std::pair<int, int>> covers;     // canonical cover list, sorted
    int n = 0;

    bool operator==(const CanonicalForm& o) const {
        return n == o.n && covers == o.covers;
    }
    bool operator<(const CanonicalForm& o) const {
        if (n != o.n) return n < o.n;
        return covers < o.covers;
    }
};

namespace detail {

inline std::vector<int> refine_colors(const Poset& p) {
    const int n = p.size();
    std::vector<std::uint64_t> color(n);
    for (int v = 0; v < n; ++v)
        color[v] = (std::uint64_t)p.height(v) * 10000 +
                   p.lower_covers(v).size() * 100 + p.upper_covers(v).size();

    // Iterate neighbourhood-multiset refinement until the partition is stable.
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<std::uint64_t>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(color[v]);
            std::vector<std::uint64_t> dn, up;
            for (int w : p.lower_covers(v)) dn.push_back(color[w]);
            for (int w : p.upper_covers(v)) up.push_back(color[w]);
            std::sort(dn.begin(), dn.end());
            std::sort(up.begin(), up.end());
            sig[v].push_back(0xd);
            sig[v].insert(sig[v].end(), dn.begin(), dn.end());
            sig[v].push_back(0xa);
            sig[v].insert(sig[v].end(), up.begin(), up.end());
        }
        std::map<std::vector<std::uint64_t>, std::uint64_t> rank;
        for (int v = 0; v < n; ++v) rank[sig[v]] = 0;
        std::uint64_t next = 0;
        for (auto& [k, r] : rank) r = next++;
        std::vector<std::uint64_t> fresh(n);
        for (int v = 0; v < n; ++v) fresh[v] = rank[sig[v]];
        if (fresh == color) break;
        color = std::move(fresh);
    }

    std::map<std::uint64_t, int> rank;
    for (int v = 0; v < n; ++v) rank[color[v]] = 0;
    int next = 0;
    for (auto& [k, r] : rank) r = next++;
    std::vector<int> out(n);
    for (int v = 0; v < n; ++v) out[v] = rank[color[v]];
    return out;
}

} // namespace detail

inline CanonicalForm canonicalize(const Poset& p) {
    const int n = p.size();
    std::vector<int> color = detail::refine_colors(p);

    // Vertices grouped by color; assignment order fixed by color rank, so only
    // orderings inside a class are explored.
    std::vector<std::vector<int>> classes;
    {
        int num = *std::max_element(color.begin(), color.end()) + 1;
        classes.assign(num, {});
        for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);
    }
    std::vector<int> slots;   // slots[i] = old vertex placed at canonical index i
    for (auto& c : classes)
        for (int v : c) slots.push_back(v);

    std::vector<std::pair<int, int>> best;
    std::vector<int> best_slots;
    bool have_best = false;

    std::vector<int> pos(n);
    auto encode = [&]() {
        std::vector<std::pair<int, int>> e;
        e.reserve(p.covers().size());
        for (auto [a, b] : p.covers()) e.emplace_back(pos[a], pos[b]);
        std::sort(e.begin(), e.end());
        return e;
    };

    // Backtrack over within-class orderings.
    std::vector<std::size_t> bounds;   // class start offsets in slots
    bounds.push_back(0);
    for (auto& c : classes) bounds.push_back(bounds.back() + c.size());

    auto rec = [&](auto&& self, std::size_t cls) -> void {
        if (cls + 1 >= bounds.size()) {
            for (int i = 0; i < n; ++i) pos[slots[i]] = i;
            auto e = encode();
            if (!have_best || e < best) {
                best = std::move(e);
                best_slots = slots;
                have_best = true;
            }
            return;
        }
        std::size_t lo = bounds[cls], hi = bounds[cls + 1];
        std::sort(slots.begin() + lo, slots.begin() + hi);
        std::vector<int> base(slots.begin() + lo, slots.begin() + hi);
        do {
            std::copy(base.begin(), base.end(), slots.begin() + lo);
            self(self, cls + 1);
        } while (std::next_permutation(base.begin(), base.end()));
    };
    rec(rec, 0);

    CanonicalForm cf;
    cf.n = n;
    cf.covers = std::move(best);
    cf.perm.assign(n, 0);
    for (int i = 0; i < n; ++i) cf.perm[best_slots[i]] = i;
    return cf;
}

inline bool is_isomorphic(const Poset& a, const Poset& b) {
    if (a.size() != b.size() || a.covers().size() != b.covers().size()) return false;
    return canonicalize(a) == canonicalize(b);
}

} // namespace latt
