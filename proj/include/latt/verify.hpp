#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "latt/canonical.hpp"
#include "latt/errors.hpp"
#include "latt/extend.hpp"
#include "latt/indep.hpp"
#include "latt/lattice.hpp"
#include "latt/set_family.hpp"

namespace latt {

// ---------------------------------------------------------------------------
// Embedding checker
// ---------------------------------------------------------------------------

struct EmbeddingReport {
    bool is_sublattice = true;
    bool preserves_meets = true;
    bool preserves_joins = true;
    bool preserves_covers = true;
    std::vector<std::pair<Mask, Mask>> violations;

    bool all() const { return preserves_meets && preserves_joins && preserves_covers; }
};

namespace detail {

inline std::optional<Mask> family_meet(const SetFamily& f, Mask a, Mask b) {
    std::optional<Mask> best;
    for (Mask s : f.sets()) {
        if (!subset_of(s, a) || !subset_of(s, b)) continue;
        if (!best || subset_of(*best, s)) best = s;
    }
    if (!best) return std::nullopt;
    for (Mask s : f.sets())
        if (subset_of(s, a) && subset_of(s, b) && !subset_of(s, *best)) return std::nullopt;
    return best;
}

inline std::optional<Mask> family_join(const SetFamily& f, Mask a, Mask b) {
    std::optional<Mask> best;
    for (Mask s : f.sets()) {
        if (!subset_of(a, s) || !subset_of(b, s)) continue;
        if (!best || subset_of(s, *best)) best = s;
    }
    if (!best) return std::nullopt;
    for (Mask s : f.sets())
        if (subset_of(a, s) && subset_of(b, s) && !subset_of(*best, s)) return std::nullopt;
    return best;
}

} // namespace detail

/// Verifies that the identity inclusion of `sub` into `super` preserves meets,
/// joins and covers. Throws NotSubset when sub is not contained in super.
inline EmbeddingReport check_embedding(const SetFamily& sub, const SetFamily& super) {
    for (Mask m : sub.sets())
        if (!super.contains(m)) throw NotSubset("member " + mask_str(m) + " missing above");

    EmbeddingReport rep;
    for (int i = 0; i < sub.size(); ++i)
        for (int j = i + 1; j < sub.size(); ++j) {
            Mask a = sub.at(i), b = sub.at(j);
            auto ms = detail::family_meet(sub, a, b), mS = detail::family_meet(super, a, b);
            if (!ms || !mS || *ms != *mS) {
                rep.preserves_meets = false;
                rep.violations.emplace_back(a, b);
            }
            auto js = detail::family_join(sub, a, b), jS = detail::family_join(super, a, b);
            if (!js || !jS || *js != *jS) {
                rep.preserves_joins = false;
                rep.violations.emplace_back(a, b);
            }
        }
    for (auto [i, j] : sub.cover_pairs()) {
        Mask a = sub.at(i), b = sub.at(j);
        int hi = super.index_of(a), hj = super.index_of(b);
        bool cover = true;
        for (int k = 0; k < super.size(); ++k) {
            Mask s = super.at(k);
            if (k != hi && k != hj && subset_of(a, s) && subset_of(s, b) && s != a && s != b)
                cover = false;
        }
        if (!cover) {
            rep.preserves_covers = false;
            rep.violations.emplace_back(a, b);
        }
    }
    rep.is_sublattice = rep.preserves_meets && rep.preserves_joins;
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force extension search, independent of the Step-1/Step-3 machinery.
// Families are built by scanning every subset of the universe in ascending
// (card, value) order, so each accepted set has all of its intersections with
// earlier members already decided; closedness is enforced incrementally.
// ---------------------------------------------------------------------------

struct OracleOptions {
    long long cap = 50'000'000;   // recursion-node cap
};

struct OracleCertificate {
    int depth = 0;                // sets added beyond the standard representation
    long long nodes = 0;
    long long families_tested = 0;
};

struct OracleResult {
    StandardForm form;
    SetFamily sp;
    SetFamily t_family;
    SetFamily best;
    std::vector<SetFamily> all_at_depth;   // every valid family at the minimal depth
    OracleCertificate certificate;
};

namespace detail {

/// Enumerates intersection-closed supersets of `base` inside the powerset of
/// the universe, with at most (exactly_d >= 0: exactly) max_extra additions,
/// and hands each completed family to the visitor. Prunes on height overflow.
template <typename F>
inline void closed_superfamilies(const SetFamily& base, int target_length, int max_extra,
                                 bool exactly, long long cap, long long& nodes,
                                 F&& visit) {
    const int u = base.universe();
    if (u > 20) throw CapExceeded("universe too large for the subset oracle");
    const Mask full = full_mask(u);
    const std::size_t nmasks = std::size_t{1} << u;

    std::vector<Mask> order(nmasks);
    for (std::size_t i = 0; i < nmasks; ++i) order[i] = (Mask)i;
    std::sort(order.begin(), order.end(), mask_less);

    std::vector<char> in_base(nmasks, 0);
    for (Mask m : base.sets()) in_base[m] = 1;

    std::vector<char> chosen(nmasks, 0);
    std::vector<int> height(nmasks, 0);
    std::vector<Mask> members;

    auto closed_with = [&](Mask w) {
        for (Mask x : members)
            if (!chosen[x & w]) return false;
        return true;
    };
    auto height_of = [&](Mask w) {
        int h = 0;
        for (Mask x : members)
            if (x != w && subset_of(x, w)) h = std::max(h, height[x] + 1);
        return h;
    };

    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int extra) {
        if (++nodes > cap) throw CapExceeded("oracle node cap exhausted");
        if (pos == nmasks) {
            if (exactly && extra != max_extra) return;
            visit(members);
            return;
        }
        Mask w = order[pos];
        bool forced = in_base[w];

        if (!forced) rec(pos + 1, extra);   // skip branch

        if ((forced || extra < max_extra) && (forced || (card(w) >= 2 && w != full)) &&
            closed_with(w)) {
            int h = height_of(w);
            bool fits = (w == full) ? (h == target_length) : (h <= target_length - 1);
            if (fits) {
                chosen[w] = 1;
                height[w] = h;
                members.push_back(w);
                rec(pos + 1, extra + (forced ? 0 : 1));
                members.pop_back();
                chosen[w] = 0;
            }
        }
    };
    rec(0, 0);
}

} // namespace detail

/// All geometric, intersection-closed, equal-length families over the minimal
/// universe that contain the embedded copy of L cover-preservingly. This is
/// the exhaustive reference the algorithmic search is compared against.
inline std::vector<SetFamily> all_geometric_extensions(const SetFamily& sp,
                                                       const SetFamily& t_family,
                                                       const OracleOptions& opts = {}) {
    const int target = sp.length();
    const int max_extra = (1 << sp.universe());
    std::vector<SetFamily> out;
    long long nodes = 0;
    detail::closed_superfamilies(
        sp, target, max_extra, /*exactly=*/false, opts.cap, nodes,
        [&](const std::vector<Mask>& members) {
            SetFamily f(sp.universe(), members);
            if (f.length() != target) return;
            if (!f.to_lattice().is_geometric()) return;
            if (!check_embedding(t_family, f).all()) return;
            out.push_back(std::move(f));
        });
    std::sort(out.begin(), out.end());
    return out;
}

/// Iterative-deepening minimal geometric extension: for d = 0, 1, ... try
/// every way of adding d sets to the standard representation; the first depth
/// with a valid family is the certified minimum.
inline OracleResult brute_force_best(const Lattice& l, const OracleOptions& opts = {}) {
    OracleResult res;
    res.form = minimal_standard_form(l);
    Representation rep = represent(res.form.result);
    res.sp = rep.family;
    std::vector<Mask> image;
    for (int x = 0; x < l.size(); ++x) image.push_back(rep.atom_set[x]);
    res.t_family = SetFamily(res.sp.universe(), image);

    const int target = res.sp.length();
    const int free_count = (1 << res.sp.universe());
    for (int d = 0; d <= free_count; ++d) {
        std::vector<SetFamily> found;
        detail::closed_superfamilies(
            res.sp, target, d, /*exactly=*/true, opts.cap, res.certificate.nodes,
            [&](const std::vector<Mask>& members) {
                ++res.certificate.families_tested;
                SetFamily f(res.sp.universe(), members);
                if (f.length() != target) return;
                if (!f.to_lattice().is_geometric()) return;
                if (!check_embedding(res.t_family, f).all()) return;
                found.push_back(std::move(f));
            });
        if (!found.empty()) {
            std::sort(found.begin(), found.end());
            res.best = found.front();
            res.all_at_depth = std::move(found);
            res.certificate.depth = d;
            return res;
        }
    }
    throw Error("no geometric extension exists over the minimal universe");
}

// ---------------------------------------------------------------------------
// Small-lattice enumeration: all non-isomorphic lattices with <= max_n
// elements, grown one element at a time. Labels follow a linear extension, so
// every prefix is a meet-closed down-set; pairs without a meet prune early.
// ---------------------------------------------------------------------------

template <typename F>
inline void enumerate_lattices(int max_n, F&& visit) {
    for (int n = 1; n <= max_n; ++n) {
        if (n == 1) {
            visit(Lattice::build(1, {}));
            continue;
        }
        std::set<std::vector<std::pair<int, int>>> seen;
        std::vector<Mask> below{1};   // below[i]: bitset of {j <= i}, bit i set
        std::vector<std::pair<int, int>> covers;

        std::function<void(int)> grow = [&](int i) {
            if (i == n) {
                Mask full = full_mask(n);
                bool topped = false;
                for (int v = 0; v < n; ++v) topped |= (below[v] == full);
                if (!topped) return;
                Lattice l = Lattice::build(n, covers);
                auto key = canonicalize(l.poset()).covers;
                if (seen.insert(key).second) visit(std::move(l));
                return;
            }
            for (Mask c = 1; c < (Mask{1} << i); ++c) {
                // Lower covers must form an antichain.
                bool anti = true;
                for (int a : labels_of(c)) {
                    for (int b : labels_of(c)) {
                        int x = a - 1, y = b - 1;
                        if (x != y && (below[y] >> x) & 1) { anti = false; break; }
                    }
                    if (!anti) break;
                }
                if (!anti) continue;

                Mask bel = Mask{1} << i;
                for (int a : labels_of(c)) bel |= below[a - 1];

                // Every earlier element must keep a unique meet with i.
                bool meets = true;
                for (int j = 0; j < i && meets; ++j) {
                    Mask common = below[j] & bel;
                    bool found = false;
                    for (int z = 0; z < i && !found; ++z)
                        if ((common >> z) & 1 && (common & ~below[z]) == 0) found = true;
                    meets = found;
                }
                if (!meets) continue;

                std::size_t mark = covers.size();
                for (int a : labels_of(c)) covers.emplace_back(a - 1, i);
                below.push_back(bel);
                grow(i + 1);
                below.pop_back();
                covers.resize(mark);
            }
        };
        grow(1);
    }
}

inline std::vector<Lattice> enumerate_semimodular(int max_n) {
    std::vector<Lattice> out;
    enumerate_lattices(max_n, [&](Lattice l) {
        if (l.is_semimodular()) out.push_back(std::move(l));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Independent-set characterizations on a geometric family
// ---------------------------------------------------------------------------

struct IndepCharacterizationReport {
    bool ok = true;
    Mask member = 0;       // witness member where the characterizations differ
    std::string detail;
};

/// On a geometric family the three descriptions of J(X) coincide: the
/// recursive independent function, the maximal independent atom sets of
/// [0,X], and the independent atom sets joining to X.
inline IndepCharacterizationReport check_independent_set_characterizations(const SetFamily& g) {
    if (!g.to_lattice().is_geometric())
        throw NotGeometric("characterization check requires a geometric family");

    IndependentFamily ind = independent_function(g);
    Mask atom_union = 0;
    for (Mask a : g.family_atoms()) atom_union |= a;

    auto independent = [&](Mask sigma) {
        for (int a : labels_of(sigma))
            if (subset_of(label_bit(a), g.closure(sigma & ~label_bit(a)))) return false;
        return true;
    };

    for (int i = 0; i < g.size(); ++i) {
        Mask x = g.at(i);
        std::vector<Mask> s1 = ind.per_member[i];

        Mask ax = atom_union & x;
        std::vector<Mask> indep_in_x;
        for (Mask s = ax;; s = (s - 1) & ax) {
            if (independent(s)) indep_in_x.push_back(s);
            if (s == 0) break;
        }
        std::vector<Mask> s2;
        for (Mask s : indep_in_x) {
            bool maximal = true;
            for (int b : labels_of(ax & ~s))
                if (independent(s | label_bit(b))) { maximal = false; break; }
            if (maximal) s2.push_back(s);
        }
        std::vector<Mask> s3;
        for (Mask s = atom_union;; s = (s - 1) & atom_union) {
            if (independent(s) && g.closure(s) == x) s3.push_back(s);
            if (s == 0) break;
        }

        auto norm = [](std::vector<Mask>& v) {
            std::sort(v.begin(), v.end(), mask_less);
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        norm(s1); norm(s2); norm(s3);
        if (s1 != s2 || s1 != s3) {
            IndepCharacterizationReport r;
            r.ok = false;
            r.member = x;
            r.detail = s1 != s2 ? "recursive vs maximal-independent" : "recursive vs join";
            return r;
        }
    }
    return {};
}

} // namespace latt
