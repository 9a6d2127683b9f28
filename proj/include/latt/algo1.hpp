#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/extend.hpp"
#include "latt/indep.hpp"
#include "latt/mask.hpp"
#include "latt/set_family.hpp"

namespace latt {

// ---------------------------------------------------------------------------
// The extension search. Step 1 inserts a proper subset U of a height-k member
// when U passes (i1)-(i3); Steps 3-4 grow a strictly decreasing pending chain
// below U until the newest set lands at its intended height, at which point
// the whole chain is committed and the scan restarts at k = 3. A chain that
// cannot be completed is discarded and the committed family is restored.
// Nondeterminism (which U, which W) is explored exhaustively for enumeration
// or replayed from a script.
// ---------------------------------------------------------------------------

struct EngineOptions {
    long long max_nodes = 20'000'000;  // descent steps + state expansions
    bool checked = true;               // verify lattice invariants at commits
    bool check_i1_both_routes = false; // also run the literal (i1) quantifier
};

struct TraceEntry {
    Mask set = 0;
    int k = 0;      // working level when the set was admitted
    int t = 0;      // saved level of the chain being built
    bool step3 = false;
};

/// Search configuration: committed family R, working family Q = R + pending,
/// the working level k, the saved level t, and the pending chain.
struct SearchState {
    SetFamily committed;        // R
    SetFamily current;          // Q
    int k = 3;
    int t = 0;
    std::vector<Mask> pending;  // strictly decreasing under inclusion
    std::vector<TraceEntry> trace;

    static SearchState initial(const SetFamily& sp, int k = 3) {
        SearchState s;
        s.committed = sp;
        s.current = sp;
        s.k = k;
        s.t = k;
        return s;
    }
};

namespace detail {

/// Which of the admission conditions a candidate fails first, for diagnostics.
enum class CondFail { none, not_proper_subset, already_member, i1, i2, i3 };

inline const char* cond_name(CondFail c, bool step3) {
    switch (c) {
        case CondFail::not_proper_subset: return "not a proper subset of the host";
        case CondFail::already_member: return "already a member of the family";
        case CondFail::i1: return step3 ? "(j1)" : "(i1)";
        case CondFail::i2: return step3 ? "(j2)" : "(i2)";
        case CondFail::i3: return step3 ? "(j3)" : "(i3)";
        default: return "ok";
    }
}

/// Evaluates (i1)-(i3) / (j1)-(j3) for inserting `u`. `cond_level` is k-1 for
/// Step 1 and k-2 for Step 3; `t` is the level saved when the chain began;
/// closures are taken in the committed family.
inline CondFail admission_failure(const SetFamily& committed, const LevelMaps& lm,
                                  int t, int cond_level, Mask u,
                                  const EngineOptions& opts) {
    if (t - 1 < (int)lm.varphi.size())
        for (Mask v : lm.varphi[t - 1]) {
            Mask inter = u & v;
            bool ok = subset_of(committed.closure(inter), u);
            if (opts.check_i1_both_routes) {
                // Literal reading quantifies over every Y inside the
                // intersection; monotonicity of closure makes the single check
                // above equivalent, and that equivalence is asserted here.
                bool literal = true;
                for (Mask y = inter;; y = (y - 1) & inter) {
                    if (!subset_of(committed.closure(y), u)) { literal = false; break; }
                    if (y == 0) break;
                }
                if (literal != ok)
                    throw Error("(i1) quantifier route disagrees with the monotone route");
            }
            if (!ok) return CondFail::i1;
        }
    if (cond_level < (int)lm.phi.size())
        for (Mask s : lm.phi[cond_level])
            if (subset_of(s, u)) return CondFail::i2;
    if (cond_level < (int)lm.varphi.size())
        for (Mask v : lm.varphi[cond_level])
            if (subset_of(u, v)) return CondFail::i3;
    return CondFail::none;
}

} // namespace detail

/// Step-1 candidates of a state: pairs (host X at height k, proper subset U)
/// with U admissible. Step-3 candidates: (last pending set, W) pairs. Order is
/// deterministic: hosts and subsets ascending in (card, value).
///
/// Admission conditions are evaluated on the committed family. Mid-chain the
/// working family also holds the pending sets, whose provisional heights sit
/// below their final levels; ranging the level maps over them would let a
/// pending set at the probed level veto every subset of itself, and the
/// completeness argument's chain construction justifies (j1)-(j3) against the
/// committed levels only. At Step 1 the two families coincide.
inline std::vector<std::pair<Mask, Mask>> candidate_insertions(const SearchState& st,
                                                               bool step3,
                                                               const EngineOptions& opts = {}) {
    LevelMaps lm = levels(st.committed);
    std::vector<std::pair<Mask, Mask>> out;
    if (!step3) {
        if (st.k >= (int)lm.varphi.size()) return out;
        for (Mask x : lm.varphi[st.k]) {
            if (card(x) < 2) continue;
            std::vector<Mask> subs;
            for (Mask u = (x - 1) & x; u; u = (u - 1) & x) {
                if (card(u) < 2 || st.current.contains(u)) continue;
                if (detail::admission_failure(st.committed, lm, st.t, st.k - 1, u, opts) ==
                    detail::CondFail::none)
                    subs.push_back(u);
            }
            std::sort(subs.begin(), subs.end(), mask_less);
            for (Mask u : subs) out.emplace_back(x, u);
        }
    } else {
        if (st.pending.empty()) throw Error("step-3 candidates need a pending chain");
        Mask last = st.pending.back();
        int cond_level = st.k - 2;
        std::vector<Mask> subs;
        for (Mask w = (last - 1) & last; w; w = (w - 1) & last) {
            if (card(w) < 2 || st.current.contains(w)) continue;
            if (detail::admission_failure(st.committed, lm, st.t, cond_level, w, opts) ==
                detail::CondFail::none)
                subs.push_back(w);
        }
        std::sort(subs.begin(), subs.end(), mask_less);
        for (Mask w : subs) out.emplace_back(last, w);
    }
    return out;
}

struct ExtensionResult {
    SetFamily output;
    bool geometric = false;           // condition (M)
    std::vector<Mask> embedding;      // base-lattice element -> member of output
    std::vector<TraceEntry> trace;    // one insertion history reaching the output
};

struct EnumerationReport {
    std::vector<ExtensionResult> outputs;  // one representative per class
    bool truncated = false;
    long long nodes = 0;
};

/// Condition (M): every one-atom augmentation of a member closes one level up.
struct MReport {
    bool ok = true;
    Mask witness_set = 0;
    Mask witness_atom = 0;
};

inline MReport check_condition_m(const SetFamily& q) {
    auto atoms = q.family_atoms();
    for (int i = 0; i < q.size(); ++i) {
        Mask x = q.at(i);
        for (Mask a : atoms) {
            if (subset_of(a, x)) continue;
            Mask cl = q.closure(x | a);
            if (q.height_of(cl) != q.heights()[i] + 1) return {false, x, a};
        }
    }
    return {};
}

inline bool satisfies_M(const SetFamily& q) { return check_condition_m(q).ok; }

namespace detail {

inline void verify_commit(const SetFamily& committed, const SetFamily& sp) {
    if (!committed.intersection_closed())
        throw Error("committed family is not intersection-closed");
    for (Mask x : sp.sets())
        if (committed.height_of(x) != sp.height_of(x))
            throw Error("committed family changed the height of " + mask_str(x));
}

/// Runs the Steps 2-4 descent from a freshly inserted Step-1 set, branching
/// over every admissible W. Completed chains are handed to `on_commit`; chains
/// with no admissible continuation are dropped (the Step-3 "go to Step 1").
template <typename F>
inline void descend(const SetFamily& committed, int t, Mask first,
                    std::vector<TraceEntry> trace, const SetFamily& sp,
                    const EngineOptions& opts, long long& nodes, bool& truncated,
                    F&& on_commit) {
    struct Frame {
        SetFamily q;
        std::vector<Mask> pending;
        std::vector<TraceEntry> trace;
    };
    trace.push_back({first, t, t, false});
    // Conditions range over the committed family throughout the chain, so the
    // level maps are fixed for the whole descent.
    LevelMaps lm = levels(committed);
    std::vector<Frame> stack{{committed.with_set(first), {first}, std::move(trace)}};
    while (!stack.empty()) {
        if (++nodes > opts.max_nodes) { truncated = true; return; }
        Frame f = std::move(stack.back());
        stack.pop_back();
        int j = (int)f.pending.size() - 1;
        int intended = t - 1 - j;
        int h = f.q.height_of(f.pending.back());
        if (h == intended) {
            if (opts.checked) verify_commit(f.q, sp);
            on_commit(std::move(f.q), std::move(f.trace));
            continue;
        }
        if (h > intended)
            throw Error("pending set " + mask_str(f.pending.back()) +
                        " overshot its level");
        int next_level = intended - 1;   // the level the next W must land at
        if (next_level < 2) continue;
        int k_now = t - (int)f.pending.size() + 1;  // k after Step-4 decrements
        Mask last = f.pending.back();
        std::vector<Mask> ws;
        for (Mask w = (last - 1) & last; w; w = (w - 1) & last) {
            if (card(w) < 2 || f.q.contains(w)) continue;
            if (admission_failure(committed, lm, t, next_level, w, opts) == CondFail::none)
                ws.push_back(w);
        }
        std::sort(ws.begin(), ws.end(), mask_less);
        for (Mask w : ws) {
            Frame g{f.q.with_set(w), f.pending, f.trace};
            g.pending.push_back(w);
            g.trace.push_back({w, k_now, t, true});
            stack.push_back(std::move(g));
        }
    }
}

} // namespace detail

/// Exhaustive exploration of every run of the search: the set of terminal
/// families, deduplicated under the supplied label permutations (use the
/// stabilizer of the embedded copy of L). Memoisation on canonical committed
/// states prevents revisiting shared continuations.
inline EnumerationReport enumerate_outputs(const SetFamily& sp,
                                           const std::vector<std::vector<int>>& dedup_perms,
                                           const EngineOptions& opts = {}) {
    const int m = sp.length();
    EnumerationReport rep;

    std::set<std::vector<Mask>> visited;
    std::map<std::vector<Mask>, ExtensionResult> outputs;

    struct Node {
        SetFamily r;
        std::vector<TraceEntry> trace;
    };
    std::vector<Node> stack{{sp, {}}};
    visited.insert(canonical_family_key(sp, dedup_perms));

    while (!stack.empty() && !rep.truncated) {
        if (++rep.nodes > opts.max_nodes) { rep.truncated = true; break; }
        Node node = std::move(stack.back());
        stack.pop_back();

        bool terminal = true;
        for (int k = 3; k <= m && terminal; ++k) {
            SearchState st = SearchState::initial(node.r, k);
            auto cands = candidate_insertions(st, /*step3=*/false, opts);
            if (cands.empty()) continue;
            terminal = false;

            std::set<Mask> tried;   // the admitted set alone determines the branch
            for (auto& [host, u] : cands) {
                (void)host;
                if (!tried.insert(u).second) continue;
                detail::descend(node.r, k, u, node.trace, sp, opts, rep.nodes,
                                rep.truncated,
                                [&](SetFamily committed, std::vector<TraceEntry> tr) {
                                    auto key = canonical_family_key(committed, dedup_perms);
                                    if (visited.insert(key).second)
                                        stack.push_back({std::move(committed), std::move(tr)});
                                });
                if (rep.truncated) break;
            }
        }
        if (terminal) {
            auto key = canonical_family_key(node.r, dedup_perms);
            auto it = outputs.find(key);
            if (it == outputs.end() || node.r < it->second.output) {
                ExtensionResult res;
                res.output = std::move(node.r);
                res.trace = std::move(node.trace);
                res.geometric = satisfies_M(res.output);
                outputs[key] = std::move(res);
            }
        }
    }

    for (auto& [key, res] : outputs) {
        (void)key;
        rep.outputs.push_back(std::move(res));
    }
    std::sort(rep.outputs.begin(), rep.outputs.end(),
              [](const ExtensionResult& a, const ExtensionResult& b) {
                  return a.output < b.output;
              });
    return rep;
}

/// Replays the search with scripted choices. Every scripted set must be a
/// legal candidate when consumed; the script must be exhausted exactly when
/// the run terminates. Dead-ending chains discard their pending sets and the
/// scan resumes, matching the unscripted control flow.
inline ExtensionResult run_deterministic(const SetFamily& sp, const std::vector<Mask>& script,
                                         const EngineOptions& opts = {}) {
    const int m = sp.length();
    SetFamily r = sp;
    std::vector<TraceEntry> trace;
    std::size_t idx = 0;

    auto diagnose = [&](const SearchState& st, bool step3, Mask chosen, Mask host) {
        LevelMaps lm = levels(st.committed);
        detail::CondFail why;
        if (!subset_of(chosen, host) || chosen == host)
            why = detail::CondFail::not_proper_subset;
        else if (st.current.contains(chosen))
            why = detail::CondFail::already_member;
        else
            why = detail::admission_failure(st.committed, lm, st.t,
                                            step3 ? st.k - 2 : st.k - 1, chosen, opts);
        throw IllegalChoice("scripted set " + mask_str(chosen) + " rejected: " +
                            detail::cond_name(why, step3));
    };

    int k = 3;
    while (k <= m) {
        SearchState st = SearchState::initial(r, k);
        auto cands = candidate_insertions(st, /*step3=*/false, opts);
        if (cands.empty()) { ++k; continue; }
        if (idx == script.size())
            throw IllegalChoice("script exhausted with " + std::to_string(cands.size()) +
                                " candidates at level " + std::to_string(k));
        Mask u = script[idx++];
        bool legal = false;
        for (auto& [host, c] : cands) { (void)host; legal |= (c == u); }
        if (!legal) diagnose(st, false, u, cands.front().first);

        // Steps 2-4 with scripted W choices.
        const int t = k;
        SetFamily q = r.with_set(u);
        std::vector<Mask> pending{u};
        trace.push_back({u, t, t, false});
        bool committed = false;
        while (true) {
            int j = (int)pending.size() - 1;
            int intended = t - 1 - j;
            if (q.height_of(pending.back()) == intended) {
                if (opts.checked) detail::verify_commit(q, sp);
                r = q;
                committed = true;
                break;
            }
            SearchState inner;
            inner.committed = r;
            inner.current = q;
            inner.t = t;
            inner.k = t - (int)pending.size() + 1;
            inner.pending = pending;
            auto wcands = candidate_insertions(inner, /*step3=*/true, opts);
            if (wcands.empty()) break;  // chain abandoned; Q reverts to R
            if (idx == script.size())
                throw IllegalChoice("script exhausted inside a pending chain");
            Mask w = script[idx++];
            bool wlegal = false;
            for (auto& [host, c] : wcands) { (void)host; wlegal |= (c == w); }
            if (!wlegal) diagnose(inner, true, w, pending.back());
            q = q.with_set(w);
            trace.push_back({w, inner.k, t, true});
            pending.push_back(w);
        }
        if (committed) k = 3;
        // On abandonment k stays put, as the algorithm's reset prescribes.
    }
    if (idx != script.size())
        throw IllegalChoice("script has " + std::to_string(script.size() - idx) +
                            " unconsumed entries after termination");

    ExtensionResult res;
    res.output = std::move(r);
    res.trace = std::move(trace);
    res.geometric = satisfies_M(res.output);
    return res;
}

/// The full pipeline for a semimodular lattice: minimal standard form, its
/// representation, exhaustive enumeration, the condition-(M) filter, and the
/// minimum-size classes. Results carry the embedding of L; the atom-count
/// and length guarantees are re-verified on every result.
struct BestResult {
    StandardForm form;
    SetFamily sp;
    std::vector<Mask> embedding;            // L element -> member of sp
    EnumerationReport enumeration;
    std::vector<ExtensionResult> best;      // minimum-size members of the filtered set
    int filtered_count = 0;                 // |outputs satisfying (M)|
};

inline BestResult best_extensions(const Lattice& l, const EngineOptions& opts = {}) {
    if (!l.is_semimodular()) throw NotSemimodular("input lattice is not semimodular");

    BestResult br;
    br.form = minimal_standard_form(l);
    Representation rep = represent(br.form.result);
    br.sp = rep.family;
    for (int x = 0; x < l.size(); ++x) br.embedding.push_back(rep.atom_set[x]);

    SetFamily t_family(br.sp.universe(), br.embedding);
    br.enumeration = enumerate_outputs(br.sp, family_stabilizer(t_family), opts);
    if (br.enumeration.truncated)
        throw BudgetExceeded("enumeration budget exhausted before completing the search");

    int best_size = -1;
    for (const auto& res : br.enumeration.outputs) {
        if (!res.geometric) continue;
        ++br.filtered_count;
        if (best_size < 0 || res.output.size() < best_size) best_size = res.output.size();
    }
    for (const auto& res : br.enumeration.outputs) {
        if (!res.geometric || res.output.size() != best_size) continue;
        ExtensionResult out = res;
        out.embedding = br.embedding;
        br.best.push_back(std::move(out));
    }

    std::vector<int> ji = l.join_irreducibles();
    for (const auto& res : br.best) {
        if ((int)res.output.family_atoms().size() != (int)ji.size())
            throw Error("best extension atom count disagrees with |J(L)|");
        if (res.output.length() != l.length())
            throw Error("best extension length disagrees with l(L)");
        if (opts.checked && !res.output.to_lattice().is_geometric())
            throw Error("condition (M) and geometricity disagree on a best output");
    }
    return br;
}

} // namespace latt
