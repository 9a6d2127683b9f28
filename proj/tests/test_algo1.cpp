#include <doctest.h>

#include "test_support.hpp"

using namespace latt;
using namespace latt::test;

namespace {

EngineOptions strict_opts() {
    EngineOptions o;
    o.checked = true;
    o.check_i1_both_routes = true;
    return o;
}

std::vector<Mask> candidate_sets(const SearchState& st) {
    std::vector<Mask> out;
    for (auto& [host, u] : candidate_insertions(st, false)) {
        (void)host;
        out.push_back(u);
    }
    std::sort(out.begin(), out.end(), mask_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

TEST_CASE("step-1 candidates on s10 at k=3 include the scripted choices") {
    SetFamily s10 = fixture_family("fix_s10.json");
    SearchState st = SearchState::initial(s10, 3);
    auto cands = candidate_sets(st);

    CHECK(std::count(cands.begin(), cands.end(), mask_of({1, 2, 4})) == 1);
    CHECK(std::count(cands.begin(), cands.end(), mask_of({1, 2, 4, 5})) == 1);
    CHECK(std::count(cands.begin(), cands.end(), mask_of({1, 3})) == 0);   // member already
    // every candidate avoids label 3: any pair {3,x} is a member, so (i2) bites
    for (Mask u : cands) CHECK(!has_label(u, 3));
    // exactly the >=2-subsets of {1,2,4,5}
    CHECK(cands.size() == 11);
}

TEST_CASE("step-1 candidates after inserting {1,2,4}: {1,5} is admissible") {
    SetFamily f11 = fixture_family("fix_fam11.json");
    SearchState st = SearchState::initial(f11, 3);
    auto cands = candidate_sets(st);
    CHECK(std::count(cands.begin(), cands.end(), mask_of({1, 5})) == 1);
    CHECK(std::count(cands.begin(), cands.end(), mask_of({2, 5})) == 1);
    CHECK(std::count(cands.begin(), cands.end(), mask_of({4, 5})) == 1);
    // {1,2} is now inside an independent set of {1,2,4}: (i2) rejects it
    CHECK(std::count(cands.begin(), cands.end(), mask_of({1, 2})) == 0);
}

TEST_CASE("scripted replay: four pair insertions reproduce fam14") {
    SetFamily s10 = fixture_family("fix_s10.json");
    std::vector<Mask> script{mask_of({1, 2, 4}), mask_of({1, 5}), mask_of({2, 5}),
                             mask_of({4, 5})};
    ExtensionResult res = run_deterministic(s10, script, strict_opts());
    CHECK(res.output == fixture_family("fix_fam14.json"));
    CHECK(res.output.size() == 15);
    CHECK(res.geometric);
    CHECK(res.trace.size() == 4);
    for (const auto& e : res.trace) {
        CHECK(e.k == 3);
        CHECK(!e.step3);
    }
}

TEST_CASE("scripted replay: {1,2,4,5} alone reproduces fam16") {
    SetFamily s10 = fixture_family("fix_s10.json");
    ExtensionResult res = run_deterministic(s10, {mask_of({1, 2, 4, 5})}, strict_opts());
    CHECK(res.output == fixture_family("fix_fam16.json"));
    CHECK(res.output.size() == 12);
    CHECK(res.geometric);
}

TEST_CASE("empty script on a length-2 representation returns it unchanged") {
    SetFamily b2 = set_representation(make_boolean(2));
    ExtensionResult res = run_deterministic(b2, {});
    CHECK(res.output == b2);
    CHECK(res.geometric);
}

TEST_CASE("illegal scripted choices are rejected with the failed condition") {
    SetFamily s10 = fixture_family("fix_s10.json");
    CHECK_THROWS_AS(run_deterministic(s10, {mask_of({1, 3})}), IllegalChoice);
    CHECK_THROWS_AS(run_deterministic(s10, {mask_of({1, 2, 3})}), IllegalChoice);
    CHECK_THROWS_AS(run_deterministic(s10, {}), IllegalChoice);   // candidates demand a choice
    CHECK_THROWS_AS(
        run_deterministic(s10, {mask_of({1, 2, 4}), mask_of({1, 5}), mask_of({2, 5}),
                                mask_of({4, 5}), mask_of({1, 2})}),
        IllegalChoice);   // unconsumed / no candidates left
    try {
        run_deterministic(s10, {mask_of({1, 2, 3})});
    } catch (const IllegalChoice& e) {
        CHECK(std::string(e.what()).find("(i2)") != std::string::npos);
    }
}

TEST_CASE("enumeration over S10 contains FAM14 and FAM16 classes") {
    SetFamily s10 = fixture_family("fix_s10.json");
    auto stab = family_stabilizer(fixture_family("fix_t10.json"));
    EnumerationReport rep = enumerate_outputs(s10, stab, strict_opts());
    CHECK(!rep.truncated);

    bool has14 = false, has16 = false;
    IndependentFamily ind_sp = independent_function(s10);
    for (const auto& res : rep.outputs) {
        has14 |= families_isomorphic(res.output, fixture_family("fix_fam14.json"));
        has16 |= families_isomorphic(res.output, fixture_family("fix_fam16.json"));
        // heights of S_P members survive in every output
        for (Mask x : s10.sets()) CHECK(res.output.height_of(x) == s10.height_of(x));
        // sigma persistence: independent sets of S_P members stay independent
        IndependentFamily ind_q = independent_function(res.output);
        for (int i = 0; i < s10.size(); ++i) {
            const auto& in_q = ind_q.of(res.output, s10.at(i));
            for (Mask sigma : ind_sp.per_member[i])
                CHECK(std::count(in_q.begin(), in_q.end(), sigma) == 1);
        }
        // same-level members never absorb each other's independent sets
        for (int i = 0; i < res.output.size(); ++i)
            for (int j = 0; j < res.output.size(); ++j) {
                if (i == j || res.output.heights()[i] != res.output.heights()[j]) continue;
                for (Mask s : ind_q.per_member[i]) CHECK(!subset_of(s, res.output.at(j)));
            }
        // every output embeds T10 cover-preservingly
        CHECK(check_embedding(fixture_family("fix_t10.json"), res.output).all());
    }
    CHECK(has14);
    CHECK(has16);
}

TEST_CASE("enumeration of a geometric input returns it alone") {
    SetFamily b2 = set_representation(make_boolean(2));
    EnumerationReport rep = enumerate_outputs(b2, all_label_perms(2));
    REQUIRE(rep.outputs.size() == 1);
    CHECK(rep.outputs[0].output == b2);
    CHECK(rep.outputs[0].geometric);
}

TEST_CASE("condition (M): FAM14 and FAM16 pass, S10 fails with the documented witness") {
    CHECK(satisfies_M(fixture_family("fix_fam14.json")));
    CHECK(satisfies_M(fixture_family("fix_fam16.json")));
    MReport rep = check_condition_m(fixture_family("fix_s10.json"));
    CHECK(!rep.ok);
    CHECK(rep.witness_set == mask_of({1}));
    CHECK(rep.witness_atom == mask_of({2}));
}

TEST_CASE("budget exhaustion reports truncation") {
    SetFamily s10 = fixture_family("fix_s10.json");
    EngineOptions tiny;
    tiny.max_nodes = 3;
    EnumerationReport rep = enumerate_outputs(s10, family_stabilizer(s10), tiny);
    CHECK(rep.truncated);
    Lattice l7 = fixture_lattice("fix_l7.json");
    CHECK_THROWS_AS(best_extensions(l7, tiny), BudgetExceeded);
}

TEST_CASE("best extensions of L7: one class, 12 members, FAM16") {
    Lattice l7 = fixture_lattice("fix_l7.json");
    BestResult br = best_extensions(l7, strict_opts());
    REQUIRE(br.best.size() == 1);
    const SetFamily& g = br.best[0].output;
    CHECK(g.size() == 12);
    CHECK((int)g.family_atoms().size() == 5);
    CHECK(g.length() == 3);
    CHECK(families_isomorphic(g, fixture_family("fix_fam16.json")));
    CHECK(g.to_lattice().is_geometric());
    // embedding covers all of L7 and lands inside the output
    for (Mask m : br.best[0].embedding) CHECK(g.contains(m));
}

TEST_CASE("best extension of B2 is B2 itself") {
    BestResult br = best_extensions(make_boolean(2));
    REQUIRE(br.best.size() == 1);
    CHECK(br.best[0].output == boolean_family(2));
}

TEST_CASE("degenerate inputs: one element and one edge") {
    BestResult one = best_extensions(Lattice::build(1, {}));
    REQUIRE(one.best.size() == 1);
    CHECK(one.best[0].output.size() == 1);
    CHECK(one.best[0].output.length() == 0);

    BestResult two = best_extensions(make_chain(1));
    REQUIRE(two.best.size() == 1);
    CHECK(two.best[0].output.size() == 2);
}

TEST_CASE("best extension of fix_l5 has 4 atoms and length 4 (B4)") {
    Lattice l5 = fixture_lattice("fix_l5.json");
    BestResult br = best_extensions(l5, strict_opts());
    REQUIRE(!br.best.empty());
    for (const auto& res : br.best) {
        CHECK((int)res.output.family_atoms().size() == 4);
        CHECK(res.output.length() == 4);
    }
    CHECK(br.best[0].output.size() == 16);
    CHECK(families_isomorphic(br.best[0].output, boolean_family(4)));
    // every enumerated output keeps the stats
    for (const auto& res : br.enumeration.outputs) {
        CHECK(res.output.length() == 4);
        CHECK((int)res.output.family_atoms().size() == 4);
    }
}

TEST_CASE("non-semimodular input is refused") {
    CHECK_THROWS_AS(best_extensions(fixture_lattice("fix_n5.json")), NotSemimodular);
}

TEST_CASE("a pending chain completes: {3,4,5} lands short and {4,5} heals it") {
    // 0 < a < b; b < c,d,e; c,d,e < 1. The representation has pairs {3,4},
    // {3,5},{4,5} outside every height-3 member, so they are only reachable
    // through a Step-3 chain below a freshly inserted triple.
    Lattice l = Lattice::build(
        7, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}});
    SetFamily sp = set_representation(minimal_standard_form(l).result);

    std::vector<Mask> script{
        mask_of({2, 3}), mask_of({2, 4}), mask_of({2, 5}), mask_of({1, 3}),
        mask_of({1, 4}), mask_of({1, 5}), mask_of({3, 4, 5}), mask_of({4, 5}),
        mask_of({3, 4}), mask_of({3, 5}), mask_of({2, 3, 4}), mask_of({2, 3, 5}),
        mask_of({2, 4, 5}), mask_of({1, 3, 4}), mask_of({1, 3, 5}), mask_of({1, 4, 5})};
    ExtensionResult res = run_deterministic(sp, script, strict_opts());
    CHECK(res.output.size() == 27);
    CHECK(res.geometric);
    CHECK(res.output.length() == 4);

    bool chained = false;
    for (const auto& e : res.trace)
        if (e.step3) {
            chained = true;
            CHECK(e.set == mask_of({4, 5}));
            CHECK(e.t == 4);
        }
    CHECK(chained);
    // heights after the commit: the chain's sets sit at their levels
    CHECK(res.output.height_of(mask_of({4, 5})) == 2);
    CHECK(res.output.height_of(mask_of({3, 4, 5})) == 3);

    // step-3 candidates mid-chain, evaluated against the committed family
    SetFamily committed = sp;
    for (std::size_t i = 0; i < 6; ++i) committed = committed.with_set(script[i]);
    SearchState mid;
    mid.committed = committed;
    mid.current = committed.with_set(mask_of({3, 4, 5}));
    mid.k = 4;
    mid.t = 4;
    mid.pending = {mask_of({3, 4, 5})};
    auto ws = candidate_insertions(mid, /*step3=*/true);
    REQUIRE(ws.size() == 3);
    CHECK(ws[0].second == mask_of({3, 4}));
    CHECK(ws[1].second == mask_of({3, 5}));
    CHECK(ws[2].second == mask_of({4, 5}));

    // a dead-ending choice ({4,5} straight at k=4) discards its pending set
    // and the run resumes; picking the triple afterwards still succeeds
    std::vector<Mask> detour = script;
    detour.insert(detour.begin() + 6, mask_of({4, 5}));
    ExtensionResult res2 = run_deterministic(sp, detour, strict_opts());
    CHECK(res2.output == res.output);
}
