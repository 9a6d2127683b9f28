#include <doctest.h>

#include "test_support.hpp"

using namespace latt;
using namespace latt::test;

TEST_CASE("independent function on M3: J(1) = {ab, ac, bc}") {
    SetFamily m3 = set_representation(fixture_lattice("fix_m3.json"));
    IndependentFamily ind = independent_function(m3);
    std::vector<Mask> expect{mask_of({1, 2}), mask_of({1, 3}), mask_of({2, 3})};
    CHECK(ind.of(m3, m3.top_set()) == expect);
    CHECK(ind.of(m3, 0) == std::vector<Mask>{0});
}

TEST_CASE("independent function: atoms get their own singleton") {
    SetFamily s10 = fixture_family("fix_s10.json");
    IndependentFamily ind = independent_function(s10);
    for (Mask a : s10.family_atoms()) CHECK(ind.of(s10, a) == std::vector<Mask>{a});
}

TEST_CASE("independent function on FAM14's member {1,2,4}") {
    SetFamily f14 = fixture_family("fix_fam14.json");
    IndependentFamily ind = independent_function(f14);
    std::vector<Mask> expect{mask_of({1, 2}), mask_of({1, 4}), mask_of({2, 4})};
    CHECK(ind.of(f14, mask_of({1, 2, 4})) == expect);
}

TEST_CASE("sigma sizes equal heights; unions cover A(x)") {
    for (const char* name : {"fix_s10.json", "fix_fam14.json", "fix_fam16.json",
                             "fix_s6.json", "fix_s7.json"}) {
        SetFamily f = fixture_family(name);
        IndependentFamily ind = independent_function(f);
        for (int i = 0; i < f.size(); ++i) {
            Mask atoms_below = 0;
            for (Mask a : f.family_atoms_below(f.at(i))) atoms_below |= a;
            Mask uni = 0;
            for (Mask s : ind.per_member[i]) {
                CHECK(card(s) == f.heights()[i]);
                CHECK(subset_of(s, atoms_below));
                uni |= s;
            }
            CHECK(uni == atoms_below);
        }
    }
}

TEST_CASE("same-level members never contain each other's independent sets") {
    for (const char* name : {"fix_s10.json", "fix_fam14.json", "fix_fam16.json"}) {
        SetFamily f = fixture_family(name);
        IndependentFamily ind = independent_function(f);
        for (int i = 0; i < f.size(); ++i)
            for (int j = 0; j < f.size(); ++j) {
                if (i == j || f.heights()[i] != f.heights()[j]) continue;
                for (Mask s : ind.per_member[i]) CHECK(!subset_of(s, f.at(j)));
            }
    }
}

TEST_CASE("levels: varphi and phi on S10") {
    SetFamily s10 = fixture_family("fix_s10.json");
    LevelMaps lm = levels(s10);
    CHECK(lm.varphi[0] == std::vector<Mask>{0});
    std::vector<Mask> pairs{mask_of({1, 3}), mask_of({2, 3}), mask_of({3, 4}),
                            mask_of({3, 5})};
    CHECK(lm.varphi[2] == pairs);
    CHECK(lm.phi[2] == pairs);   // each pair is its own independent set
    CHECK(lm.varphi[3] == std::vector<Mask>{s10.top_set()});
}
