#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qflow/relfilter.hpp"

using namespace qflow;

namespace {

std::vector<std::vector<int>> all_functions(int domain, int codomain) {
    std::vector<std::vector<int>> out;
    long count = 1;
    for (int i = 0; i < domain; ++i) {
        count *= codomain;
    }
    for (long code = 0; code < count; ++code) {
        std::vector<int> fn(domain);
        long c = code;
        for (int i = 0; i < domain; ++i) {
            fn[i] = static_cast<int>(c % codomain);
            c /= codomain;
        }
        out.push_back(fn);
    }
    return out;
}

} // namespace

TEST_CASE("full relation has every triple") {
    TripleRelation rel = TripleRelation::full({2}, {3}, {2});
    CHECK(rel.members.size() == 12);
    rel.validate();
}

TEST_CASE("validation rejects out-of-range members") {
    TripleRelation rel = TripleRelation::full({2}, {2}, {2});
    rel.members.insert({2, 0, 0});
    CHECK_THROWS_AS(rel.validate(), RelationError);
}

TEST_CASE("graph filter keeps exactly the graph pairs") {
    TripleRelation rel = TripleRelation::full({2}, {2}, {2});
    GraphFilter f{FilterCoords::Pair12, {1, 0}}; // x -> 1-x
    TripleRelation out = filter_apply(rel, f);
    CHECK(out.members.size() == 4);
    for (const Triple& t : out.members) {
        CHECK(t[1] == 1 - t[0]);
    }
}

TEST_CASE("filter on the (2,3) coordinates") {
    TripleRelation rel = TripleRelation::full({2}, {2}, {3});
    GraphFilter g{FilterCoords::Pair23, {2, 0}};
    TripleRelation out = filter_apply(rel, g);
    CHECK(out.members.size() == 4);
    for (const Triple& t : out.members) {
        CHECK(t[2] == (t[1] == 0 ? 2 : 0));
    }
}

TEST_CASE("filter validation") {
    TripleRelation rel = TripleRelation::full({2}, {2}, {2});
    GraphFilter partial{FilterCoords::Pair12, {0}};
    CHECK_THROWS_AS(partial.validate(rel), RelationError);
    GraphFilter out_of_range{FilterCoords::Pair12, {0, 2}};
    CHECK_THROWS_AS(out_of_range.validate(rel), RelationError);
}

TEST_CASE("filters on disjoint coordinate pairs commute exhaustively") {
    // Every (f, g) pair over sets of size up to 4 in the slots they touch.
    for (int n1 : {2, 3}) {
        for (int n2 : {2, 3, 4}) {
            for (int n3 : {2, 3}) {
                TripleRelation rel =
                    TripleRelation::full({n1}, {n2}, {n3});
                for (const auto& f : all_functions(n1, n2)) {
                    for (const auto& g : all_functions(n2, n3)) {
                        GraphFilter ff{FilterCoords::Pair12, f};
                        GraphFilter gf{FilterCoords::Pair23, g};
                        CHECK(filters_commute_check(rel, ff, gf));
                    }
                }
            }
        }
    }
}

TEST_CASE("relational composition reproduces the function chain") {
    std::array<FiniteSet, 3> sets{FiniteSet{3}, FiniteSet{4}, FiniteSet{2}};
    std::vector<int> f = {2, 0, 3};
    std::vector<int> g = {1, 0, 0, 1};
    std::set<std::array<int, 2>> y_full;
    for (int b = 0; b < 4; ++b) {
        for (int c = 0; c < 2; ++c) {
            y_full.insert({b, c});
        }
    }
    for (int x = 0; x < 3; ++x) {
        RelationalCoeckeResult res = relational_coecke(x, y_full, sets, f, g);
        REQUIRE(res.predicted.has_value());
        CHECK((*res.predicted)[0] == x);
        CHECK((*res.predicted)[1] == f[x]);
        CHECK((*res.predicted)[2] == g[f[x]]);
        CHECK(res.matches_prediction);
        CHECK(res.output == std::set<Triple>{*res.predicted});
    }
}

TEST_CASE("empty side set yields an empty but consistent output") {
    std::array<FiniteSet, 3> sets{FiniteSet{2}, FiniteSet{2}, FiniteSet{2}};
    std::vector<int> id = {0, 1};
    RelationalCoeckeResult res = relational_coecke(0, {}, sets, id, id);
    CHECK(res.output.empty());
    CHECK(res.matches_prediction);
}

TEST_CASE("side set missing the needed pair gives an empty output") {
    std::array<FiniteSet, 3> sets{FiniteSet{2}, FiniteSet{2}, FiniteSet{2}};
    std::vector<int> id = {0, 1};
    // Y holds only pairs whose second slot disagrees with g(f(x)).
    std::set<std::array<int, 2>> y = {{0, 1}, {1, 0}};
    RelationalCoeckeResult res = relational_coecke(0, y, sets, id, id);
    CHECK(res.output.empty());
    CHECK(res.matches_prediction);
}

TEST_CASE("relational composition over every small function pair") {
    std::array<FiniteSet, 3> sets{FiniteSet{2}, FiniteSet{3}, FiniteSet{2}};
    std::set<std::array<int, 2>> y_full;
    for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 2; ++c) {
            y_full.insert({b, c});
        }
    }
    for (const auto& f : all_functions(2, 3)) {
        for (const auto& g : all_functions(3, 2)) {
            for (int x = 0; x < 2; ++x) {
                RelationalCoeckeResult res = relational_coecke(x, y_full, sets, f, g);
                CHECK(res.matches_prediction);
            }
        }
    }
}
