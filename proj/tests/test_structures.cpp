#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eppa/freeness.hpp"
#include "eppa/io.hpp"
#include "eppa/structures.hpp"
#include "support.hpp"

using namespace eppa;

TEST_CASE("graph invariants") {
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge(0, 1);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));
    CHECK(g.validate().empty());
    g.add_edge(0, 0);
    auto bad = g.validate();
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("irreflexivity") != std::string::npos);
}

TEST_CASE("digraph antisymmetry reported") {
    Digraph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_arc(0, 1);
    g.add_arc(1, 0);
    auto bad = g.validate();
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("antisymmetry") != std::string::npos);
}

TEST_CASE("validate_instance: single edge with 0->1 is admissible at m=3") {
    ColoredGraph A = test::wrap_graph([] {
        Graph g;
        g.add_vertex("0");
        g.add_vertex("1");
        g.add_edge(0, 1);
        return g;
    }());
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    p.map[0] = 1;
    FreenessConstraint c{CliqueFree{3, CriticalColoringSet::trivial()}};
    CHECK(validate_instance(A, {p}, c).admissible());
}

TEST_CASE("validate_instance: triangle is not K_3-free") {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(std::to_string(i));
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    FreenessConstraint c{CliqueFree{3, CriticalColoringSet::trivial()}};
    auto rep = validate_instance(test::wrap_graph(g), {}, c);
    REQUIRE(!rep.admissible());
    CHECK(rep.violations.front().find("not U_c-K_3-free") != std::string::npos);
}

TEST_CASE("validate_instance: double arc reports antisymmetry") {
    ColoredDigraph A;
    A.add_vertex("0");
    A.add_vertex("1");
    A.digraph.add_arc(0, 1);
    A.digraph.add_arc(1, 0);
    FreenessConstraint c{TournamentFree{{}}};
    auto rep = validate_instance(A, {}, c);
    REQUIRE(!rep.admissible());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("antisymmetry") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("non-permorphism maps are reported exhaustively") {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(std::to_string(i));
    g.add_edge(0, 1);
    ColoredGraph A = test::wrap_graph(g);
    PartialPermorphism p = PartialPermorphism::empty(3, 0);
    p.map[0] = 0;
    p.map[1] = 2;  // edge 0-1 maps to non-edge 0-2
    auto bad = permorphism_violations(A, p);
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("edge relation") != std::string::npos);
}

TEST_CASE("colour permutations form a group on random samples") {
    test::Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        const int n = 1 + static_cast<int>(rng() % 8);
        ColorPermutation a = ColorPermutation::identity(n);
        ColorPermutation b = ColorPermutation::identity(n);
        std::shuffle(a.map.begin(), a.map.end(), rng);
        std::shuffle(b.map.begin(), b.map.end(), rng);
        CHECK(a.then(b).is_permutation());
        CHECK(a.then(a.inverse()) == ColorPermutation::identity(n));
        CHECK(a.inverse().then(a) == ColorPermutation::identity(n));
        // associativity through a third permutation
        ColorPermutation c = ColorPermutation::identity(n);
        std::shuffle(c.map.begin(), c.map.end(), rng);
        CHECK(a.then(b).then(c) == a.then(b.then(c)));
    }
}

TEST_CASE("critical colouring sets: membership, products, invariance") {
    // two palettes of two colours each: {0,1}, {2,3}
    CriticalColoringSet s = CriticalColoringSet::explicit_set(2, {{0, 2}, {1, 3}});
    CHECK(s.contains({0, 2}));
    CHECK(!s.contains({0, 3}));
    CHECK(s.meets_product({{0, 1}, {2}}));
    CHECK(!s.meets_product({{1}, {2}}));
    ColorPermutation swap_both = ColorPermutation::identity(4);
    swap_both.map = {1, 0, 3, 2};
    CHECK(s.chi_invariant(swap_both));
    ColorPermutation swap_one = ColorPermutation::identity(4);
    swap_one.map = {1, 0, 2, 3};
    CHECK(!s.chi_invariant(swap_one));
}

TEST_CASE("lifted critical sets agree with their materialization") {
    // carrier: path x - y with colours; parent set over one palette
    ColoredGraph C;
    C.table.add_palette();
    Color v0 = C.table.add_color("V", 1);
    Color v1 = C.table.add_color("W", 1);
    C.add_vertex("x");
    C.add_vertex("y");
    C.graph.add_edge(0, 1);
    C.color_of[0] = {v0};
    C.color_of[1] = {v0, v1};
    auto parent = std::make_shared<CriticalColoringSet>(
        CriticalColoringSet::explicit_set(1, {{v0}, {v1}}));
    CriticalColoringSet lifted = CriticalColoringSet::lifted(
        parent, std::make_shared<ColoredGraph>(C), 2);
    auto mat = lifted.materialize(100);
    REQUIRE(mat.has_value());
    // expected: (V, U_x), (V, U_y), (W, U_y)
    CHECK(mat->size() == 3);
    for (const auto& t : *mat) CHECK(lifted.contains(t));
    CHECK(!lifted.contains({v1, 2}));  // y lacks nothing but x lacks W
    CHECK(lifted.contains({v1, 3}));
}

TEST_CASE("tuple families: universal, explicit, lifted") {
    TupleFamily uni = TupleFamily::universal(2);
    CHECK(uni.contains({{0}, {1}}));
    TupleFamily exp = TupleFamily::explicit_set(2, {{{0}, {1}}});
    CHECK(exp.contains({{0}, {1}}));
    CHECK(!exp.contains({{0}, {0}}));

    // carrier with one point c0, colours U(c0) = {}; parent = universal of
    // arity 2; lifted arity 1 with eps = (+)
    ColoredDigraph C;
    C.add_vertex("c0");
    auto parent = std::make_shared<TupleFamily>(TupleFamily::universal(2));
    TupleFamily lifted = TupleFamily::lifted(
        parent, std::make_shared<ColoredDigraph>(C), {+1}, 0, 0);
    CHECK(lifted.contains({{0}}));   // colour 0 = U_{c0}^+
    CHECK(!lifted.contains({{1}}));  // colour 1 = U_{c0}^-
}

TEST_CASE("designated colours: hypotheses checked against A") {
    ColoredGraph A;
    A.table.add_palette();
    Color red = A.table.add_color("red", 1);
    A.add_vertex("0");
    A.add_vertex("1");
    A.graph.add_edge(0, 1);
    A.color_of[1] = {red};  // neighbours of 0 are exactly the red points
    DesignatedColors d;
    d.entries[{0, 1}] = red;
    CHECK(d.violations(A, {}).empty());
    DesignatedColors wrong;
    wrong.entries[{1, 1}] = red;  // 1's neighbour 0 is not red
    CHECK(!wrong.violations(A, {}).empty());
}

TEST_CASE("instance round-trip through the serializer") {
    test::Rng rng(11);
    for (int round = 0; round < 30; ++round) {
        Instance inst;
        if (rng() % 2 == 0) {
            inst.is_digraph = false;
            Graph g = test::random_graph(rng, 1 + static_cast<int>(rng() % 4));
            inst.graph = test::wrap_graph(g);
            inst.maps.push_back(test::random_partial_iso(rng, g, 2));
            inst.constraint.value =
                CliqueFree{3, CriticalColoringSet::trivial()};
        } else {
            inst.is_digraph = true;
            Digraph g = test::random_digraph(rng, 1 + static_cast<int>(rng() % 4));
            inst.digraph = test::wrap_digraph(g);
            inst.maps.push_back(test::random_partial_iso(rng, g, 2));
            TournamentFree tf;
            ForbiddenTournament ft;
            ft.tournament = test::cyclic_triangle();
            ft.family = TupleFamily::universal(3);
            tf.forbidden.push_back(std::move(ft));
            inst.constraint.value = std::move(tf);
        }
        const std::string text = serialize_instance(inst);
        Instance back = parse_instance(text);
        CHECK(serialize_instance(back) == text);
        CHECK(back.is_digraph == inst.is_digraph);
        if (!inst.is_digraph) {
            CHECK(back.graph.graph.names() == inst.graph.graph.names());
            CHECK(back.graph.graph.edges() == inst.graph.graph.edges());
            CHECK(back.maps.size() == inst.maps.size());
            CHECK(back.maps[0].map == inst.maps[0].map);
        } else {
            CHECK(back.digraph.digraph.names() == inst.digraph.digraph.names());
            CHECK(back.digraph.digraph.arcs() == inst.digraph.digraph.arcs());
            CHECK(back.maps[0].map == inst.maps[0].map);
        }
    }
}

TEST_CASE("tournament validity") {
    CHECK(test::cyclic_triangle().valid());
    CHECK(test::transitive_triangle().valid());
    Tournament not_total;
    not_total.digraph.add_vertex("0");
    not_total.digraph.add_vertex("1");
    CHECK(!not_total.valid());
    FreenessConstraint c{TournamentFree{{ForbiddenTournament{
        not_total, TupleFamily::universal(2)}}}};
    auto bad = c.validate();
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("malformed tournament") != std::string::npos);
}
