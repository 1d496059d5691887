#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eppa/typerealize.hpp"
#include "support.hpp"

using namespace eppa;

namespace {

Graph path3() {
    Graph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(std::to_string(v));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

// independent recount of exact-neighbourhood classes
std::map<std::vector<Vertex>, long long> exact_classes(const Graph& C, int n) {
    std::map<std::vector<Vertex>, long long> out;
    for (Vertex c = 0; c < C.size(); ++c) {
        std::vector<Vertex> nb;
        for (Vertex a : C.neighbors(c))
            if (a < n) nb.push_back(a);
        out[nb]++;
    }
    return out;
}

}  // namespace

TEST_CASE("base realization on the empty graph") {
    auto tr = realize_types_base(Graph{});
    CHECK(tr.C.size() == 0);
    CHECK(tr.c0 == 0);
}

TEST_CASE("base realization on a single vertex") {
    Graph g;
    g.add_vertex("v");
    auto tr = realize_types_base(g);
    CHECK(tr.c0 == 1);
    CHECK(tr.C.size() == 2);
    CHECK(tr.C.adjacent(0, 1));  // the added point is adjacent to v
}

TEST_CASE("base realization on the path 0-1-2") {
    Graph g = path3();
    auto tr = realize_types_base(g);
    CHECK(tr.c0 == 2);
    CHECK(tr.C.size() == 16);
    // independent recount: all 8 classes have exactly two points
    auto classes = exact_classes(tr.C, 3);
    CHECK(classes.size() == 8);
    for (const auto& [key, cnt] : classes) CHECK(cnt == 2);
}

TEST_CASE("base counts hold on random graphs") {
    test::Rng rng(61);
    for (int round = 0; round < 40; ++round) {
        Graph g = test::random_graph(rng, 1 + static_cast<int>(rng() % 4));
        auto tr = realize_types_base(g);
        auto classes = exact_classes(tr.C, g.size());
        CHECK(static_cast<int>(classes.size()) ==
              (tr.c0 > 0 ? 1 << g.size() : 1));
        for (const auto& [key, cnt] : classes) CHECK(cnt == tr.c0);
    }
}

TEST_CASE("base symmetries: identity map gives a valid (identity) extension") {
    Graph g = path3();
    auto tr = realize_types_base(g);
    PartialPermorphism ident = PartialPermorphism::empty(3, 0);
    for (int v = 0; v < 3; ++v) ident.map[v] = v;
    auto ext = extend_to_symmetries_base(tr, {ident});
    for (Vertex c = 0; c < tr.C.size(); ++c) CHECK(ext.h[0][c] == c);
}

TEST_CASE("base symmetries: a total automorphism is reproduced on A") {
    Graph g = path3();
    PartialPermorphism p = PartialPermorphism::empty(3, 0);
    p.map = {2, 1, 0};  // reflect the path
    auto tr = realize_types_base(g);
    auto ext = extend_to_symmetries_base(tr, {p});
    for (Vertex a = 0; a < 3; ++a) CHECK(ext.h[0][a] == p.apply(a));
    // claim b holds pointwise
    for (Vertex a = 0; a < 3; ++a)
        for (Vertex b = 0; b < tr.C.size(); ++b)
            CHECK(tr.C.adjacent(a, b) == tr.C.adjacent(p.apply(a), ext.h[0][b]));
}

TEST_CASE("base symmetries: two isolated vertices, p = {0 -> 1}") {
    Graph g;
    g.add_vertex("0");
    g.add_vertex("1");
    auto tr = realize_types_base(g);
    CHECK(tr.c0 == 2);
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    p.map[0] = 1;
    auto ext = extend_to_symmetries_base(tr, {p});
    // classes over D = {0}: sizes c_0 * 2^{|A - D|} = 4 on both sides
    long long empty_class = 0, zero_class = 0;
    for (Vertex c = 0; c < tr.C.size(); ++c) {
        if (tr.C.adjacent(0, c))
            ++zero_class;
        else
            ++empty_class;
    }
    CHECK(empty_class == 4);
    CHECK(zero_class == 4);
    // h maps N_{D}-classes onto N_{R}-classes
    for (Vertex c = 0; c < tr.C.size(); ++c)
        CHECK(tr.C.adjacent(0, c) == tr.C.adjacent(1, ext.h[0][c]));
}

TEST_CASE("inductive realization on the empty graph") {
    ColoredGraph A;
    A.table.add_palette();
    A.table.add_color("V", 1);
    auto tr = realize_types_inductive(A, 1, CriticalColoringSet::explicit_set(1, {}),
                                      CardinalityLedger{}, Caps{}, "t_", "test");
    CHECK(tr.C.size() == 0);
}

TEST_CASE("inductive realization on a single uncoloured vertex") {
    Graph g;
    g.add_vertex("v");
    ColoredGraph A = test::wrap_graph(g);
    auto tr = realize_types_inductive(A, 1, CriticalColoringSet::trivial(),
                                      CardinalityLedger{}, Caps{}, "t_", "test");
    // (emptyset, emptyset) is already realised once by v itself
    CHECK(tr.C.size() == 1);
    CHECK(tr.c[0] == 1);
    CHECK(tr.c[1] == 0);
}

TEST_CASE("inductive realization: stage arithmetic on the worked edge") {
    // single edge at inner_m = 2 (public m = 3, r = 0): realisable sets are
    // the independent sets; counts come out uniform without any additions
    Graph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_edge(0, 1);
    ColoredGraph A = test::wrap_graph(g);
    auto tr = realize_types_inductive(A, 2, CriticalColoringSet::trivial(),
                                      CardinalityLedger{}, Caps{}, "t_", "test");
    CHECK(tr.C.size() == 2);
    CHECK(tr.c == std::vector<long long>{2, 1, 0});
}

TEST_CASE("inductive counts audited on random coloured graphs") {
    test::Rng rng(67);
    for (int round = 0; round < 25; ++round) {
        const int n = 1 + static_cast<int>(rng() % 3);
        ColoredGraph A;
        A.table.add_palette();
        Color v0 = A.table.add_color("V", 1);
        for (int v = 0; v < n; ++v) {
            A.add_vertex(std::to_string(v));
            if (rng() % 2) A.color_of[v] = {v0};
        }
        for (int u = 0; u < n; ++u)
            for (int w = u + 1; w < n; ++w)
                if (rng() % 2) A.graph.add_edge(u, w);
        CriticalColoringSet crit = CriticalColoringSet::explicit_set(1, {{v0}});
        // need A to be U_c-K_{m+1}-free for the realize precondition
        const int inner = 1;
        if (find_critical_clique(A, inner + 1, crit)) continue;
        auto tr = realize_types_inductive(A, inner, crit, CardinalityLedger{},
                                          Caps{}, "t_", "test");
        audit_inductive_counts(A, tr);  // throws on any miscount
        CHECK(!find_critical_clique(tr.C, inner + 1, crit));
    }
}

TEST_CASE("colored symmetries: class sizes match and h is equivariant") {
    test::Rng rng(71);
    int built = 0;
    for (int round = 0; round < 40 && built < 15; ++round) {
        const int n = 2 + static_cast<int>(rng() % 2);
        Graph g = test::random_km_free_graph(rng, n, 2 + static_cast<int>(rng() % 2));
        ColoredGraph A = test::wrap_graph(g);
        PartialPermorphism p = test::random_partial_iso(rng, g, 2);
        const int inner = 1 + static_cast<int>(rng() % 2);
        CriticalColoringSet crit = CriticalColoringSet::trivial();
        if (find_critical_clique(A, inner + 1, crit)) continue;
        auto tr = realize_types_inductive(A, inner, crit, CardinalityLedger{},
                                          Caps{}, "t_", "test");
        auto ext = extend_to_symmetries_colored(tr, {p});
        ++built;
        CHECK(test::class_sizes_match(tr.C, n, p));
        for (Vertex a = 0; a < n; ++a) {
            if (!p.defined(a)) continue;
            for (Vertex b = 0; b < tr.C.size(); ++b)
                CHECK(tr.C.graph.adjacent(a, b) ==
                      tr.C.graph.adjacent(p.apply(a), ext.h[0][b]));
        }
    }
    CHECK(built > 0);
}

TEST_CASE("non-realisable types have empty classes on both sides") {
    // edge whose endpoints share the critical colour: (D_0 = {0,1}, U_0 = {V})
    // is not realisable at inner_m = 2, so neither side realises it
    ColoredGraph A;
    A.table.add_palette();
    Color v = A.table.add_color("V", 1);
    A.add_vertex("0");
    A.add_vertex("1");
    A.graph.add_edge(0, 1);
    A.color_of[0] = {v};
    A.color_of[1] = {v};
    CriticalColoringSet crit = CriticalColoringSet::explicit_set(1, {{v}});
    // A itself is U_c-K_3-free (no triangle), realise at inner_m = 2
    auto tr = realize_types_inductive(A, 2, crit, CardinalityLedger{}, Caps{},
                                      "t_", "test");
    CHECK(!is_realisable_graph(tr.C, {0, 1}, {v}, 2, crit));
    long long count = 0;
    for (Vertex c = 0; c < tr.C.size(); ++c)
        if (tr.C.graph.adjacent(0, c) && tr.C.graph.adjacent(1, c) &&
            tr.C.colors(c) == ColorSet{v})
            ++count;
    CHECK(count == 0);
}

TEST_CASE("structure cap aborts cleanly") {
    Graph g = path3();
    Caps caps;
    caps.structure_cap = 4;
    CHECK_THROWS_AS(realize_types_base(g, "t1_", caps), StructureCapError);
}

TEST_CASE("digraph base realization: single arc") {
    Digraph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_arc(0, 1);
    auto tr = realize_types_digraph_base(g);
    CHECK(tr.c0 == 1);
    CHECK(tr.C.size() == 9);  // 3^2 exact (out, in) classes, one point each
    audit_digraph_base_counts(g, tr);
}

TEST_CASE("digraph base symmetries: both arc directions respected") {
    Digraph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_arc(0, 1);
    auto tr = realize_types_digraph_base(g);
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    p.map[0] = 1;
    auto ext = extend_to_symmetries_digraph_base(tr, {p});
    for (Vertex b = 0; b < tr.C.size(); ++b) {
        CHECK(tr.C.arc(0, b) == tr.C.arc(1, ext.h[0][b]));
        CHECK(tr.C.arc(b, 0) == tr.C.arc(ext.h[0][b], 1));
    }
}

TEST_CASE("digraph inductive realization: single arc against 3-tournaments") {
    Digraph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_arc(0, 1);
    ColoredDigraph A = test::wrap_digraph(g);
    std::vector<ForbiddenTournament> forbidden{
        {test::transitive_triangle(), TupleFamily::universal(3)},
        {test::cyclic_triangle(), TupleFamily::universal(3)}};
    auto tr = realize_types_digraph(A, forbidden, Caps{}, "t_", "test");
    // every size-<=1 type is realisable (the reduced tournaments have 2 points)
    for (Vertex a = 0; a < 2; ++a) {
        CHECK(is_realisable_digraph(A, {a}, {}, {}, forbidden));
        CHECK(is_realisable_digraph(A, {}, {a}, {}, forbidden));
    }
    audit_digraph_counts(A, tr);
    for (const auto& ft : forbidden)
        CHECK(!find_critical_copy_anchored(tr.C, 2, ft.tournament, ft.family));
}

TEST_CASE("digraph symmetries: colour equivariance on a lifted-style instance") {
    test::Rng rng(73);
    for (int round = 0; round < 12; ++round) {
        const int n = 2;
        Digraph g = test::random_digraph(rng, n, 0.7);
        ColoredDigraph A = test::wrap_digraph(g);
        Color c0 = A.add_color("c0");
        Color c1 = A.add_color("c1");
        (void)c1;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 2) A.color_of[v] = {c0};
        PartialPermorphism p = PartialPermorphism::empty(n, 2);
        // only keep maps that are permorphisms of the coloured structure
        p = test::random_partial_iso(rng, g, 2);
        p.chi = ColorPermutation::identity(2);
        if (!permorphism_violations(A, p).empty()) continue;
        auto tr = realize_types_digraph(A, {}, Caps{}, "t_", "test");
        auto ext = extend_to_symmetries_digraph(tr, {p});
        for (Vertex b = 0; b < tr.C.size(); ++b)
            CHECK(p.chi.apply(tr.C.colors(b)) == tr.C.colors(ext.h[0][b]));
    }
}
