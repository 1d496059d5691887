#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eppa/freeness.hpp"
#include "support.hpp"

using namespace eppa;

namespace {

Graph cycle(int n) {
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph complete(int n) {
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("K_3 in the triangle is the triangle") {
    auto w = find_critical_clique(test::wrap_graph(complete(3)), 3,
                                  CriticalColoringSet::trivial());
    REQUIRE(w.has_value());
    CHECK(w->vertices == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("the 5-cycle has no K_3") {
    Graph g = cycle(5);
    CHECK(!test::has_clique_bruteforce(g, 3));  // oracle agrees first
    CHECK(!find_critical_clique(test::wrap_graph(g), 3,
                                CriticalColoringSet::trivial()));
}

TEST_CASE("critical K_1 on a single coloured vertex") {
    ColoredGraph A;
    A.table.add_palette();
    Color v = A.table.add_color("V", 1);
    A.add_vertex("0");
    A.color_of[0] = {v};
    auto w = find_critical_clique(A, 1,
                                  CriticalColoringSet::explicit_set(1, {{v}}));
    REQUIRE(w.has_value());
    CHECK(w->vertices == std::vector<Vertex>{0});
    CHECK(w->coloring == std::vector<Color>{v});
}

TEST_CASE("witness answers agree with exhaustive enumeration on <= 5 vertices") {
    test::Rng rng(23);
    for (int round = 0; round < 120; ++round) {
        const int n = static_cast<int>(rng() % 6);
        Graph g = test::random_graph(rng, n);
        for (int m = 1; m <= 5; ++m) {
            auto w = find_clique(g, m);
            CHECK(w.has_value() == test::has_clique_bruteforce(g, m));
            if (w.has_value()) {
                for (std::size_t i = 0; i < w->vertices.size(); ++i)
                    for (std::size_t j = i + 1; j < w->vertices.size(); ++j)
                        CHECK(g.adjacent(w->vertices[i], w->vertices[j]));
            }
        }
    }
}

TEST_CASE("serial and parallel clique kernels agree") {
    test::Rng rng(29);
    for (int round = 0; round < 20; ++round) {
        Graph g = test::random_graph(rng, 70, 0.12);
        for (int m = 3; m <= 4; ++m) {
            auto a = find_clique(g, m, Exec::serial);
            auto b = find_clique(g, m, Exec::parallel);
            CHECK(a.has_value() == b.has_value());
            if (a && b) CHECK(a->vertices == b->vertices);
        }
    }
}

TEST_CASE("realisability: empty set is always realisable") {
    ColoredGraph A = test::wrap_graph(complete(2));
    CHECK(is_realisable_graph(A, {}, {}, 1, CriticalColoringSet::explicit_set(0, {})));
}

TEST_CASE("realisability: a critically coloured edge obstructs") {
    ColoredGraph A;
    A.table.add_palette();
    Color v = A.table.add_color("V", 1);
    A.add_vertex("a");
    A.add_vertex("b");
    A.graph.add_edge(0, 1);
    A.color_of[0] = {v};
    A.color_of[1] = {v};
    CriticalColoringSet crit = CriticalColoringSet::explicit_set(1, {{v}});
    CHECK(!is_realisable_graph(A, {0, 1}, {v}, 2, crit));
    CHECK(is_realisable_graph(A, {0}, {v}, 2, crit));   // no K_2 inside
    CHECK(is_realisable_graph(A, {0, 1}, {}, 2, crit));  // V not in U_0
}

TEST_CASE("realisability is monotone in the vertex set") {
    test::Rng rng(31);
    for (int round = 0; round < 60; ++round) {
        const int n = 1 + static_cast<int>(rng() % 4);
        ColoredGraph A;
        A.table.add_palette();
        Color v0 = A.table.add_color("V", 1);
        Color v1 = A.table.add_color("W", 1);
        for (int v = 0; v < n; ++v) {
            A.add_vertex(std::to_string(v));
            ColorSet cs;
            if (rng() % 2) cs.push_back(v0);
            if (rng() % 2) cs.push_back(v1);
            A.color_of[v] = cs;
        }
        for (int u = 0; u < n; ++u)
            for (int w = u + 1; w < n; ++w)
                if (rng() % 2) A.graph.add_edge(u, w);
        CriticalColoringSet crit =
            CriticalColoringSet::explicit_set(1, {{v0}, {v1}});
        std::vector<Vertex> A0;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) A0.push_back(v);
        ColorSet U0;
        if (rng() % 2) U0.push_back(v0);
        if (rng() % 2) U0.push_back(v1);
        const int m = 1 + static_cast<int>(rng() % 2);
        if (is_realisable_graph(A, A0, U0, m, crit)) {
            std::vector<Vertex> B0;
            for (Vertex v : A0)
                if (rng() % 2) B0.push_back(v);
            CHECK(is_realisable_graph(A, B0, U0, m, crit));
        }
    }
}

TEST_CASE("realisability transports along permorphisms") {
    // A: edge with swapped colours; p = transposition; chi swaps V, W
    ColoredGraph A;
    A.table.add_palette();
    Color v0 = A.table.add_color("V", 1);
    Color v1 = A.table.add_color("W", 1);
    A.add_vertex("0");
    A.add_vertex("1");
    A.graph.add_edge(0, 1);
    A.color_of[0] = {v0};
    A.color_of[1] = {v1};
    PartialPermorphism p = PartialPermorphism::empty(2, 2);
    p.map = {1, 0};
    p.chi.map = {v1, v0};
    REQUIRE(permorphism_violations(A, p).empty());
    CriticalColoringSet crit = CriticalColoringSet::explicit_set(1, {{v0}, {v1}});
    REQUIRE(crit.chi_invariant(p.chi));
    for (std::vector<Vertex> D0 : {std::vector<Vertex>{}, {0}, {1}, {0, 1}}) {
        for (ColorSet U0 : {ColorSet{}, {v0}, {v1}, {v0, v1}}) {
            std::vector<Vertex> D0p;
            for (Vertex a : D0) D0p.push_back(p.apply(a));
            std::sort(D0p.begin(), D0p.end());
            for (int m = 1; m <= 2; ++m)
                CHECK(is_realisable_graph(A, D0, U0, m, crit) ==
                      is_realisable_graph(A, D0p, p.chi.apply(U0), m, crit));
        }
    }
}

TEST_CASE("tournament copies: cyclic triangle embeds in the 3-cycle digraph") {
    Digraph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(std::to_string(v));
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 0);
    auto w = find_critical_tournament_copy(test::wrap_digraph(g),
                                           test::cyclic_triangle(),
                                           TupleFamily::universal(3));
    REQUIRE(w.has_value());
    CHECK(w->vertices.size() == 3);
}

TEST_CASE("the transitive triangle contains no cyclic tournament") {
    Digraph g = test::transitive_triangle().digraph;
    CHECK(!test::digraph_embeds_bruteforce(test::cyclic_triangle().digraph, g));
    CHECK(!find_critical_tournament_copy(test::wrap_digraph(g),
                                         test::cyclic_triangle(),
                                         TupleFamily::universal(3)));
}

TEST_CASE("a tournament larger than the digraph never embeds") {
    Digraph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_arc(0, 1);
    CHECK(!find_critical_tournament_copy(test::wrap_digraph(g),
                                         test::cyclic_triangle(),
                                         TupleFamily::universal(3)));
}

TEST_CASE("tournament search agrees with the embedding oracle") {
    test::Rng rng(37);
    for (int round = 0; round < 80; ++round) {
        Digraph g = test::random_digraph(rng, 1 + static_cast<int>(rng() % 5));
        for (const Tournament& t :
             {test::cyclic_triangle(), test::transitive_triangle()}) {
            const bool found = find_critical_tournament_copy(
                                   test::wrap_digraph(g), t,
                                   TupleFamily::universal(3))
                                   .has_value();
            CHECK(found == test::digraph_embeds_bruteforce(t.digraph, g));
        }
    }
}

TEST_CASE("digraph realisability: empty sides are realisable") {
    ColoredDigraph A = test::wrap_digraph(Digraph{});
    std::vector<ForbiddenTournament> forbidden{
        {test::cyclic_triangle(), TupleFamily::universal(3)}};
    CHECK(is_realisable_digraph(A, {}, {}, {}, forbidden));
}

TEST_CASE("digraph realisability: the cyclic split obstructs") {
    // T = cyclic triangle: T^+ = {t2}, T^- = {t3}, arc t2 -> t3.
    // A: arc a -> b; candidate with A0+ = {a}, A0- = {b} embeds T' iff aRb.
    Digraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_arc(0, 1);
    ColoredDigraph A = test::wrap_digraph(g);
    std::vector<ForbiddenTournament> forbidden{
        {test::cyclic_triangle(), TupleFamily::universal(3)}};
    CHECK(!is_realisable_digraph(A, {0}, {1}, {}, forbidden));
    CHECK(is_realisable_digraph(A, {1}, {0}, {}, forbidden));
    CHECK(is_realisable_digraph(A, {0, 1}, {}, {}, forbidden));
}

TEST_CASE("freeness of an extension matches realisable point types") {
    // for C >= A with new arcs only into A: anchored-critical-copy-freeness
    // is equivalent to every added point having a realisable type
    test::Rng rng(41);
    std::vector<ForbiddenTournament> forbidden{
        {test::cyclic_triangle(), TupleFamily::universal(3)},
        {test::transitive_triangle(), TupleFamily::universal(3)}};
    for (int round = 0; round < 60; ++round) {
        const int n = 1 + static_cast<int>(rng() % 3);
        Digraph base = test::random_digraph(rng, n);
        ColoredDigraph C = test::wrap_digraph(base);
        const int extra = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < extra; ++k) {
            Vertex x = C.add_vertex("x" + std::to_string(k));
            for (Vertex a = 0; a < n; ++a) {
                switch (rng() % 3) {
                    case 0: C.digraph.add_arc(x, a); break;
                    case 1: C.digraph.add_arc(a, x); break;
                    default: break;
                }
            }
        }
        bool all_realisable = true;
        for (Vertex c = n; c < C.size(); ++c) {
            std::vector<Vertex> plus, minus;
            for (Vertex a = 0; a < n; ++a) {
                if (C.digraph.arc(c, a)) plus.push_back(a);
                if (C.digraph.arc(a, c)) minus.push_back(a);
            }
            ColoredDigraph Aview = test::wrap_digraph(base);
            if (!is_realisable_digraph(Aview, plus, minus, C.colors(c), forbidden))
                all_realisable = false;
        }
        bool free = true;
        for (const auto& ft : forbidden)
            if (find_critical_copy_anchored(C, n, ft.tournament, ft.family)) {
                free = false;
                break;
            }
        // the equivalence needs A itself free of critical copies; anchored
        // copies inside A are exactly copies with all points in A
        bool A_free = true;
        ColoredDigraph Aview = test::wrap_digraph(base);
        for (const auto& ft : forbidden)
            if (find_critical_copy_anchored(Aview, n, ft.tournament, ft.family))
                A_free = false;
        if (A_free)
            CHECK(free == all_realisable);
        else
            CHECK(!free);
    }
}

TEST_CASE("link structures") {
    RelationalStructure point;
    point.signature = {{"R", 2}};
    point.universe = {"0"};
    point.relations.resize(1);
    CHECK(is_link_structure(point));

    RelationalStructure pair = test::graph_structure([] {
        Graph g;
        g.add_vertex("0");
        g.add_vertex("1");
        g.add_edge(0, 1);
        return g;
    }());
    CHECK(is_link_structure(pair));

    RelationalStructure two_points;
    two_points.signature = {{"R", 2}};
    two_points.universe = {"0", "1"};
    two_points.relations.resize(1);
    CHECK(!is_link_structure(two_points));
}

TEST_CASE("same link type") {
    Graph one_edge;
    one_edge.add_vertex("0");
    one_edge.add_vertex("1");
    one_edge.add_edge(0, 1);
    RelationalStructure A = test::graph_structure(one_edge);
    CHECK(same_link_type(A, A));

    Graph edgeless;
    edgeless.add_vertex("0");
    edgeless.add_vertex("1");
    RelationalStructure B = test::graph_structure(edgeless);
    CHECK(!same_link_type(A, B));
    CHECK(!same_link_type(B, A));

    // any two graphs with an edge have the same link type
    test::Rng rng(5);
    Graph other = test::random_km_free_graph(rng, 4, 3, 0.6);
    other.add_edge(0, 1);
    CHECK(same_link_type(A, test::graph_structure(other)));
}

TEST_CASE("weak homomorphisms") {
    RelationalStructure K2 = test::complete_structure(2);
    CHECK(is_weak_homomorphism({0, 1}, K2, K2));  // identity
    RelationalStructure K1 = test::complete_structure(1);
    CHECK(!is_weak_homomorphism({0, 0}, K2, K1));  // (v,v) is not an edge

    // a weak homomorphism from K_m into a graph is an embedding
    test::Rng rng(43);
    for (int round = 0; round < 40; ++round) {
        Graph g = test::random_graph(rng, 2 + static_cast<int>(rng() % 4));
        RelationalStructure A = test::graph_structure(g);
        for (int m = 2; m <= 3; ++m) {
            RelationalStructure Km = test::complete_structure(m);
            if (auto w = weakhom_free(A, {Km})) {
                std::set<int> image(w->rho.begin(), w->rho.end());
                CHECK(static_cast<int>(image.size()) == m);  // injective
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        CHECK(g.adjacent(w->rho[i], w->rho[j]));
            }
        }
    }
}

TEST_CASE("weakhom freeness matches clique freeness on graphs") {
    RelationalStructure K3 = test::complete_structure(3);
    CHECK(!weakhom_free(test::graph_structure(cycle(5)), {K3}));
    CHECK(weakhom_free(test::graph_structure(complete(3)), {K3}).has_value());
    CHECK(!weakhom_free(test::graph_structure(complete(3)), {}));

    test::Rng rng(47);
    for (int round = 0; round < 60; ++round) {
        Graph g = test::random_graph(rng, static_cast<int>(rng() % 7));
        for (int m = 3; m <= 4; ++m) {
            RelationalStructure Km = test::complete_structure(m);
            const bool wh = weakhom_free(test::graph_structure(g), {Km}).has_value();
            const bool cl = find_clique(g, m).has_value();
            CHECK(wh == cl);
        }
    }
}

TEST_CASE("search budgets report exhaustion distinctly") {
    test::Rng rng(53);
    Graph g = test::random_graph(rng, 12, 0.8);
    WorkBudget tiny{3, 0};
    CHECK_THROWS_AS(find_clique(g, 3, Exec::serial, &tiny), BudgetExhaustedError);
}
