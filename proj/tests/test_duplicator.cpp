#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eppa/duplicator.hpp"
#include "support.hpp"

using namespace eppa;

namespace {

GroupElement make_element(std::vector<Color> chi, std::vector<Vertex> h) {
    return GroupElement{std::move(chi), std::move(h)};
}

// closure by repeated multiplication of raw permutation pairs; the oracle
// for generate()
std::size_t closure_size_oracle(const std::vector<GroupElement>& gens) {
    auto mul = [](const GroupElement& a, const GroupElement& b) {
        GroupElement p;
        p.chi.resize(a.chi.size());
        for (std::size_t i = 0; i < a.chi.size(); ++i) p.chi[i] = b.chi[a.chi[i]];
        p.h.resize(a.h.size());
        for (std::size_t i = 0; i < a.h.size(); ++i) p.h[i] = b.h[a.h[i]];
        return p;
    };
    std::set<std::pair<std::vector<Color>, std::vector<Vertex>>> seen;
    GroupElement id;
    if (!gens.empty()) {
        id.chi.resize(gens[0].chi.size());
        for (std::size_t i = 0; i < id.chi.size(); ++i) id.chi[i] = i;
        id.h.resize(gens[0].h.size());
        for (std::size_t i = 0; i < id.h.size(); ++i) id.h[i] = i;
    }
    std::vector<GroupElement> todo{id};
    seen.insert({id.chi, id.h});
    while (!todo.empty()) {
        GroupElement cur = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            GroupElement next = mul(cur, g);
            if (seen.insert({next.chi, next.h}).second) todo.push_back(next);
        }
    }
    return seen.size();
}

}  // namespace

TEST_CASE("group generation: identity only") {
    auto g = DuplicatorGroup::generate({make_element({}, {0, 1})}, Caps{});
    CHECK(g.size() == 1);
}

TEST_CASE("group generation: one transposition") {
    auto g = DuplicatorGroup::generate({make_element({}, {1, 0})}, Caps{});
    CHECK(g.size() == 2);
}

TEST_CASE("group generation: 2-cycle and 3-cycle on disjoint points") {
    // order = lcm(2,3) = 6, confirmed by the explicit-closure oracle
    std::vector<GroupElement> gens{make_element({}, {1, 0, 3, 4, 2})};
    CHECK(closure_size_oracle(gens) == 6);
    auto g = DuplicatorGroup::generate(gens, Caps{});
    CHECK(g.size() == 6);
}

TEST_CASE("group generation honours the element cap") {
    Caps caps;
    caps.group_cap = 1;
    CHECK_THROWS_AS(
        DuplicatorGroup::generate({make_element({}, {1, 0})}, caps),
        GroupTooLargeError);
}

TEST_CASE("left and right multiplication tables are consistent") {
    test::Rng rng(79);
    for (int round = 0; round < 10; ++round) {
        std::vector<Vertex> h1(5), h2(5);
        std::iota(h1.begin(), h1.end(), 0);
        std::iota(h2.begin(), h2.end(), 0);
        std::shuffle(h1.begin(), h1.end(), rng);
        std::shuffle(h2.begin(), h2.end(), rng);
        std::vector<GroupElement> gens{make_element({}, h1), make_element({}, h2)};
        Caps caps;
        caps.group_cap = 500;
        std::optional<DuplicatorGroup> g;
        try {
            g = DuplicatorGroup::generate(gens, caps);
        } catch (const GroupTooLargeError&) {
            continue;
        }
        CHECK(g->size() == closure_size_oracle(gens));
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t e = 0; e < g->size(); ++e) {
                // gamma_i * e: apply gamma_i first, then e
                const GroupElement& left = g->element(g->left_mul(i, e));
                const GroupElement& right = g->element(g->right_mul(i, e));
                for (int x = 0; x < 5; ++x) {
                    CHECK(left.h[x] == g->element(e).h[gens[i].h[x]]);
                    CHECK(right.h[x] == gens[i].h[g->element(e).h[x]]);
                }
            }
    }
}

TEST_CASE("words evaluate to their elements, applied left to right") {
    std::vector<GroupElement> gens{make_element({}, {1, 2, 0}),
                                   make_element({}, {1, 0, 2})};
    auto g = DuplicatorGroup::generate(gens, Caps{});
    CHECK(g.size() == 6);  // S_3
    for (std::size_t e = 0; e < g.size(); ++e) {
        std::vector<int> w = g.word(e);
        for (Vertex x = 0; x < 3; ++x) {
            Vertex cur = x;
            for (int letter : w) cur = gens[letter].h[cur];
            CHECK(cur == g.element(e).h[x]);
        }
    }
}

TEST_CASE("quotient with empty maps has |A| x |Gamma| classes") {
    // an edgeless A with a hand-supplied nontrivial h on C = A
    ColoredGraph A;
    A.add_vertex("0");
    A.add_vertex("1");
    Graph C = A.graph;
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element({}, {1, 0})}, Caps{}));
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    auto q = build_quotient(A, {p}, group, C, nullptr, Caps{});
    CHECK(q.num_classes == 4);  // no identifications at all
    auto fs = quotient_automorphisms(q);
    // f_1 swaps the two layers above each point
    for (Vertex a = 0; a < 2; ++a) CHECK(fs[0][q.cls(a, 0)] == q.cls(a, 1));
}

TEST_CASE("total maps collapse the quotient onto A") {
    // path 0-1-2 with its reflection, a total automorphism
    Graph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(std::to_string(v));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    ColoredGraph A = test::wrap_graph(g);
    PartialPermorphism p = PartialPermorphism::empty(3, 0);
    p.map = {2, 1, 0};
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element({}, {2, 1, 0})}, Caps{}));
    auto q = build_quotient(A, {p}, group, g, nullptr, Caps{});
    CHECK(q.num_classes == 3);
    auto fs = quotient_automorphisms(q);
    for (Vertex a = 0; a < 3; ++a) CHECK(fs[0][a] == p.apply(a));
}

TEST_CASE("representative independence of colours and edges (facts 1 and 2)") {
    // coloured edge with a colour-swapping permorphism; the build asserts
    // facts 1-5 internally, and we re-check fact 1 from the outside
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
    Graph C = A.graph;
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element(p.chi.map, {1, 0})}, Caps{}));
    auto q = build_quotient(A, {p}, group, C, nullptr, Caps{});
    CHECK(q.num_classes == 2);
    for (Vertex a = 0; a < 2; ++a)
        for (std::size_t gidx = 0; gidx < group->size(); ++gidx) {
            auto [ra, rg] = q.representative[q.cls(a, gidx)];
            ColorPermutation chi_g{group->element(gidx).chi};
            ColorPermutation chi_r{group->element(rg).chi};
            CHECK(chi_g.apply(A.colors(a)) == chi_r.apply(A.colors(ra)));
            CHECK(group->element(gidx).h[a] == group->element(rg).h[ra]);
        }
    // permorphism audit on f_1: class in V  iff  class^{f_1} in V^{chi_1}
    auto fs = quotient_automorphisms(q);
    for (int c = 0; c < q.num_classes; ++c)
        for (Color col : {v0, v1})
            CHECK(q.B.has_color(c, col) ==
                  q.B.has_color(fs[0][c], p.chi.apply(col)));
}

TEST_CASE("phi is a group homomorphism onto <f_1, ..., f_n>") {
    Graph g;
    for (int v = 0; v < 3; ++v) g.add_vertex(std::to_string(v));
    g.add_edge(0, 1);
    ColoredGraph A = test::wrap_graph(g);
    PartialPermorphism p = PartialPermorphism::empty(3, 0);
    p.map[0] = 1;  // partial: 0 -> 1
    p.map[1] = 0;
    // h on C = A extending p and matching classes: use the pipeline's own
    // matcher via a minimal hand extension (0 1 swap fixes 2)
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element({}, {1, 0, 2})}, Caps{}));
    auto q = build_quotient(A, {p}, group, g, nullptr, Caps{});
    test::Rng rng(83);
    for (int round = 0; round < 100; ++round) {
        std::size_t a = rng() % group->size();
        std::size_t b = rng() % group->size();
        auto fa = q.phi(a);
        auto fb = q.phi(b);
        auto fab = q.phi(group->multiply(a, b));
        for (int c = 0; c < q.num_classes; ++c) CHECK(fab[c] == fb[fa[c]]);
    }
}

TEST_CASE("orbit witnesses") {
    Graph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_edge(0, 1);
    ColoredGraph A = test::wrap_graph(g);
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    p.map[0] = 1;
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element({}, {1, 0})}, Caps{}));
    auto q = build_quotient(A, {p}, group, g, nullptr, Caps{});
    // embedded points witness with the empty word
    for (Vertex a = 0; a < 2; ++a) CHECK(orbit_witness(q, a).empty());
    // every class yields a word no longer than the group diameter
    for (int c = 0; c < q.num_classes; ++c)
        CHECK(orbit_witness(q, c).size() < group->size());
}

TEST_CASE("hand-run duplicator on the worked edge instance") {
    // C from the base realization of the edge has 4 points; h extends
    // p = {0 -> 1} as the transposition; the quotient collapses to the edge
    ColoredGraph A = test::wrap_graph([] {
        Graph g;
        g.add_vertex("0");
        g.add_vertex("1");
        g.add_edge(0, 1);
        return g;
    }());
    Graph C = A.graph;
    C.add_vertex("b_iso");
    C.add_vertex("b_both");
    C.add_edge(3, 0);
    C.add_edge(3, 1);
    PartialPermorphism p = PartialPermorphism::empty(2, 0);
    p.map[0] = 1;
    auto group = std::make_shared<DuplicatorGroup>(
        DuplicatorGroup::generate({make_element({}, {1, 0, 2, 3})}, Caps{}));
    auto q = build_quotient(A, {p}, group, C, nullptr, Caps{});
    CHECK(q.num_classes == 2);
    CHECK(q.B.graph.adjacent(0, 1));
    auto fs = quotient_automorphisms(q);
    CHECK(fs[0][0] == 1);
    CHECK(fs[0][1] == 0);
}
