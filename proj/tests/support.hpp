#pragma once

// Shared generators and independent oracles for the test and acceptance
// suites.  Oracles here re-derive expected values by direct enumeration and
// must stay independent of the implementation paths they check.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "eppa/freeness.hpp"
#include "eppa/structures.hpp"

namespace eppa::test {

using Rng = std::mt19937_64;

inline Graph random_graph(Rng& rng, int n, double p = 0.5) {
    Graph g;
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    std::bernoulli_distribution flip(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng)) g.add_edge(u, v);
    return g;
}

inline Digraph random_digraph(Rng& rng, int n, double p = 0.5) {
    Digraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    std::bernoulli_distribution flip(p);
    std::bernoulli_distribution dir(0.5);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng)) {
                if (dir(rng))
                    g.add_arc(u, v);
                else
                    g.add_arc(v, u);
            }
    return g;
}

// Exhaustive K_m detection over all m-subsets; the independent oracle.
inline bool has_clique_bruteforce(const Graph& g, int m) {
    const int n = g.size();
    if (m < 1 || m > n) return false;
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        bool clique = true;
        for (int i = 0; i < m && clique; ++i)
            for (int j = i + 1; j < m && clique; ++j)
                if (!g.adjacent(pick[i], pick[j])) clique = false;
        if (clique) return true;
        int i = m - 1;
        while (i >= 0 && pick[i] == n - m + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
}

// All injective arc-preserving maps of T into A, tried exhaustively.
inline bool digraph_embeds_bruteforce(const Digraph& T, const Digraph& A) {
    const int t = T.size(), n = A.size();
    if (t > n) return false;
    std::vector<int> img(t, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> dfs = [&](int pos) -> bool {
        if (pos == t) return true;
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            bool ok = true;
            for (int k = 0; k < pos && ok; ++k)
                ok = T.arc(k, pos) == A.arc(img[k], v) &&
                     T.arc(pos, k) == A.arc(v, img[k]);
            if (!ok) continue;
            img[pos] = v;
            used[v] = 1;
            if (dfs(pos + 1)) return true;
            used[v] = 0;
        }
        return false;
    };
    return dfs(0);
}

inline Graph random_km_free_graph(Rng& rng, int n, int m, double p = 0.5) {
    for (int tries = 0; tries < 200; ++tries) {
        Graph g = random_graph(rng, n, p);
        if (!has_clique_bruteforce(g, m)) return g;
    }
    Graph g;  // edgeless fallback
    for (int v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
    return g;
}

inline ColoredGraph wrap_graph(const Graph& g) {
    ColoredGraph out;
    out.graph = g;
    out.color_of.assign(g.size(), {});
    return out;
}

inline ColoredDigraph wrap_digraph(const Digraph& g) {
    ColoredDigraph out;
    out.digraph = g;
    out.color_of.assign(g.size(), {});
    return out;
}

// Random partial isomorphism with |dom| <= max_dom; rejection sampling with
// an empty-map fallback.
inline PartialPermorphism random_partial_iso(Rng& rng, const Graph& g,
                                             int max_dom) {
    const int n = g.size();
    PartialPermorphism p = PartialPermorphism::empty(n, 0);
    if (n == 0) return p;
    std::uniform_int_distribution<int> size_d(0, std::min(max_dom, n));
    std::uniform_int_distribution<int> vert(0, n - 1);
    for (int tries = 0; tries < 100; ++tries) {
        PartialPermorphism cand = PartialPermorphism::empty(n, 0);
        const int k = size_d(rng);
        std::vector<char> dom_used(n, 0), img_used(n, 0);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            int a = vert(rng), b = vert(rng);
            if (dom_used[a] || img_used[b]) continue;
            cand.map[a] = b;
            dom_used[a] = img_used[b] = 1;
        }
        auto dom = cand.domain();
        for (Vertex a : dom)
            for (Vertex b : dom)
                if (a < b &&
                    g.adjacent(a, b) != g.adjacent(cand.apply(a), cand.apply(b)))
                    ok = false;
        if (ok) return cand;
    }
    return p;
}

inline PartialPermorphism random_partial_iso(Rng& rng, const Digraph& g,
                                             int max_dom) {
    const int n = g.size();
    PartialPermorphism p = PartialPermorphism::empty(n, 0);
    if (n == 0) return p;
    std::uniform_int_distribution<int> size_d(0, std::min(max_dom, n));
    std::uniform_int_distribution<int> vert(0, n - 1);
    for (int tries = 0; tries < 100; ++tries) {
        PartialPermorphism cand = PartialPermorphism::empty(n, 0);
        const int k = size_d(rng);
        std::vector<char> dom_used(n, 0), img_used(n, 0);
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            int a = vert(rng), b = vert(rng);
            if (dom_used[a] || img_used[b]) continue;
            cand.map[a] = b;
            dom_used[a] = img_used[b] = 1;
        }
        auto dom = cand.domain();
        for (Vertex a : dom)
            for (Vertex b : dom)
                if (a != b && g.arc(a, b) != g.arc(cand.apply(a), cand.apply(b)))
                    ok = false;
        if (ok) return cand;
    }
    return p;
}

// All automorphisms of a small graph, by brute force over permutations.
inline std::vector<std::vector<Vertex>> all_automorphisms(const Graph& g) {
    const int n = g.size();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<Vertex>> out;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                ok = g.adjacent(u, v) == g.adjacent(perm[u], perm[v]);
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::vector<std::vector<Vertex>> all_automorphisms(const Digraph& g) {
    const int n = g.size();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<Vertex>> out;
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = 0; v < n && ok; ++v)
                ok = u == v || g.arc(u, v) == g.arc(perm[u], perm[v]);
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Exact claim-b class-size identities: the translated multiset of
// (neighbourhood-in-domain, colour-set) classes must match.
inline bool class_sizes_match(const ColoredGraph& C, int base,
                              const PartialPermorphism& p) {
    std::map<std::pair<std::vector<Vertex>, ColorSet>, long long> lhs, rhs;
    for (Vertex c = 0; c < C.size(); ++c) {
        std::vector<Vertex> nd, nr;
        for (Vertex a = 0; a < base; ++a) {
            if (!p.defined(a)) continue;
            if (C.graph.adjacent(a, c)) nd.push_back(p.apply(a));
            if (C.graph.adjacent(p.apply(a), c)) nr.push_back(p.apply(a));
        }
        std::sort(nd.begin(), nd.end());
        std::sort(nr.begin(), nr.end());
        lhs[{nd, p.chi.apply(C.colors(c))}]++;
        rhs[{nr, C.colors(c)}]++;
    }
    return lhs == rhs;
}

inline Tournament cyclic_triangle() {
    Tournament t;
    for (int v = 0; v < 3; ++v) t.digraph.add_vertex(std::to_string(v));
    t.digraph.add_arc(0, 1);
    t.digraph.add_arc(1, 2);
    t.digraph.add_arc(2, 0);
    return t;
}

inline Tournament transitive_triangle() {
    Tournament t;
    for (int v = 0; v < 3; ++v) t.digraph.add_vertex(std::to_string(v));
    t.digraph.add_arc(0, 1);
    t.digraph.add_arc(0, 2);
    t.digraph.add_arc(1, 2);
    return t;
}

// Binary symmetric irreflexive structure from a graph, for the Theorem-6
// checkers.
inline RelationalStructure graph_structure(const Graph& g) {
    RelationalStructure s;
    s.signature = {{"R", 2}};
    s.relations.resize(1);
    for (int v = 0; v < g.size(); ++v) s.universe.push_back(g.name(v));
    for (auto [u, v] : g.edges()) {
        s.relations[0].insert({u, v});
        s.relations[0].insert({v, u});
    }
    return s;
}

inline RelationalStructure complete_structure(int m) {
    Graph g;
    for (int v = 0; v < m; ++v) g.add_vertex(std::to_string(v));
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) g.add_edge(u, v);
    return graph_structure(g);
}

}  // namespace eppa::test
