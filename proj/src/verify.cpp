#include "eppa/verify.hpp"

#include <algorithm>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eppa {

namespace {

void spend(WorkBudget* b, std::uint64_t n) {
    if (b) b->spend(n);
}

bool is_permutation_of(const std::vector<Vertex>& f, int n) {
    if (static_cast<int>(f.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (Vertex v : f) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

// Edge scan for the permorphism check; the parallel kernel mirrors the
// serial reference and both report the least offending edge.
template <typename AdjFn>
std::optional<std::pair<Vertex, Vertex>> first_unpreserved(
    const std::vector<std::pair<Vertex, Vertex>>& edges,
    const std::vector<Vertex>& f, AdjFn adjacent) {
    std::optional<std::pair<Vertex, Vertex>> bad;
#ifdef _OPENMP
    if (edges.size() >= 4096) {
        std::size_t best = edges.size();
#pragma omp parallel for schedule(static)
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (e >= best) continue;
            if (!adjacent(f[edges[e].first], f[edges[e].second])) {
#pragma omp critical
                if (e < best) best = e;
            }
        }
        if (best < edges.size()) bad = edges[best];
        return bad;
    }
#endif
    for (const auto& [u, v] : edges)
        if (!adjacent(f[u], f[v])) return std::pair<Vertex, Vertex>{u, v};
    return bad;
}

void orbit_check(int size, int base, const std::vector<AutomorphismResult>& fs,
                 CertificateReport& rep) {
    CheckResult cr{"orbit-condition", true, ""};
    std::vector<char> reach(size, 0);
    std::vector<int> frontier;
    for (int a = 0; a < base; ++a) {
        reach[a] = 1;
        frontier.push_back(a);
    }
    std::vector<std::vector<int>> finv(fs.size());
    bool ok = true;
    for (std::size_t i = 0; i < fs.size() && ok; ++i) {
        finv[i].assign(size, -1);
        for (int c = 0; c < size && ok; ++c) {
            if (fs[i].map[c] < 0 || fs[i].map[c] >= size) ok = false;
            else finv[i][fs[i].map[c]] = c;
        }
    }
    if (ok)
        while (!frontier.empty()) {
            int c = frontier.back();
            frontier.pop_back();
            for (std::size_t i = 0; i < fs.size(); ++i)
                for (int next : {fs[i].map[c], finv[i][c]})
                    if (next >= 0 && !reach[next]) {
                        reach[next] = 1;
                        frontier.push_back(next);
                    }
        }
    for (int c = 0; c < size; ++c)
        if (!reach[c]) {
            cr.pass = false;
            cr.witness = "class " + std::to_string(c) + " unreachable";
            break;
        }
    if (!ok) {
        cr.pass = false;
        cr.witness = "maps are not functions on B";
    }
    rep.checks.push_back(std::move(cr));
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph report.

CertificateReport verify_extension(const ColoredGraph& A,
                                   const ExtensionResult& result,
                                   const FreenessConstraint& constraint,
                                   const std::vector<PartialPermorphism>& maps,
                                   const DesignatedColors* designated,
                                   WorkBudget* budget) {
    CertificateReport rep;
    const ColoredGraph& B = result.B;
    const int n = A.size();

    {
        CheckResult cr{"induced-substructure", true, ""};
        if (B.size() < n || B.table.names != A.table.names) {
            cr.pass = false;
            cr.witness = "B does not extend A's carrier";
        } else {
            for (Vertex a = 0; a < n && cr.pass; ++a) {
                if (B.graph.name(a) != A.graph.name(a) ||
                    B.colors(a) != A.colors(a)) {
                    cr.pass = false;
                    cr.witness = "vertex " + A.graph.name(a);
                }
                for (Vertex b = a + 1; b < n && cr.pass; ++b) {
                    spend(budget, 1);
                    if (B.graph.adjacent(a, b) != A.graph.adjacent(a, b)) {
                        cr.pass = false;
                        cr.witness = "pair (" + A.graph.name(a) + "," +
                                     A.graph.name(b) + ")";
                    }
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"extension", true, ""};
        if (result.automorphisms.size() != maps.size()) {
            cr.pass = false;
            cr.witness = "automorphism count differs from map count";
        } else {
            for (std::size_t i = 0; i < maps.size() && cr.pass; ++i)
                for (Vertex a = 0; a < n; ++a)
                    if (maps[i].defined(a) &&
                        result.automorphisms[i].map[a] != maps[i].apply(a)) {
                        cr.pass = false;
                        cr.witness = "f_" + std::to_string(i) + " at " +
                                     A.graph.name(a);
                        break;
                    }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"bijectivity", true, ""};
        for (std::size_t i = 0; i < result.automorphisms.size(); ++i)
            if (!is_permutation_of(result.automorphisms[i].map, B.size())) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i);
                break;
            }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"automorphism-permorphism", true, ""};
        auto edges = B.graph.edges();
        for (std::size_t i = 0; i < result.automorphisms.size() && cr.pass; ++i) {
            const auto& f = result.automorphisms[i].map;
            const auto& chi = result.automorphisms[i].chi;
            if (!is_permutation_of(f, B.size())) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i) + " not a bijection";
                break;
            }
            spend(budget, edges.size());
            auto bad = first_unpreserved(edges, f, [&B](Vertex u, Vertex v) {
                return B.graph.adjacent(u, v);
            });
            if (bad) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i) + " breaks edge (" +
                             B.graph.name(bad->first) + "," +
                             B.graph.name(bad->second) + ")";
                break;
            }
            if (static_cast<int>(chi.map.size()) != B.table.num_colors() ||
                !chi.is_permutation()) {
                cr.pass = false;
                cr.witness = "chi_" + std::to_string(i) + " invalid";
                break;
            }
            for (Vertex v = 0; v < B.size(); ++v) {
                spend(budget, 1);
                if (chi.apply(B.colors(v)) != B.colors(f[v])) {
                    cr.pass = false;
                    cr.witness = "f_" + std::to_string(i) + " breaks colours at " +
                                 B.graph.name(v);
                    break;
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"freeness", true, ""};
        if (const CliqueFree* cf = constraint.clique()) {
            if (auto w = find_critical_clique(B, cf->m, cf->critical,
                                              Exec::parallel, budget)) {
                cr.pass = false;
                cr.witness = "critical clique:";
                for (Vertex v : w->vertices) cr.witness += " " + B.graph.name(v);
            }
        } else {
            cr.pass = false;
            cr.witness = "constraint kind does not match a graph result";
        }
        rep.checks.push_back(std::move(cr));
    }
    orbit_check(B.size(), n, result.automorphisms, rep);
    {
        CheckResult cr{"neighborhood-color-condition", true, ""};
        if (designated && !designated->empty()) {
            auto bad = designated->violations(A, maps);
            if (!bad.empty()) {
                cr.pass = false;
                cr.witness = "hypotheses fail on A: " + bad.front();
            }
            for (const auto& [key, color] : designated->entries) {
                if (!cr.pass) break;
                auto [a, j] = key;
                (void)j;
                for (Vertex b : B.graph.neighbors(a)) {
                    spend(budget, 1);
                    if (!B.has_color(b, color)) {
                        cr.pass = false;
                        cr.witness = "aRb without b in U_a^j: a=" +
                                     B.graph.name(a) + " b=" + B.graph.name(b);
                        break;
                    }
                }
            }
        } else {
            cr.witness = "no designated colours supplied";
        }
        rep.checks.push_back(std::move(cr));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Digraph report.

CertificateReport verify_extension(const ColoredDigraph& A,
                                   const ExtensionResult& result,
                                   const FreenessConstraint& constraint,
                                   const std::vector<PartialPermorphism>& maps,
                                   WorkBudget* budget) {
    CertificateReport rep;
    const ColoredDigraph& B = result.B_digraph;
    const int n = A.size();

    {
        CheckResult cr{"induced-substructure", true, ""};
        if (B.size() < n || B.color_names != A.color_names) {
            cr.pass = false;
            cr.witness = "B does not extend A's carrier";
        } else {
            for (Vertex a = 0; a < n && cr.pass; ++a) {
                if (B.digraph.name(a) != A.digraph.name(a) ||
                    B.colors(a) != A.colors(a)) {
                    cr.pass = false;
                    cr.witness = "vertex " + A.digraph.name(a);
                }
                for (Vertex b = 0; b < n && cr.pass; ++b) {
                    if (a == b) continue;
                    spend(budget, 1);
                    if (B.digraph.arc(a, b) != A.digraph.arc(a, b)) {
                        cr.pass = false;
                        cr.witness = "pair (" + A.digraph.name(a) + "," +
                                     A.digraph.name(b) + ")";
                    }
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"extension", true, ""};
        if (result.automorphisms.size() != maps.size()) {
            cr.pass = false;
            cr.witness = "automorphism count differs from map count";
        } else {
            for (std::size_t i = 0; i < maps.size() && cr.pass; ++i)
                for (Vertex a = 0; a < n; ++a)
                    if (maps[i].defined(a) &&
                        result.automorphisms[i].map[a] != maps[i].apply(a)) {
                        cr.pass = false;
                        cr.witness = "f_" + std::to_string(i) + " at " +
                                     A.digraph.name(a);
                        break;
                    }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"bijectivity", true, ""};
        for (std::size_t i = 0; i < result.automorphisms.size(); ++i)
            if (!is_permutation_of(result.automorphisms[i].map, B.size())) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i);
                break;
            }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"automorphism-permorphism", true, ""};
        auto arcs = B.digraph.arcs();
        for (std::size_t i = 0; i < result.automorphisms.size() && cr.pass; ++i) {
            const auto& f = result.automorphisms[i].map;
            const auto& chi = result.automorphisms[i].chi;
            if (!is_permutation_of(f, B.size())) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i) + " not a bijection";
                break;
            }
            spend(budget, arcs.size());
            auto bad = first_unpreserved(arcs, f, [&B](Vertex u, Vertex v) {
                return B.digraph.arc(u, v);
            });
            if (bad) {
                cr.pass = false;
                cr.witness = "f_" + std::to_string(i) + " breaks arc (" +
                             B.digraph.name(bad->first) + "," +
                             B.digraph.name(bad->second) + ")";
                break;
            }
            if (static_cast<int>(chi.map.size()) != B.num_colors() ||
                !chi.is_permutation()) {
                cr.pass = false;
                cr.witness = "chi_" + std::to_string(i) + " invalid";
                break;
            }
            for (Vertex v = 0; v < B.size(); ++v) {
                spend(budget, 1);
                if (chi.apply(B.colors(v)) != B.colors(f[v])) {
                    cr.pass = false;
                    cr.witness = "f_" + std::to_string(i) + " breaks colours at " +
                                 B.digraph.name(v);
                    break;
                }
            }
        }
        rep.checks.push_back(std::move(cr));
    }
    {
        CheckResult cr{"freeness", true, ""};
        if (const TournamentFree* tf = constraint.tournament()) {
            for (std::size_t j = 0; j < tf->forbidden.size() && cr.pass; ++j)
                if (auto w = find_critical_tournament_copy(
                        B, tf->forbidden[j].tournament, tf->forbidden[j].family,
                        Exec::parallel, budget)) {
                    cr.pass = false;
                    cr.witness = "critical copy of T_" + std::to_string(j + 1) + ":";
                    for (Vertex v : w->vertices) cr.witness += " " + B.digraph.name(v);
                }
        } else {
            cr.pass = false;
            cr.witness = "constraint kind does not match a digraph result";
        }
        rep.checks.push_back(std::move(cr));
    }
    orbit_check(B.size(), n, result.automorphisms, rep);
    {
        // every colour map satisfying the hypotheses (either orientation,
        // chi-compatible on the domains) must satisfy the conclusion on B
        CheckResult cr{"neighborhood-color-condition", true, ""};
        const int U = A.num_colors();
        for (int sign : {+1, -1}) {
            if (!cr.pass) break;
            std::vector<std::vector<Color>> candidates(n);
            for (Vertex a = 0; a < n; ++a)
                for (Color V = 0; V < U; ++V) {
                    bool ok = true;
                    for (Vertex b = 0; b < n && ok; ++b) {
                        if (a == b) continue;
                        const bool rel = sign > 0 ? A.digraph.arc(a, b)
                                                  : A.digraph.arc(b, a);
                        ok = (rel == A.has_color(b, V));
                    }
                    if (ok && !A.digraph.arc(a, a)) candidates[a].push_back(V);
                }
            std::vector<Color> pick(n, -1);
            std::function<void(int)> enumerate = [&](int a) {
                if (!cr.pass) return;
                if (a == n) {
                    for (Vertex x = 0; x < n && cr.pass; ++x) {
                        const auto& others =
                            sign > 0 ? B.digraph.out(x) : B.digraph.in(x);
                        for (Vertex b : others) {
                            spend(budget, 1);
                            if (!B.has_color(b, pick[x])) {
                                cr.pass = false;
                                cr.witness =
                                    std::string(sign > 0 ? "out" : "in") +
                                    " variant fails at a=" + B.digraph.name(x) +
                                    " b=" + B.digraph.name(b);
                                break;
                            }
                        }
                    }
                    return;
                }
                for (Color V : candidates[a]) {
                    spend(budget, 1);
                    pick[a] = V;
                    bool consistent = true;
                    for (std::size_t i = 0; i < maps.size() && consistent; ++i) {
                        for (Vertex x = 0; x <= a && consistent; ++x) {
                            if (!maps[i].defined(x)) continue;
                            const Vertex y = maps[i].apply(x);
                            if (y <= a && pick[x] >= 0 && pick[y] >= 0 &&
                                maps[i].chi.apply(pick[x]) != pick[y])
                                consistent = false;
                        }
                    }
                    if (consistent) enumerate(a + 1);
                    pick[a] = -1;
                    if (!cr.pass) return;
                }
            };
            if (n > 0 && U > 0) enumerate(0);
        }
        if (cr.pass && (n == 0 || U == 0))
            cr.witness = "no colour maps exist on this universe";
        rep.checks.push_back(std::move(cr));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive oracle.

namespace {

// All automorphisms of B extending p, lexicographic, capped.
template <typename Structure, typename RelFn>
std::vector<std::vector<Vertex>> automorphisms_extending(
    const Structure& B, const PartialPermorphism& p, RelFn related,
    std::size_t cap, WorkBudget* budget) {
    const int nB = B.size();
    std::vector<std::vector<Vertex>> found;
    std::vector<Vertex> f(nB, kNoVertex);
    std::vector<char> used(nB, 0);
    for (Vertex a = 0; a < static_cast<Vertex>(p.map.size()); ++a)
        if (p.defined(a)) {
            f[a] = p.apply(a);
            used[p.apply(a)] = 1;
        }
    // reject immediately if p itself collides
    for (Vertex a = 0; a < nB; ++a)
        if (f[a] != kNoVertex && (f[a] < 0 || f[a] >= nB)) return found;

    std::function<bool(int)> dfs = [&](int v) -> bool {
        spend(budget, 1);
        if (v == nB) {
            found.push_back(f);
            return found.size() >= cap;
        }
        if (f[v] != kNoVertex) {
            for (Vertex u = 0; u < v; ++u)
                if (related(u, v) != related(f[u], f[v]) ||
                    related(v, u) != related(f[v], f[u]))
                    return false;
            if (p.chi.apply(B.colors(v)) != B.colors(f[v])) return false;
            return dfs(v + 1);
        }
        for (Vertex img = 0; img < nB; ++img) {
            if (used[img]) continue;
            bool ok = p.chi.apply(B.colors(v)) == B.colors(img);
            for (Vertex u = 0; u < v && ok; ++u)
                ok = related(u, v) == related(f[u], img) &&
                     related(v, u) == related(img, f[u]);
            if (!ok) continue;
            f[v] = img;
            used[img] = 1;
            if (dfs(v + 1)) return true;
            used[img] = 0;
            f[v] = kNoVertex;
        }
        return false;
    };
    dfs(static_cast<int>(0));
    return found;
}

constexpr std::size_t kAutCap = 2000;

}  // namespace

std::optional<ExtensionResult> brute_force_extension(
    const ColoredGraph& A, const std::vector<PartialPermorphism>& maps,
    const FreenessConstraint& constraint, int size_cap, WorkBudget* budget) {
    const CliqueFree* cf = constraint.clique();
    if (!cf) return std::nullopt;
    const int n = A.size();
    const int U = A.table.num_colors();
    if (U > 12)
        throw BudgetExhaustedError("oracle: colour universe too large");

    for (int k = n; k <= size_cap; ++k) {
        ColoredGraph base = A;
        for (int v = n; v < k; ++v) base.add_vertex("n" + std::to_string(v - n));
        std::vector<std::pair<Vertex, Vertex>> fresh_pairs;
        for (Vertex u = 0; u < k; ++u)
            for (Vertex v = std::max(u + 1, n); v < k; ++v)
                fresh_pairs.emplace_back(u, v);
        const std::size_t P = fresh_pairs.size();
        if (P > 30) throw BudgetExhaustedError("oracle: pair set too large");

        const std::uint64_t color_choices =
            (k == n || U == 0) ? 1 : (std::uint64_t(1) << U);
        std::vector<std::uint64_t> coloring(std::max(0, k - n), 0);
        for (;;) {  // odometer over the colour sets of the new points
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << P); ++mask) {
                spend(budget, P + 1);
                ColoredGraph cand = base;
                for (std::size_t e = 0; e < P; ++e)
                    if (mask & (std::uint64_t(1) << e))
                        cand.graph.add_edge(fresh_pairs[e].first,
                                            fresh_pairs[e].second);
                for (int v = n; v < k; ++v) {
                    ColorSet cs;
                    for (Color c = 0; c < U; ++c)
                        if (coloring[v - n] & (std::uint64_t(1) << c))
                            cs.push_back(c);
                    cand.color_of[v] = std::move(cs);
                }
                if (find_critical_clique(cand, cf->m, cf->critical, Exec::serial,
                                         budget))
                    continue;
                std::vector<std::vector<std::vector<Vertex>>> options;
                bool feasible = true;
                for (const auto& p : maps) {
                    auto opts = automorphisms_extending(
                        cand, p,
                        [&cand](Vertex u, Vertex v) {
                            return cand.graph.adjacent(u, v);
                        },
                        kAutCap, budget);
                    if (opts.empty()) {
                        feasible = false;
                        break;
                    }
                    options.push_back(std::move(opts));
                }
                if (!feasible) continue;
                // first certified tuple in lexicographic product order
                std::vector<std::size_t> idx(options.size(), 0);
                for (;;) {
                    ExtensionResult res;
                    res.is_digraph = false;
                    res.B = cand;
                    for (std::size_t i = 0; i < options.size(); ++i)
                        res.automorphisms.push_back(
                            AutomorphismResult{options[i][idx[i]], maps[i].chi});
                    res.certificates =
                        verify_extension(A, res, constraint, maps, nullptr, budget);
                    if (res.certificates.all_pass()) return res;
                    // advance the odometer over automorphism tuples
                    std::size_t d = options.size();
                    while (d > 0) {
                        --d;
                        if (++idx[d] < options[d].size()) break;
                        idx[d] = 0;
                        if (d == 0) goto next_candidate;
                    }
                    if (options.empty()) break;
                }
            next_candidate:;
            }
            // advance colouring odometer
            std::size_t d = coloring.size();
            bool done = true;
            while (d > 0) {
                --d;
                if (++coloring[d] < color_choices) {
                    done = false;
                    break;
                }
                coloring[d] = 0;
            }
            if (done) break;
        }
    }
    return std::nullopt;
}

std::optional<ExtensionResult> brute_force_extension(
    const ColoredDigraph& A, const std::vector<PartialPermorphism>& maps,
    const FreenessConstraint& constraint, int size_cap, WorkBudget* budget) {
    const TournamentFree* tf = constraint.tournament();
    if (!tf) return std::nullopt;
    const int n = A.size();
    const int U = A.num_colors();
    if (U > 12)
        throw BudgetExhaustedError("oracle: colour universe too large");

    for (int k = n; k <= size_cap; ++k) {
        ColoredDigraph base = A;
        for (int v = n; v < k; ++v) base.add_vertex("n" + std::to_string(v - n));
        std::vector<std::pair<Vertex, Vertex>> fresh_pairs;
        for (Vertex u = 0; u < k; ++u)
            for (Vertex v = std::max(u + 1, n); v < k; ++v)
                fresh_pairs.emplace_back(u, v);
        const std::size_t P = fresh_pairs.size();
        if (P > 19) throw BudgetExhaustedError("oracle: pair set too large");
        std::uint64_t total = 1;
        for (std::size_t e = 0; e < P; ++e) total *= 3;

        const std::uint64_t color_choices =
            (k == n || U == 0) ? 1 : (std::uint64_t(1) << U);
        std::vector<std::uint64_t> coloring(std::max(0, k - n), 0);
        for (;;) {
            for (std::uint64_t code = 0; code < total; ++code) {
                spend(budget, P + 1);
                ColoredDigraph cand = base;
                std::uint64_t c = code;
                for (std::size_t e = 0; e < P; ++e) {
                    const int trit = static_cast<int>(c % 3);
                    c /= 3;
                    if (trit == 1)
                        cand.digraph.add_arc(fresh_pairs[e].first,
                                             fresh_pairs[e].second);
                    else if (trit == 2)
                        cand.digraph.add_arc(fresh_pairs[e].second,
                                             fresh_pairs[e].first);
                }
                for (int v = n; v < k; ++v) {
                    ColorSet cs;
                    for (Color col = 0; col < U; ++col)
                        if (coloring[v - n] & (std::uint64_t(1) << col))
                            cs.push_back(col);
                    cand.color_of[v] = std::move(cs);
                }
                bool free = true;
                for (const auto& ft : tf->forbidden)
                    if (find_critical_tournament_copy(cand, ft.tournament,
                                                      ft.family, Exec::serial,
                                                      budget)) {
                        free = false;
                        break;
                    }
                if (!free) continue;
                std::vector<std::vector<std::vector<Vertex>>> options;
                bool feasible = true;
                for (const auto& p : maps) {
                    auto opts = automorphisms_extending(
                        cand, p,
                        [&cand](Vertex u, Vertex v) {
                            return cand.digraph.arc(u, v);
                        },
                        kAutCap, budget);
                    if (opts.empty()) {
                        feasible = false;
                        break;
                    }
                    options.push_back(std::move(opts));
                }
                if (!feasible) continue;
                std::vector<std::size_t> idx(options.size(), 0);
                for (;;) {
                    ExtensionResult res;
                    res.is_digraph = true;
                    res.B_digraph = cand;
                    for (std::size_t i = 0; i < options.size(); ++i)
                        res.automorphisms.push_back(
                            AutomorphismResult{options[i][idx[i]], maps[i].chi});
                    res.certificates =
                        verify_extension(A, res, constraint, maps, budget);
                    if (res.certificates.all_pass()) return res;
                    std::size_t d = options.size();
                    while (d > 0) {
                        --d;
                        if (++idx[d] < options[d].size()) break;
                        idx[d] = 0;
                        if (d == 0) goto next_candidate;
                    }
                    if (options.empty()) break;
                }
            next_candidate:;
            }
            std::size_t d = coloring.size();
            bool done = true;
            while (d > 0) {
                --d;
                if (++coloring[d] < color_choices) {
                    done = false;
                    break;
                }
                coloring[d] = 0;
            }
            if (done) break;
        }
    }
    return std::nullopt;
}

}  // namespace eppa
