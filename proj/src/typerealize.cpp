#include "eppa/typerealize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eppa {

namespace {

using Mask = std::uint64_t;

Mask neighborhood_mask(const Graph& G, Vertex v, int n) {
    Mask m = 0;
    for (Vertex u : G.neighbors(v))
        if (u < n) m |= Mask(1) << u;
    return m;
}

Mask out_mask(const Digraph& G, Vertex v, int n) {
    Mask m = 0;
    for (Vertex u : G.out(v))
        if (u < n) m |= Mask(1) << u;
    return m;
}

Mask in_mask(const Digraph& G, Vertex v, int n) {
    Mask m = 0;
    for (Vertex u : G.in(v))
        if (u < n) m |= Mask(1) << u;
    return m;
}

Mask color_mask(const ColorSet& s) {
    Mask m = 0;
    for (Color c : s) m |= Mask(1) << c;
    return m;
}

ColorSet mask_to_colorset(Mask m) {
    ColorSet s;
    while (m) {
        int b = __builtin_ctzll(m);
        s.push_back(b);
        m &= m - 1;
    }
    return s;
}

std::vector<Vertex> mask_to_vertices(Mask m) {
    std::vector<Vertex> v;
    while (m) {
        v.push_back(__builtin_ctzll(m));
        m &= m - 1;
    }
    return v;
}

Mask permute_mask(Mask m, const std::vector<Vertex>& p) {
    Mask out = 0;
    while (m) {
        int b = __builtin_ctzll(m);
        out |= Mask(1) << p[b];
        m &= m - 1;
    }
    return out;
}

Mask permute_color_mask(Mask m, const ColorPermutation& chi) {
    Mask out = 0;
    while (m) {
        int b = __builtin_ctzll(m);
        out |= Mask(1) << chi.apply(b);
        m &= m - 1;
    }
    return out;
}

std::string fresh_name(const std::string& prefix, int& counter,
                       std::set<std::string>& used) {
    for (;;) {
        std::string cand = prefix + std::to_string(counter++);
        if (used.insert(cand).second) return cand;
    }
}

// Superset-count table over all 2^n masks from exact-neighbourhood counts.
std::vector<long long> superset_table(std::vector<long long> exact, int n) {
    for (int j = 0; j < n; ++j)
        for (Mask m = 0; m < (Mask(1) << n); ++m)
            if (!(m & (Mask(1) << j))) exact[m] += exact[m | (Mask(1) << j)];
    return exact;
}

// Mask-level view of the critical set restricted to the current universe,
// with per-A_0 obstruction masks: (A_0, U_0) is realisable iff no
// obstruction mask of A_0 is contained in U_0 (plus the ledger clause).
struct RealisabilityOracle {
    int n = 0;
    int num_colors = 0;
    const ColoredGraph* A = nullptr;
    const CardinalityLedger* ledger = nullptr;
    std::vector<Mask> palette_masks;           // per palette
    std::vector<std::vector<Mask>> obstruction;  // per A_0 mask

    bool ledger_ok(Mask U0) const {
        if (!ledger || !ledger->enabled) return true;
        for (std::size_t j = 0; j < palette_masks.size(); ++j)
            if (__builtin_popcountll(U0 & palette_masks[j]) != ledger->d[j])
                return false;
        return true;
    }
    bool realisable(Mask A0, Mask U0) const {
        if (!ledger_ok(U0)) return false;
        for (Mask t : obstruction[A0])
            if ((t & U0) == t) return false;
        return true;
    }
};

RealisabilityOracle build_oracle(const ColoredGraph& A, int inner_m,
                                 const CriticalColoringSet& critical,
                                 const CardinalityLedger& ledger,
                                 const std::string& level_name) {
    RealisabilityOracle o;
    o.n = A.size();
    o.num_colors = A.table.num_colors();
    o.A = &A;
    o.ledger = &ledger;
    for (const Palette& p : A.table.palettes) {
        Mask m = 0;
        for (int k = 0; k < p.count; ++k) m |= Mask(1) << (p.first + k);
        o.palette_masks.push_back(m);
    }
    // The critical tuples live on the current universe, whose size is capped,
    // so the layered set always materialises here.
    std::size_t bound = 1;
    for (const Palette& p : A.table.palettes) {
        bound *= std::max(1, p.count);
        if (bound > (std::size_t(1) << 24))
            throw StructureCapError(level_name, "critical set too large to realise");
    }
    auto tuples = critical.materialize(bound);
    if (!tuples)
        throw StructureCapError(level_name, "critical set too large to realise");

    // enumerate the inner_m-cliques of A once
    struct Clique {
        Mask vertices;
        std::vector<Mask> palette_inter;  // shared colours per palette
    };
    std::vector<Clique> cliques;
    std::vector<Vertex> stack;
    std::function<void(Vertex)> dfs = [&](Vertex from) {
        if (static_cast<int>(stack.size()) == inner_m) {
            Clique cl;
            cl.vertices = 0;
            for (Vertex v : stack) cl.vertices |= Mask(1) << v;
            cl.palette_inter.assign(o.palette_masks.size(), ~Mask(0));
            for (Vertex v : stack) {
                Mask cm = color_mask(A.colors(v));
                for (std::size_t j = 0; j < o.palette_masks.size(); ++j)
                    cl.palette_inter[j] &= cm;
            }
            for (std::size_t j = 0; j < o.palette_masks.size(); ++j)
                cl.palette_inter[j] &= o.palette_masks[j];
            cliques.push_back(std::move(cl));
            return;
        }
        for (Vertex v = from; v < A.size(); ++v) {
            bool adj = true;
            for (Vertex u : stack)
                if (!A.graph.adjacent(u, v)) { adj = false; break; }
            if (adj) {
                stack.push_back(v);
                dfs(v + 1);
                stack.pop_back();
            }
        }
    };
    if (inner_m >= 1 && inner_m <= A.size()) dfs(0);

    o.obstruction.assign(Mask(1) << o.n, {});
    for (Mask A0 = 0; A0 < (Mask(1) << o.n); ++A0) {
        std::vector<Mask>& obs = o.obstruction[A0];
        for (const Clique& cl : cliques) {
            if ((cl.vertices & A0) != cl.vertices) continue;
            for (const auto& t : *tuples) {
                bool eligible = true;
                Mask tmask = 0;
                for (std::size_t j = 0; j < t.size(); ++j) {
                    if (!(cl.palette_inter[j] & (Mask(1) << t[j]))) {
                        eligible = false;
                        break;
                    }
                    tmask |= Mask(1) << t[j];
                }
                if (eligible) obs.push_back(tmask);
            }
        }
        // keep only minimal obstructions
        std::sort(obs.begin(), obs.end(), [](Mask a, Mask b) {
            return __builtin_popcountll(a) != __builtin_popcountll(b)
                       ? __builtin_popcountll(a) < __builtin_popcountll(b)
                       : a < b;
        });
        std::vector<Mask> minimal;
        for (Mask t : obs) {
            bool dominated = false;
            for (Mask s : minimal)
                if ((s & t) == s) { dominated = true; break; }
            if (!dominated) minimal.push_back(t);
        }
        obs = std::move(minimal);
    }
    return o;
}

// Projected lower bound on |C|: every (empty, U_0) type is realisable up to
// the ledger clause and must be realised c_0 >= 1 times once A is nonempty.
void precheck_color_blowup(const ColoredGraph& A, const CardinalityLedger& ledger,
                           const Caps& caps, const std::string& level_name) {
    if (A.size() == 0) return;
    long double proj = 1.0L;
    if (ledger.enabled) {
        for (int j = 1; j <= A.table.num_palettes(); ++j) {
            const int nj = A.table.palettes[j - 1].count;
            const int dj = ledger.d[j - 1];
            long double binom = 1.0L;
            for (int k = 0; k < dj; ++k)
                binom = binom * (nj - k) / (k + 1);
            proj *= std::max(1.0L, binom);
            if (proj > 1e18L) break;
        }
    } else {
        const int u = A.table.num_colors();
        proj = (u >= 62) ? 1e18L : static_cast<long double>(Mask(1) << u);
    }
    if (proj > static_cast<long double>(caps.structure_cap))
        throw StructureCapError(level_name,
                                level_name + ": projected carrier exceeds structure cap (" +
                                    std::to_string(caps.structure_cap) + ")");
}

}  // namespace

// ---------------------------------------------------------------------------
// Base case (graphs): pure carrier, exact-neighbourhood classes.

BaseTypeRealization realize_types_base(const Graph& A, const std::string& prefix,
                                       const Caps& caps) {
    BaseTypeRealization tr;
    tr.base_size = A.size();
    tr.C = A;
    const int n = A.size();
    if (n == 0) return tr;
    if (n >= 62)
        throw StructureCapError("base", "base type realization: |A| too large");

    std::vector<long long> exact(Mask(1) << n, 0);
    for (Vertex v = 0; v < n; ++v) exact[neighborhood_mask(A, v, n)]++;
    tr.c0 = *std::max_element(exact.begin(), exact.end());

    if (static_cast<long double>(tr.c0) * static_cast<long double>(Mask(1) << n) >
        static_cast<long double>(caps.structure_cap))
        throw StructureCapError("base", "base type realization exceeds structure cap");

    std::set<std::string> used(A.names().begin(), A.names().end());
    int counter = 0;
    for (Mask A0 = 0; A0 < (Mask(1) << n); ++A0) {
        for (long long k = exact[A0]; k < tr.c0; ++k) {
            Vertex x = tr.C.add_vertex(fresh_name(prefix, counter, used));
            for (Vertex a : mask_to_vertices(A0)) tr.C.add_edge(x, a);
        }
    }
    audit_base_counts(A, tr);
    return tr;
}

void audit_base_counts(const Graph& A, const BaseTypeRealization& tr, Exec exec) {
    const int n = A.size();
    if (n == 0) {
        if (tr.C.size() != 0 || tr.c0 != 0)
            throw FactViolationError(0, "base counting audit failed on empty A");
        return;
    }
    std::vector<long long> counts(Mask(1) << n, 0);
#ifdef _OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<long long> local(Mask(1) << n, 0);
#pragma omp for nowait
            for (Vertex v = 0; v < tr.C.size(); ++v)
                local[neighborhood_mask(tr.C, v, n)]++;
#pragma omp critical
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
        }
    } else
#else
    (void)exec;
#endif
    {
        for (Vertex v = 0; v < tr.C.size(); ++v)
            counts[neighborhood_mask(tr.C, v, n)]++;
    }
    for (Mask A0 = 0; A0 < (Mask(1) << n); ++A0)
        if (counts[A0] != tr.c0)
            throw FactViolationError(0, "base counting audit: class " +
                                            std::to_string(A0) + " has " +
                                            std::to_string(counts[A0]) +
                                            " points, want " + std::to_string(tr.c0));
    // new points keep all neighbours inside A
    for (Vertex v = n; v < tr.C.size(); ++v)
        for (Vertex u : tr.C.neighbors(v))
            if (u >= n)
                throw FactViolationError(0, "base realization: edge outside A");
}

// ---------------------------------------------------------------------------
// Claim b (base): match exact neighbourhood classes over the domain.

namespace {

// Shared classwise matcher.  Keys partition C; `forced` pins p_i on its
// domain; the remainders are paired in sorted-name order.
template <typename Key, typename ImageKey>
std::vector<Vertex> match_classes(
    int C_size, const std::vector<std::string>& names,
    const std::vector<Vertex>& pmap,  // kNoVertex outside the domain
    Key key_of, ImageKey image_key) {
    std::map<decltype(key_of(0)), std::vector<Vertex>> classes, image_classes;
    for (Vertex c = 0; c < C_size; ++c) classes[key_of(c)].push_back(c);
    for (Vertex c = 0; c < C_size; ++c) image_classes[image_key(c)].push_back(c);

    std::vector<Vertex> h(C_size, kNoVertex);
    std::vector<char> taken(C_size, 0);
    // forced pairs first, across all classes
    for (Vertex c = 0; c < C_size && c < static_cast<Vertex>(pmap.size()); ++c)
        if (pmap[c] != kNoVertex) {
            h[c] = pmap[c];
            taken[pmap[c]] = 1;
        }
    for (auto& [key, members] : classes) {
        auto it = image_classes.find(key);
        const std::vector<Vertex> empty;
        const std::vector<Vertex>& targets =
            it == image_classes.end() ? empty : it->second;
        if (members.size() != targets.size())
            throw ClassSizeMismatchError(
                "matched classes differ in size: " + std::to_string(members.size()) +
                " vs " + std::to_string(targets.size()));
        std::vector<Vertex> rest_src;
        for (Vertex c : members)
            if (h[c] == kNoVertex) rest_src.push_back(c);
        std::vector<Vertex> rest_dst;
        for (Vertex c : targets)
            if (!taken[c]) rest_dst.push_back(c);
        if (rest_src.size() != rest_dst.size())
            throw ClassSizeMismatchError("forced pairs leave unequal remainders");
        auto by_name = [&names](Vertex a, Vertex b) { return names[a] < names[b]; };
        std::sort(rest_src.begin(), rest_src.end(), by_name);
        std::sort(rest_dst.begin(), rest_dst.end(), by_name);
        for (std::size_t k = 0; k < rest_src.size(); ++k) h[rest_src[k]] = rest_dst[k];
    }
    return h;
}

}  // namespace

SymmetryExtension extend_to_symmetries_base(const BaseTypeRealization& tr,
                                            const std::vector<PartialPermorphism>& maps) {
    SymmetryExtension ext;
    const int n = tr.base_size;
    for (const auto& p : maps) {
        Mask Dmask = 0;
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) Dmask |= Mask(1) << a;
        Mask Rmask = 0;
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) Rmask |= Mask(1) << p.apply(a);
        std::vector<Vertex> pm(tr.C.size(), kNoVertex);
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) pm[a] = p.apply(a);

        auto h = match_classes(
            tr.C.size(), tr.C.names(), pm,
            [&](Vertex c) { return permute_mask(neighborhood_mask(tr.C, c, n) & Dmask, p.map); },
            [&](Vertex c) { return neighborhood_mask(tr.C, c, n) & Rmask; });

        // claim b, checked pointwise over C x D_i
        for (Vertex a = 0; a < n; ++a) {
            if (!p.defined(a)) continue;
            for (Vertex b = 0; b < tr.C.size(); ++b)
                if (tr.C.adjacent(a, b) != tr.C.adjacent(p.apply(a), h[b]))
                    throw FactViolationError(0, "claim b edge condition failed");
        }
        ext.h.push_back(std::move(h));
    }
    return ext;
}

// ---------------------------------------------------------------------------
// Inductive case (graphs).

ColoredTypeRealization realize_types_inductive(const ColoredGraph& A, int inner_m,
                                               const CriticalColoringSet& critical,
                                               const CardinalityLedger& ledger,
                                               const Caps& caps,
                                               const std::string& prefix,
                                               const std::string& level_name) {
    ColoredTypeRealization tr;
    tr.base_size = A.size();
    tr.inner_m = inner_m;
    tr.C = A;
    tr.critical = std::make_shared<CriticalColoringSet>(critical);
    tr.ledger = ledger;
    const int n = A.size();
    tr.c.assign(n + 1, 0);
    if (n == 0) return tr;

    precheck_color_blowup(A, ledger, caps, level_name);
    const int U = A.table.num_colors();
    RealisabilityOracle oracle = build_oracle(A, inner_m, critical, ledger, level_name);

    // registry of (neighbourhood mask, colour mask) per point of C
    std::vector<std::pair<Mask, Mask>> registry;
    for (Vertex v = 0; v < n; ++v)
        registry.emplace_back(neighborhood_mask(A.graph, v, n),
                              color_mask(A.colors(v)));

    std::set<std::string> used(A.graph.names().begin(), A.graph.names().end());
    int counter = 0;

    for (int t = n; t >= 1; --t) {
        // per-colour-mask superset tables over the current chain element C_t
        std::map<Mask, std::vector<long long>> groups;
        {
            std::map<Mask, std::vector<long long>> exact;
            for (const auto& [nm, cm] : registry) {
                auto it = exact.find(cm);
                if (it == exact.end())
                    it = exact.emplace(cm, std::vector<long long>(Mask(1) << n, 0)).first;
                it->second[nm]++;
            }
            for (auto& [cm, table] : exact)
                groups.emplace(cm, superset_table(std::move(table), n));
        }
        // c_{t-1} = max over realisable types of the current count
        long long ct = 0;
        for (const auto& [cm, table] : groups) {
            for (Mask A0 = 0; A0 < (Mask(1) << n); ++A0) {
                if (__builtin_popcountll(A0) != t - 1 || table[A0] == 0) continue;
                if (!oracle.realisable(A0, cm))
                    throw FactViolationError(
                        2, "realized type is not realisable; A was not free");
                ct = std::max(ct, table[A0]);
            }
        }
        tr.c[t - 1] = ct;
        if (ct == 0) continue;
        // bring every realisable type of this size up to c_{t-1}
        for (Mask A0 = 0; A0 < (Mask(1) << n); ++A0) {
            if (__builtin_popcountll(A0) != t - 1) continue;
            for (Mask U0 = 0; U0 < (Mask(1) << U); ++U0) {
                caps.spend(1);
                if (!oracle.realisable(A0, U0)) continue;
                long long have = 0;
                auto it = groups.find(U0);
                if (it != groups.end()) have = it->second[A0];
                for (long long k = have; k < ct; ++k) {
                    if (static_cast<std::size_t>(tr.C.size()) >= caps.structure_cap)
                        throw StructureCapError(level_name,
                                                level_name + ": carrier exceeds structure cap");
                    Vertex x = tr.C.add_vertex(fresh_name(prefix, counter, used));
                    for (Vertex a : mask_to_vertices(A0)) tr.C.graph.add_edge(x, a);
                    tr.C.color_of[x] = mask_to_colorset(U0);
                    registry.emplace_back(A0, U0);
                }
            }
        }
    }

    audit_inductive_counts(A, tr, caps);
    // claim a also asserts freeness of the carrier
    if (find_critical_clique(tr.C, inner_m + 1, critical, Exec::parallel,
                             caps.budget))
        throw FactViolationError(0, level_name + ": carrier lost freeness");
    return tr;
}

void audit_inductive_counts(const ColoredGraph& A, const ColoredTypeRealization& tr,
                            const Caps& caps) {
    const int n = tr.base_size;
    if (n == 0) return;
    const int U = A.table.num_colors();
    RealisabilityOracle oracle =
        build_oracle(A, tr.inner_m, *tr.critical, tr.ledger, "audit");

    std::map<Mask, std::vector<long long>> groups;
    {
        std::map<Mask, std::vector<long long>> exact;
        for (Vertex v = 0; v < tr.C.size(); ++v) {
            Mask nm = neighborhood_mask(tr.C.graph, v, n);
            Mask cm = color_mask(tr.C.colors(v));
            auto it = exact.find(cm);
            if (it == exact.end())
                it = exact.emplace(cm, std::vector<long long>(Mask(1) << n, 0)).first;
            it->second[nm]++;
        }
        for (auto& [cm, table] : exact)
            groups.emplace(cm, superset_table(std::move(table), n));
    }
    for (Mask U0 = 0; U0 < (Mask(1) << U); ++U0) {
        caps.spend(1);
        auto it = groups.find(U0);
        for (Mask A0 = 0; A0 < (Mask(1) << n); ++A0) {
            long long have = it == groups.end() ? 0 : it->second[A0];
            long long want = oracle.realisable(A0, U0)
                                 ? tr.c[__builtin_popcountll(A0)]
                                 : 0;
            if (have != want)
                throw FactViolationError(
                    0, "inductive counting audit: type (" + std::to_string(A0) + "," +
                           std::to_string(U0) + ") has " + std::to_string(have) +
                           " points, want " + std::to_string(want));
        }
    }
    for (Vertex v = n; v < tr.C.size(); ++v)
        for (Vertex u : tr.C.graph.neighbors(v))
            if (u >= n)
                throw FactViolationError(0, "inductive realization: edge outside A");
}

SymmetryExtension extend_to_symmetries_colored(const ColoredTypeRealization& tr,
                                               const std::vector<PartialPermorphism>& maps) {
    SymmetryExtension ext;
    const int n = tr.base_size;
    for (const auto& p : maps) {
        Mask Dmask = 0, Rmask = 0;
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) {
                Dmask |= Mask(1) << a;
                Rmask |= Mask(1) << p.apply(a);
            }
        std::vector<Vertex> pm(tr.C.size(), kNoVertex);
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) pm[a] = p.apply(a);

        auto h = match_classes(
            tr.C.size(), tr.C.graph.names(), pm,
            [&](Vertex c) {
                return std::pair<Mask, Mask>(
                    permute_mask(neighborhood_mask(tr.C.graph, c, n) & Dmask, p.map),
                    permute_color_mask(color_mask(tr.C.colors(c)), p.chi));
            },
            [&](Vertex c) {
                return std::pair<Mask, Mask>(
                    neighborhood_mask(tr.C.graph, c, n) & Rmask,
                    color_mask(tr.C.colors(c)));
            });

        for (Vertex a = 0; a < n; ++a) {
            if (!p.defined(a)) continue;
            for (Vertex b = 0; b < tr.C.size(); ++b)
                if (tr.C.graph.adjacent(a, b) !=
                    tr.C.graph.adjacent(p.apply(a), h[b]))
                    throw FactViolationError(0, "claim b edge condition failed");
        }
        for (Vertex b = 0; b < tr.C.size(); ++b)
            if (p.chi.apply(tr.C.colors(b)) != tr.C.colors(h[b]))
                throw FactViolationError(0, "claim b colour equivariance failed");
        ext.h.push_back(std::move(h));
    }
    return ext;
}

// ---------------------------------------------------------------------------
// Digraph base case: pure carrier, exact (N^+, N^-) classes.

DigraphBaseTypeRealization realize_types_digraph_base(const Digraph& A,
                                                      const std::string& prefix,
                                                      const Caps& caps) {
    DigraphBaseTypeRealization tr;
    tr.base_size = A.size();
    tr.C = A;
    const int n = A.size();
    if (n == 0) return tr;
    if (n >= 31)
        throw StructureCapError("base", "digraph base realization: |A| too large");

    std::map<std::pair<Mask, Mask>, long long> exact;
    for (Vertex v = 0; v < n; ++v)
        exact[{out_mask(A, v, n), in_mask(A, v, n)}]++;
    tr.c0 = 0;
    for (const auto& [key, cnt] : exact) tr.c0 = std::max(tr.c0, cnt);

    long double classes = 1;
    for (int i = 0; i < n; ++i) classes *= 3;
    if (static_cast<long double>(tr.c0) * classes >
        static_cast<long double>(caps.structure_cap))
        throw StructureCapError("base", "digraph base realization exceeds structure cap");

    std::set<std::string> used(A.names().begin(), A.names().end());
    int counter = 0;
    const Mask full = (Mask(1) << n) - 1;
    for (Mask P = 0; P <= full; ++P) {
        Mask comp = full & ~P;
        Mask M = comp;
        for (;;) {
            long long have = 0;
            auto it = exact.find({P, M});
            if (it != exact.end()) have = it->second;
            for (long long k = have; k < tr.c0; ++k) {
                Vertex x = tr.C.add_vertex(fresh_name(prefix, counter, used));
                for (Vertex a : mask_to_vertices(P)) tr.C.add_arc(x, a);
                for (Vertex a : mask_to_vertices(M)) tr.C.add_arc(a, x);
            }
            if (M == 0) break;
            M = (M - 1) & comp;
        }
    }
    audit_digraph_base_counts(A, tr);
    return tr;
}

void audit_digraph_base_counts(const Digraph& A, const DigraphBaseTypeRealization& tr) {
    const int n = A.size();
    if (n == 0) return;
    std::map<std::pair<Mask, Mask>, long long> counts;
    for (Vertex v = 0; v < tr.C.size(); ++v)
        counts[{out_mask(tr.C, v, n), in_mask(tr.C, v, n)}]++;
    const Mask full = (Mask(1) << n) - 1;
    for (Mask P = 0; P <= full; ++P) {
        Mask comp = full & ~P;
        Mask M = comp;
        for (;;) {
            long long have = 0;
            auto it = counts.find({P, M});
            if (it != counts.end()) have = it->second;
            if (have != tr.c0)
                throw FactViolationError(0, "digraph base counting audit failed");
            if (M == 0) break;
            M = (M - 1) & comp;
        }
    }
}

SymmetryExtension extend_to_symmetries_digraph_base(
    const DigraphBaseTypeRealization& tr,
    const std::vector<PartialPermorphism>& maps) {
    SymmetryExtension ext;
    const int n = tr.base_size;
    for (const auto& p : maps) {
        Mask Dmask = 0, Rmask = 0;
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) {
                Dmask |= Mask(1) << a;
                Rmask |= Mask(1) << p.apply(a);
            }
        std::vector<Vertex> pm(tr.C.size(), kNoVertex);
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) pm[a] = p.apply(a);

        auto h = match_classes(
            tr.C.size(), tr.C.names(), pm,
            [&](Vertex c) {
                return std::pair<Mask, Mask>(
                    permute_mask(out_mask(tr.C, c, n) & Dmask, p.map),
                    permute_mask(in_mask(tr.C, c, n) & Dmask, p.map));
            },
            [&](Vertex c) {
                return std::pair<Mask, Mask>(out_mask(tr.C, c, n) & Rmask,
                                             in_mask(tr.C, c, n) & Rmask);
            });

        for (Vertex a = 0; a < n; ++a) {
            if (!p.defined(a)) continue;
            for (Vertex b = 0; b < tr.C.size(); ++b) {
                if (tr.C.arc(a, b) != tr.C.arc(p.apply(a), h[b]) ||
                    tr.C.arc(b, a) != tr.C.arc(h[b], p.apply(a)))
                    throw FactViolationError(0, "digraph claim b arc condition failed");
            }
        }
        ext.h.push_back(std::move(h));
    }
    return ext;
}

// ---------------------------------------------------------------------------
// Digraph inductive case.

DigraphTypeRealization realize_types_digraph(const ColoredDigraph& A,
                                             const std::vector<ForbiddenTournament>& forbidden,
                                             const Caps& caps,
                                             const std::string& prefix,
                                             const std::string& level_name) {
    DigraphTypeRealization tr;
    tr.base_size = A.size();
    tr.C = A;
    tr.forbidden = forbidden;
    const int n = A.size();
    tr.c.assign(n + 1, 0);
    if (n == 0) return tr;
    const int U = A.num_colors();
    if (U >= 62 || (U > 0 && (Mask(1) << U) > caps.structure_cap))
        throw StructureCapError(level_name,
                                level_name + ": projected carrier exceeds structure cap");

    std::vector<std::tuple<Mask, Mask, Mask>> registry;  // (out, in, colours)
    for (Vertex v = 0; v < n; ++v)
        registry.emplace_back(out_mask(A.digraph, v, n), in_mask(A.digraph, v, n),
                              color_mask(A.colors(v)));

    std::set<std::string> used(A.digraph.names().begin(), A.digraph.names().end());
    int counter = 0;
    const Mask full = (Mask(1) << n) - 1;

    auto realisable = [&](Mask P, Mask M, Mask U0) {
        return is_realisable_digraph(A, mask_to_vertices(P), mask_to_vertices(M),
                                     mask_to_colorset(U0), forbidden);
    };

    for (int t = n; t >= 1; --t) {
        // counts over the current chain element
        std::map<Mask, std::map<std::pair<Mask, Mask>, long long>> groups;
        for (const auto& [om, im, cm] : registry) {
            auto& tally = groups[cm];
            Mask P = om;
            for (;;) {  // all subset pairs of (om, im)
                Mask M = im;
                for (;;) {
                    tally[{P, M}]++;
                    if (M == 0) break;
                    M = (M - 1) & im;
                }
                if (P == 0) break;
                P = (P - 1) & om;
            }
        }
        long long ct = 0;
        for (const auto& [cm, tally] : groups)
            for (const auto& [pm, cnt] : tally) {
                if (__builtin_popcountll(pm.first | pm.second) != t - 1 || cnt == 0)
                    continue;
                if (!realisable(pm.first, pm.second, cm))
                    throw FactViolationError(
                        2, "realized digraph type is not realisable; A was not free");
                ct = std::max(ct, cnt);
            }
        tr.c[t - 1] = ct;
        if (ct == 0) continue;
        for (Mask P = 0; P <= full; ++P) {
            Mask comp = full & ~P;
            Mask M = comp;
            for (;;) {
                if (__builtin_popcountll(P | M) == t - 1) {
                    for (Mask U0 = 0; U0 < (Mask(1) << U); ++U0) {
                        caps.spend(1);
                        if (!realisable(P, M, U0)) continue;
                        long long have = 0;
                        auto git = groups.find(U0);
                        if (git != groups.end()) {
                            auto it = git->second.find({P, M});
                            if (it != git->second.end()) have = it->second;
                        }
                        for (long long k = have; k < ct; ++k) {
                            if (static_cast<std::size_t>(tr.C.size()) >=
                                caps.structure_cap)
                                throw StructureCapError(
                                    level_name,
                                    level_name + ": carrier exceeds structure cap");
                            Vertex x =
                                tr.C.add_vertex(fresh_name(prefix, counter, used));
                            for (Vertex a : mask_to_vertices(P))
                                tr.C.digraph.add_arc(x, a);
                            for (Vertex a : mask_to_vertices(M))
                                tr.C.digraph.add_arc(a, x);
                            tr.C.color_of[x] = mask_to_colorset(U0);
                            registry.emplace_back(P, M, U0);
                        }
                    }
                }
                if (M == 0) break;
                M = (M - 1) & comp;
            }
        }
    }

    audit_digraph_counts(A, tr, caps);
    for (const auto& ft : forbidden)
        if (ft.tournament.size() > 1 &&
            find_critical_copy_anchored(tr.C, n, ft.tournament, ft.family,
                                        caps.budget))
            throw FactViolationError(0, level_name + ": carrier lost freeness");
    return tr;
}

void audit_digraph_counts(const ColoredDigraph& A, const DigraphTypeRealization& tr,
                          const Caps& caps) {
    const int n = tr.base_size;
    if (n == 0) return;
    const int U = A.num_colors();
    std::map<Mask, std::map<std::pair<Mask, Mask>, long long>> groups;
    for (Vertex v = 0; v < tr.C.size(); ++v) {
        Mask om = out_mask(tr.C.digraph, v, n);
        Mask im = in_mask(tr.C.digraph, v, n);
        auto& tally = groups[color_mask(tr.C.colors(v))];
        Mask P = om;
        for (;;) {
            Mask M = im;
            for (;;) {
                tally[{P, M}]++;
                if (M == 0) break;
                M = (M - 1) & im;
            }
            if (P == 0) break;
            P = (P - 1) & om;
        }
    }
    const Mask full = (Mask(1) << n) - 1;
    for (Mask U0 = 0; U0 < (Mask(1) << U); ++U0) {
        caps.spend(1);
        auto git = groups.find(U0);
        for (Mask P = 0; P <= full; ++P) {
            Mask comp = full & ~P;
            Mask M = comp;
            for (;;) {
                long long have = 0;
                if (git != groups.end()) {
                    auto it = git->second.find({P, M});
                    if (it != git->second.end()) have = it->second;
                }
                long long want =
                    is_realisable_digraph(A, mask_to_vertices(P), mask_to_vertices(M),
                                          mask_to_colorset(U0), tr.forbidden)
                        ? tr.c[__builtin_popcountll(P | M)]
                        : 0;
                if (have != want)
                    throw FactViolationError(0, "digraph counting audit failed");
                if (M == 0) break;
                M = (M - 1) & comp;
            }
        }
    }
}

SymmetryExtension extend_to_symmetries_digraph(const DigraphTypeRealization& tr,
                                               const std::vector<PartialPermorphism>& maps) {
    SymmetryExtension ext;
    const int n = tr.base_size;
    for (const auto& p : maps) {
        Mask Dmask = 0, Rmask = 0;
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) {
                Dmask |= Mask(1) << a;
                Rmask |= Mask(1) << p.apply(a);
            }
        std::vector<Vertex> pm(tr.C.size(), kNoVertex);
        for (Vertex a = 0; a < n; ++a)
            if (p.defined(a)) pm[a] = p.apply(a);

        auto h = match_classes(
            tr.C.size(), tr.C.digraph.names(), pm,
            [&](Vertex c) {
                return std::tuple<Mask, Mask, Mask>(
                    permute_mask(out_mask(tr.C.digraph, c, n) & Dmask, p.map),
                    permute_mask(in_mask(tr.C.digraph, c, n) & Dmask, p.map),
                    permute_color_mask(color_mask(tr.C.colors(c)), p.chi));
            },
            [&](Vertex c) {
                return std::tuple<Mask, Mask, Mask>(
                    out_mask(tr.C.digraph, c, n) & Rmask,
                    in_mask(tr.C.digraph, c, n) & Rmask,
                    color_mask(tr.C.colors(c)));
            });

        for (Vertex a = 0; a < n; ++a) {
            if (!p.defined(a)) continue;
            for (Vertex b = 0; b < tr.C.size(); ++b)
                if (tr.C.digraph.arc(a, b) != tr.C.digraph.arc(p.apply(a), h[b]) ||
                    tr.C.digraph.arc(b, a) != tr.C.digraph.arc(h[b], p.apply(a)))
                    throw FactViolationError(0, "digraph claim b arc condition failed");
        }
        for (Vertex b = 0; b < tr.C.size(); ++b)
            if (p.chi.apply(tr.C.colors(b)) != tr.C.colors(h[b]))
                throw FactViolationError(0, "digraph claim b colour equivariance failed");
        ext.h.push_back(std::move(h));
    }
    return ext;
}

}  // namespace eppa
