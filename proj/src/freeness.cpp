#include "eppa/freeness.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eppa {

std::vector<std::string> FreenessConstraint::validate() const {
    std::vector<std::string> bad;
    if (const CliqueFree* cf = clique()) {
        if (cf->m < 1) bad.push_back("m must be >= 1");
    } else if (const TournamentFree* tf = tournament()) {
        for (std::size_t j = 0; j < tf->forbidden.size(); ++j) {
            const auto& ft = tf->forbidden[j];
            if (!ft.tournament.valid())
                bad.push_back("malformed tournament " + std::to_string(j + 1) +
                              " (totality/antisymmetry)");
            if (ft.family.arity() != ft.tournament.size())
                bad.push_back("tuple length differs from |T_" +
                              std::to_string(j + 1) + "|");
        }
    } else if (const WeakHomFree* wf = weakhom()) {
        for (const auto& s : wf->forbidden)
            for (auto& v : s.validate()) bad.push_back(v);
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Critical clique search.
//
// Backtracking over vertices in ascending order; the partial clique keeps a
// per-palette running intersection of colour sets, so a branch dies as soon
// as some palette can no longer supply a shared colour.

namespace {

struct CliqueSearcher {
    const ColoredGraph& A;
    int m;
    const CriticalColoringSet& crit;
    WorkBudget* budget;
    Vertex first_lo = 0, first_hi = 0;  // range for the first clique vertex

    std::vector<Vertex> stack;
    std::optional<Witness> found;

    bool color_tuple(const std::vector<ColorSet>& inter, Witness& w) const {
        if (!crit.meets_product(inter)) return false;
        // reconstruct a concrete matched tuple for the certificate
        w.coloring.clear();
        if (crit.arity() == 0) return true;
        std::vector<Color> tuple(crit.arity());
        std::vector<int> pos(crit.arity(), 0);
        // lexicographic product scan; the sets are tiny at witness time
        int j = 0;
        while (j >= 0) {
            if (j == crit.arity()) {
                if (crit.contains(tuple)) { w.coloring = tuple; return true; }
                --j;
                continue;
            }
            if (pos[j] >= static_cast<int>(inter[j].size())) {
                pos[j] = 0;
                --j;
                if (j >= 0) ++pos[j];
                continue;
            }
            tuple[j] = inter[j][pos[j]];
            ++j;
            if (j <= crit.arity() - 1) pos[j] = 0;
        }
        return false;
    }

    bool dfs(Vertex from, std::vector<ColorSet>& inter) {
        if (budget) budget->spend(1);
        if (static_cast<int>(stack.size()) == m) {
            Witness w;
            w.vertices = stack;
            if (color_tuple(inter, w)) {
                found = std::move(w);
                return true;
            }
            return false;
        }
        Vertex lo = stack.empty() ? first_lo : from;
        Vertex hi = stack.empty() ? first_hi : A.size();
        for (Vertex v = lo; v < hi; ++v) {
            bool adj = true;
            for (Vertex u : stack)
                if (!A.graph.adjacent(u, v)) { adj = false; break; }
            if (!adj) continue;
            std::vector<ColorSet> next(crit.arity());
            bool alive = true;
            for (int j = 0; j < crit.arity(); ++j) {
                next[j] = intersect(inter[j], A.table.palette_slice(A.colors(v), j + 1));
                if (next[j].empty()) { alive = false; break; }
            }
            if (!alive) continue;
            stack.push_back(v);
            if (dfs(v + 1, next)) return true;
            stack.pop_back();
        }
        return false;
    }

    std::optional<Witness> run() {
        std::vector<ColorSet> inter(crit.arity());
        for (int j = 0; j < crit.arity(); ++j) {
            const Palette& p = A.table.palettes[j];
            inter[j].resize(p.count);
            for (int k = 0; k < p.count; ++k) inter[j][k] = p.first + k;
        }
        dfs(0, inter);
        return found;
    }
};

std::optional<Witness> clique_branch(const ColoredGraph& A, int m,
                                     const CriticalColoringSet& crit,
                                     WorkBudget* budget, Vertex lo, Vertex hi) {
    CliqueSearcher s{A, m, crit, budget};
    s.first_lo = lo;
    s.first_hi = hi;
    return s.run();
}

}  // namespace

std::optional<Witness> find_critical_clique(const ColoredGraph& A, int m,
                                            const CriticalColoringSet& critical,
                                            Exec exec, WorkBudget* budget) {
    if (m < 1 || m > A.size()) return std::nullopt;
#ifdef _OPENMP
    if (exec == Exec::parallel && !budget && A.size() >= 64 && m >= 2) {
        const int n = A.size();
        int best = INT_MAX;
        std::optional<Witness> result;
#pragma omp parallel for schedule(dynamic, 8)
        for (int a = 0; a < n; ++a) {
            if (a >= best) continue;  // stale reads only skip work
            auto w = clique_branch(A, m, critical, nullptr, a, a + 1);
            if (w) {
#pragma omp critical
                {
                    if (a < best) {
                        best = a;
                        result = std::move(w);
                    }
                }
            }
        }
        return result;
    }
#else
    (void)exec;
#endif
    return clique_branch(A, m, critical, budget, 0, A.size());
}

std::optional<Witness> find_clique(const Graph& A, int m, Exec exec,
                                   WorkBudget* budget) {
    ColoredGraph view;
    view.graph = A;
    view.color_of.assign(A.size(), {});
    return find_critical_clique(view, m, CriticalColoringSet::trivial(), exec,
                                budget);
}

// ---------------------------------------------------------------------------
// Tournament copy search.  Embeddings are scanned in lexicographic order of
// the image tuple (s_1, ..., s_l).

namespace {

struct TournamentSearcher {
    const ColoredDigraph& A;
    const Tournament& T;
    const TupleFamily& family;
    WorkBudget* budget;
    int anchor_size = -1;  // s_2.. must lie below this bound when >= 0
    Vertex first_lo = 0, first_hi = 0;

    std::vector<Vertex> image;
    std::optional<Witness> found;

    bool dfs(int pos) {
        if (budget) budget->spend(1);
        const int l = T.size();
        if (pos == l) {
            std::vector<ColorSet> tuple(l);
            for (int k = 0; k < l; ++k) tuple[k] = A.colors(image[k]);
            if (!family.contains(tuple)) return false;
            Witness w;
            w.vertices = image;
            w.color_tuple = std::move(tuple);
            found = std::move(w);
            return true;
        }
        Vertex lo = pos == 0 ? first_lo : 0;
        Vertex hi = pos == 0 ? first_hi
                             : (anchor_size >= 0 ? anchor_size : A.size());
        for (Vertex v = lo; v < hi; ++v) {
            bool ok = true;
            for (int k = 0; k < pos && ok; ++k) {
                if (image[k] == v) ok = false;
                else
                    ok = (T.digraph.arc(k, pos) == A.digraph.arc(image[k], v)) &&
                         (T.digraph.arc(pos, k) == A.digraph.arc(v, image[k]));
            }
            if (!ok) continue;
            image.push_back(v);
            if (dfs(pos + 1)) return true;
            image.pop_back();
        }
        return false;
    }

    std::optional<Witness> run() {
        if (T.size() > A.size() || T.size() == 0) return std::nullopt;
        dfs(0);
        return found;
    }
};

}  // namespace

std::optional<Witness> find_critical_tournament_copy(const ColoredDigraph& A,
                                                     const Tournament& T,
                                                     const TupleFamily& family,
                                                     Exec exec,
                                                     WorkBudget* budget) {
#ifdef _OPENMP
    if (exec == Exec::parallel && !budget && A.size() >= 64 && T.size() >= 2) {
        const int n = A.size();
        int best = INT_MAX;
        std::optional<Witness> result;
#pragma omp parallel for schedule(dynamic, 8)
        for (int a = 0; a < n; ++a) {
            if (a >= best) continue;
            TournamentSearcher s{A, T, family, nullptr};
            s.first_lo = a;
            s.first_hi = a + 1;
            auto w = s.run();
            if (w) {
#pragma omp critical
                {
                    if (a < best) {
                        best = a;
                        result = std::move(w);
                    }
                }
            }
        }
        return result;
    }
#else
    (void)exec;
#endif
    TournamentSearcher s{A, T, family, budget};
    s.first_lo = 0;
    s.first_hi = A.size();
    return s.run();
}

std::optional<Witness> find_critical_copy_anchored(const ColoredDigraph& C,
                                                   int anchor_size,
                                                   const Tournament& T,
                                                   const TupleFamily& family,
                                                   WorkBudget* budget) {
    TournamentSearcher s{C, T, family, budget};
    s.anchor_size = anchor_size;
    s.first_lo = 0;
    s.first_hi = C.size();
    return s.run();
}

// ---------------------------------------------------------------------------
// Realisability.

bool is_realisable_graph(const ColoredGraph& A, const std::vector<Vertex>& A0,
                         const ColorSet& U0, int m,
                         const CriticalColoringSet& critical,
                         const CardinalityLedger* ledger) {
    if (ledger && ledger->enabled) {
        for (int j = 1; j <= A.table.num_palettes(); ++j) {
            ColorSet slice = A.table.palette_slice(U0, j);
            if (static_cast<int>(slice.size()) != ledger->d[j - 1]) return false;
        }
    }
    if (m < 1 || m > static_cast<int>(A0.size())) return true;
    // search an m-clique within A0 whose critical colouring fits inside U0
    std::vector<Vertex> verts = A0;
    std::sort(verts.begin(), verts.end());
    const int r = critical.arity();
    std::vector<ColorSet> base(r);
    for (int j = 1; j <= r; ++j) base[j - 1] = A.table.palette_slice(U0, j);

    std::vector<int> stack;
    std::vector<std::vector<ColorSet>> inters{base};
    // iterative backtracking over indices into verts
    std::function<bool(int)> dfs = [&](int from) -> bool {
        if (static_cast<int>(stack.size()) == m)
            return critical.meets_product(inters.back());
        for (int idx = from; idx < static_cast<int>(verts.size()); ++idx) {
            Vertex v = verts[idx];
            bool adj = true;
            for (int k : stack)
                if (!A.graph.adjacent(verts[k], v)) { adj = false; break; }
            if (!adj) continue;
            std::vector<ColorSet> next(r);
            bool alive = true;
            for (int j = 0; j < r; ++j) {
                next[j] = intersect(inters.back()[j],
                                    A.table.palette_slice(A.colors(v), j + 1));
                if (next[j].empty()) { alive = false; break; }
            }
            if (!alive) continue;
            stack.push_back(idx);
            inters.push_back(std::move(next));
            if (dfs(idx + 1)) return true;
            inters.pop_back();
            stack.pop_back();
        }
        return false;
    };
    return !dfs(0);
}

bool is_realisable_digraph(const ColoredDigraph& A,
                           const std::vector<Vertex>& Aplus,
                           const std::vector<Vertex>& Aminus, const ColorSet& U0,
                           const std::vector<ForbiddenTournament>& forbidden) {
    for (const auto& ft : forbidden) {
        const Tournament& T = ft.tournament;
        const int l = T.size();
        if (l < 2) continue;  // size-1 tournaments never obstruct a type
        // positions 1..l-1 of T; position k goes to Aplus iff t_1 -> t_k
        std::vector<Vertex> image(l, kNoVertex);
        std::vector<ColorSet> tuple(l);
        tuple[0] = U0;
        std::function<bool(int)> dfs = [&](int pos) -> bool {
            if (pos == l) return ft.family.contains(tuple);
            const std::vector<Vertex>& side =
                T.digraph.arc(0, pos) ? Aplus : Aminus;
            for (Vertex v : side) {
                bool ok = true;
                for (int k = 1; k < pos && ok; ++k) {
                    if (image[k] == v) ok = false;
                    else
                        ok = (T.digraph.arc(k, pos) == A.digraph.arc(image[k], v)) &&
                             (T.digraph.arc(pos, k) == A.digraph.arc(v, image[k]));
                }
                if (!ok) continue;
                image[pos] = v;
                tuple[pos] = A.colors(v);
                if (dfs(pos + 1)) return true;
                image[pos] = kNoVertex;
            }
            return false;
        };
        if (dfs(1)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Theorem-6 checkers.

bool is_link_structure(const RelationalStructure& L) {
    if (L.size() == 1) return true;
    for (std::size_t k = 0; k < L.signature.size(); ++k)
        for (const auto& t : L.relations[k]) {
            std::set<int> covered(t.begin(), t.end());
            if (static_cast<int>(covered.size()) == L.size()) return true;
        }
    return false;
}

bool is_weak_homomorphism(const std::vector<int>& rho,
                          const RelationalStructure& T,
                          const RelationalStructure& A) {
    for (std::size_t k = 0; k < T.signature.size(); ++k)
        for (const auto& t : T.relations[k]) {
            std::vector<int> image(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) image[i] = rho[t[i]];
            if (!A.holds(static_cast<int>(k), image)) return false;
        }
    return true;
}

bool embeds(const RelationalStructure& L, const RelationalStructure& A) {
    if (!L.same_signature(A) || L.size() > A.size()) return false;
    const int n = L.size();
    std::vector<int> rho(n, -1);
    std::vector<char> used(A.size(), 0);
    // check every tuple whose entries are all assigned and include pos
    auto consistent = [&](int pos) {
        for (std::size_t k = 0; k < L.signature.size(); ++k) {
            const int ar = L.signature[k].arity;
            std::vector<int> t(ar, 0);
            while (true) {
                bool relevant = false, assigned = true;
                for (int i = 0; i < ar; ++i) {
                    if (t[i] == pos) relevant = true;
                    if (rho[t[i]] < 0) { assigned = false; break; }
                }
                if (relevant && assigned) {
                    std::vector<int> image(ar);
                    for (int i = 0; i < ar; ++i) image[i] = rho[t[i]];
                    if (L.holds(static_cast<int>(k), t) !=
                        A.holds(static_cast<int>(k), image))
                        return false;
                }
                int i = ar - 1;
                while (i >= 0 && t[i] == n - 1) t[i--] = 0;
                if (i < 0) break;
                ++t[i];
            }
        }
        return true;
    };
    std::function<bool(int)> dfs = [&](int pos) -> bool {
        if (pos == n) return true;
        for (int v = 0; v < A.size(); ++v) {
            if (used[v]) continue;
            rho[pos] = v;
            used[v] = 1;
            if (consistent(pos) && dfs(pos + 1)) return true;
            used[v] = 0;
            rho[pos] = -1;
        }
        return false;
    };
    return dfs(0);
}

namespace {

// All structures over the signature on `size` points, filtered to link
// structures, up to isomorphism.
std::vector<RelationalStructure> link_structures(
    const std::vector<RelationSymbol>& sig, int size, WorkBudget& budget) {
    std::vector<std::vector<std::vector<int>>> all_tuples(sig.size());
    for (std::size_t k = 0; k < sig.size(); ++k) {
        const int ar = sig[k].arity;
        std::vector<int> t(ar, 0);
        while (true) {
            all_tuples[k].push_back(t);
            int i = ar - 1;
            while (i >= 0 && t[i] == size - 1) t[i--] = 0;
            if (i < 0) break;
            ++t[i];
        }
    }
    std::vector<RelationalStructure> reps;
    RelationalStructure proto;
    proto.signature = sig;
    for (int v = 0; v < size; ++v) proto.universe.push_back(std::to_string(v));
    proto.relations.resize(sig.size());

    // odometer over the inclusion pattern of every possible tuple
    std::vector<std::size_t> counts;
    std::size_t total_bits = 0;
    for (auto& ts : all_tuples) {
        counts.push_back(ts.size());
        total_bits += ts.size();
    }
    if (total_bits > 40)
        throw BudgetExhaustedError("link-structure enumeration too large");
    const std::uint64_t total = std::uint64_t(1) << total_bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        budget.spend(1);
        RelationalStructure s = proto;
        std::size_t bit = 0;
        for (std::size_t k = 0; k < sig.size(); ++k)
            for (const auto& t : all_tuples[k]) {
                if (mask & (std::uint64_t(1) << bit)) s.relations[k].insert(t);
                ++bit;
            }
        if (!is_link_structure(s)) continue;
        bool fresh = true;
        for (const auto& r : reps)
            if (embeds(s, r) && embeds(r, s)) { fresh = false; break; }
        if (fresh) reps.push_back(std::move(s));
    }
    return reps;
}

}  // namespace

bool same_link_type(const RelationalStructure& A, const RelationalStructure& B,
                    WorkBudget* budget) {
    WorkBudget local{std::uint64_t(1) << 26, 0};
    WorkBudget& bud = budget ? *budget : local;
    int max_arity = 1;
    for (const auto& s : A.signature) max_arity = std::max(max_arity, s.arity);
    for (int size = 1; size <= max_arity; ++size)
        for (const auto& L : link_structures(A.signature, size, bud))
            if (embeds(L, A) != embeds(L, B)) return false;
    return true;
}

std::optional<WeakHomWitness> weakhom_free(const RelationalStructure& A,
                                           const std::vector<RelationalStructure>& F,
                                           WorkBudget* budget) {
    for (std::size_t fi = 0; fi < F.size(); ++fi) {
        const RelationalStructure& T = F[fi];
        if (!T.same_signature(A)) continue;
        if (T.size() > 0 && A.size() == 0) continue;
        std::vector<int> rho(T.size(), 0);
        if (T.size() == 0) return WeakHomWitness{static_cast<int>(fi), {}};
        while (true) {
            if (budget) budget->spend(1);
            if (is_weak_homomorphism(rho, T, A))
                return WeakHomWitness{static_cast<int>(fi), rho};
            int i = T.size() - 1;
            while (i >= 0 && rho[i] == A.size() - 1) rho[i--] = 0;
            if (i < 0) break;
            ++rho[i];
        }
    }
    return std::nullopt;
}

}  // namespace eppa
