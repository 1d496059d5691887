#include "eppa/pipeline.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eppa {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

std::string fresh_color_name(std::string base, std::set<std::string>& used) {
    std::string cand = base;
    while (!used.insert(cand).second) cand += "'";
    return cand;
}

ColoredGraph project_graph(const ColoredGraph& full, const ColorTable& original) {
    ColoredGraph out;
    out.graph = full.graph;
    out.table = original;
    out.color_of.resize(full.size());
    const Color keep = original.num_colors();
    for (Vertex v = 0; v < full.size(); ++v) {
        const ColorSet& cs = full.colors(v);
        auto hi = std::lower_bound(cs.begin(), cs.end(), keep);
        out.color_of[v] = ColorSet(cs.begin(), hi);
    }
    return out;
}

ColoredDigraph project_digraph(const ColoredDigraph& full, int original_colors,
                               const std::vector<std::string>& original_names) {
    ColoredDigraph out;
    out.digraph = full.digraph;
    out.color_names = original_names;
    out.color_of.resize(full.size());
    for (Vertex v = 0; v < full.size(); ++v) {
        const ColorSet& cs = full.colors(v);
        auto hi = std::lower_bound(cs.begin(), cs.end(), original_colors);
        out.color_of[v] = ColorSet(cs.begin(), hi);
    }
    return out;
}

// Reachability of the embedded copy under <f_1, ..., f_n>.
void assert_orbit_condition(int num_classes, int base_size,
                            const std::vector<std::vector<int>>& fs) {
    std::vector<char> reach(num_classes, 0);
    std::vector<int> frontier;
    for (int a = 0; a < base_size; ++a) {
        reach[a] = 1;
        frontier.push_back(a);
    }
    std::vector<std::vector<int>> finv(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        finv[i].assign(num_classes, -1);
        for (int c = 0; c < num_classes; ++c) finv[i][fs[i][c]] = c;
    }
    while (!frontier.empty()) {
        int c = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (int next : {fs[i][c], finv[i][c]})
                if (!reach[next]) {
                    reach[next] = 1;
                    frontier.push_back(next);
                }
    }
    for (int c = 0; c < num_classes; ++c)
        if (!reach[c])
            throw FactViolationError(0, "orbit condition fails at class " +
                                            std::to_string(c));
}

struct GraphLevelResult {
    std::shared_ptr<QuotientStructure> q;
    std::vector<std::vector<int>> fmaps;
};

GraphLevelResult rec_graph(const ColoredGraph& A,
                           const std::vector<PartialPermorphism>& maps, int m,
                           std::shared_ptr<const CriticalColoringSet> critical,
                           const DesignatedColors& designated,
                           const CardinalityLedger& ledger,
                           const PipelineOptions& opts, RunStats& stats) {
    const std::string level_name = "graph level m=" + std::to_string(m);
    if (m == 1) {
        if (find_critical_clique(A, 1, *critical, opts.exec))
            throw FactViolationError(0, "base case: A is not U_c-K_1-free");
        BaseTypeRealization tr = realize_types_base(A.graph, "t1_", opts.caps);
        SymmetryExtension hs = extend_to_symmetries_base(tr, maps);
        if (opts.observer && opts.observer->on_graph_base)
            opts.observer->on_graph_base(tr, maps, hs);
        stats.levels.push_back(
            {level_name, static_cast<std::size_t>(tr.C.size()), 0, false});

        std::vector<GroupElement> gens;
        for (std::size_t i = 0; i < maps.size(); ++i)
            gens.push_back(GroupElement{maps[i].chi.map, hs.h[i]});
        auto group = std::make_shared<DuplicatorGroup>(
            DuplicatorGroup::generate(std::move(gens), opts.caps));

        GraphLevelResult out;
        out.q = std::make_shared<QuotientStructure>(
            build_quotient(A, maps, group, tr.C, &designated, opts.caps));
        if (opts.observer && opts.observer->on_quotient)
            opts.observer->on_quotient(*out.q);
        out.fmaps = quotient_automorphisms(*out.q);
        for (std::size_t i = 0; i < maps.size(); ++i)
            for (Vertex a = 0; a < A.size(); ++a)
                if (maps[i].defined(a) && out.fmaps[i][a] != maps[i].apply(a))
                    throw FactViolationError(0, "f_i does not extend p_i");
        assert_orbit_condition(out.q->num_classes, A.size(), out.fmaps);

        // base-level freeness of the quotient
        WorkBudget audit{opts.audit_budget, 0};
        try {
            if (find_critical_clique(out.q->B, 1, *critical, opts.exec, &audit))
                throw FactViolationError(0, "quotient is not U_c-K_1-free");
            stats.levels.back().freeness_audit_run = true;
        } catch (const BudgetExhaustedError&) {
            stats.notes.push_back(level_name + ": freeness audit skipped (budget)");
        }
        // side condition: a R b  =>  b in U_a^j, over the full quotient
        for (const auto& [key, color] : designated.entries) {
            auto [a, j] = key;
            (void)j;
            for (Vertex b : out.q->B.graph.neighbors(a))
                if (!out.q->B.has_color(b, color))
                    throw FactViolationError(0, "neighbourhood colour condition fails");
        }
        stats.group_size = group->size();
        stats.quotient_size = out.q->num_classes;
        return out;
    }

    // inductive level: realise types for m, lift colours, recurse at m-1
    ColoredTypeRealization tr = realize_types_inductive(
        A, m - 1, *critical, ledger, opts.caps, "t" + std::to_string(m) + "_",
        level_name);
    SymmetryExtension hs = extend_to_symmetries_colored(tr, maps);
    if (opts.observer && opts.observer->on_graph_level)
        opts.observer->on_graph_level(tr, maps, hs);

    LiftedContext lc = lift_colors(tr, hs, A, maps, designated, ledger);
    stats.levels.push_back({level_name, static_cast<std::size_t>(tr.C.size()),
                            static_cast<std::size_t>(tr.C.size()), false});

    std::vector<PartialPermorphism> lifted_maps = maps;
    for (std::size_t i = 0; i < maps.size(); ++i)
        lifted_maps[i].chi = lc.lifted_chis[i];
    CardinalityLedger lifted_ledger = ledger;
    if (ledger.enabled && lc.d_new)
        lifted_ledger.d.push_back(static_cast<int>(*lc.d_new));

    // recursion bookkeeping: the next call's hypotheses must hold exactly
    FreenessConstraint next_constraint{CliqueFree{m - 1, *lc.lifted_critical}};
    ValidationReport rep = validate_instance(lc.A_lifted, lifted_maps,
                                             next_constraint, &lc.lifted_designated);
    if (!rep.admissible())
        throw FactViolationError(0, "lifted instance inadmissible: " +
                                        join(rep.violations));

    GraphLevelResult out =
        rec_graph(lc.A_lifted, lifted_maps, m - 1, lc.lifted_critical,
                  lc.lifted_designated, lifted_ledger, opts, stats);

    // unwinding audit: the quotient, seen as a U-graph of this level, stays
    // U_c-K_m-free
    WorkBudget audit{opts.audit_budget, 0};
    try {
        if (find_critical_clique(out.q->B, m, *critical, opts.exec, &audit))
            throw FactViolationError(0, level_name + ": quotient lost freeness");
        for (auto& lvl : stats.levels)
            if (lvl.name == level_name) lvl.freeness_audit_run = true;
    } catch (const BudgetExhaustedError&) {
        stats.notes.push_back(level_name + ": freeness audit skipped (budget)");
    }
    return out;
}

}  // namespace

LiftedContext lift_colors(const ColoredTypeRealization& tr,
                          const SymmetryExtension& hs, const ColoredGraph& A,
                          const std::vector<PartialPermorphism>& maps,
                          const DesignatedColors& designated,
                          const CardinalityLedger& ledger) {
    LiftedContext lc;
    const ColoredGraph& C = tr.C;
    const int n = A.size();
    lc.A_lifted = A;
    lc.new_palette_index = lc.A_lifted.table.add_palette();
    lc.new_color_base = lc.A_lifted.table.num_colors();

    std::set<std::string> used(lc.A_lifted.table.names.begin(),
                               lc.A_lifted.table.names.end());
    for (Vertex d = 0; d < C.size(); ++d)
        lc.A_lifted.table.add_color(
            fresh_color_name("u" + std::to_string(lc.new_palette_index) + "_" +
                                 C.graph.name(d),
                             used),
            lc.new_palette_index);

    // interpretation on A: a in U_d^{r+1} iff d R a in C
    for (Vertex a = 0; a < n; ++a) {
        ColorSet extra;
        for (Vertex d : C.graph.neighbors(a)) extra.push_back(lc.new_color_base + d);
        std::sort(extra.begin(), extra.end());
        ColorSet& cs = lc.A_lifted.color_of[a];
        cs.insert(cs.end(), extra.begin(), extra.end());
        std::sort(cs.begin(), cs.end());
    }

    for (std::size_t i = 0; i < maps.size(); ++i) {
        ColorPermutation chi = maps[i].chi;
        chi.map.resize(lc.new_color_base + C.size());
        for (Vertex d = 0; d < C.size(); ++d)
            chi.map[lc.new_color_base + d] = lc.new_color_base + hs.h[i][d];
        lc.lifted_chis.push_back(std::move(chi));
    }

    lc.lifted_critical = std::make_shared<CriticalColoringSet>(
        CriticalColoringSet::lifted(tr.critical, std::make_shared<ColoredGraph>(C),
                                    lc.new_color_base));

    lc.lifted_designated = designated;
    for (Vertex a = 0; a < n; ++a)
        lc.lifted_designated.entries[{a, lc.new_palette_index}] =
            lc.new_color_base + a;

    // hypothesis checks for the next level (cheap, and they catch lift bugs)
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b)
            if (lc.A_lifted.has_color(b, lc.new_color_base + a) !=
                A.graph.adjacent(a, b))
                throw FactViolationError(0, "lift: U_a^{r+1} does not match N(a)");
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (Vertex a = 0; a < n; ++a)
            if (maps[i].defined(a) &&
                lc.lifted_chis[i].apply(lc.new_color_base + a) !=
                    lc.new_color_base + maps[i].apply(a))
                throw FactViolationError(0, "lift: designated colours not equivariant");

    if (ledger.enabled) {
        // d_{r+1} = k * c_1 with k = #{U_0 : ({a}, U_0) realisable}
        const int U = A.table.num_colors();
        long long k = -1;
        for (Vertex a = 0; a < n; ++a) {
            long long ka = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << U); ++mask) {
                ColorSet U0;
                for (int c = 0; c < U; ++c)
                    if (mask & (std::uint64_t(1) << c)) U0.push_back(c);
                if (is_realisable_graph(A, {a}, U0, tr.inner_m, *tr.critical,
                                        &ledger))
                    ++ka;
            }
            if (k == -1)
                k = ka;
            else if (k != ka)
                throw FactViolationError(0, "ledger: k_a differs between vertices");
        }
        if (k >= 0) {
            lc.d_new = k * tr.c[1];
            for (Vertex a = 0; a < n; ++a) {
                long long have = static_cast<long long>(
                    lc.A_lifted.table
                        .palette_slice(lc.A_lifted.colors(a), lc.new_palette_index)
                        .size());
                if (have != *lc.d_new)
                    throw FactViolationError(0, "ledger: |U^{r+1}(a)| != k*c_1");
            }
        }
    }
    return lc;
}

// ---------------------------------------------------------------------------

ExtensionResult extend_colored(const ColoredGraph& A,
                               const std::vector<PartialPermorphism>& maps, int m,
                               const CriticalColoringSet& critical,
                               const DesignatedColors& designated,
                               const PipelineOptions& opts) {
    FreenessConstraint constraint{CliqueFree{m, critical}};
    ValidationReport rep = validate_instance(A, maps, constraint, &designated);
    if (!rep.admissible()) throw NotFreeError(join(rep.violations));
    if (opts.ledger.enabled) {
        // the ledger path re-enables the pair-coverage hypothesis
        for (Vertex a = 0; a < A.size(); ++a)
            for (Vertex b = 0; b < A.size(); ++b) {
                if (a == b) continue;
                bool covered = false;
                for (const auto& p : maps)
                    if (p.defined(a) && p.apply(a) == b) covered = true;
                if (!covered)
                    throw NotFreeError("strict ledger requires pair-covering maps (" +
                                       A.graph.name(a) + " -> " + A.graph.name(b) +
                                       " missing)");
            }
    }

    RunStats stats;
    auto critical_ptr = std::make_shared<const CriticalColoringSet>(critical);
    GraphLevelResult lvl = rec_graph(A, maps, m, critical_ptr, designated,
                                     opts.ledger, opts, stats);

    ExtensionResult result;
    result.is_digraph = false;
    result.B = project_graph(lvl.q->B, A.table);
    for (std::size_t i = 0; i < maps.size(); ++i)
        result.automorphisms.push_back(AutomorphismResult{lvl.fmaps[i], maps[i].chi});
    result.stats = std::move(stats);
    result.certificates =
        verify_extension(A, result, constraint, maps,
                         designated.empty() ? nullptr : &designated);
    return result;
}

ExtensionResult extend_graph(const Graph& A,
                             const std::vector<PartialPermorphism>& maps, int m,
                             const PipelineOptions& opts) {
    ColoredGraph wrapped;
    wrapped.graph = A;
    wrapped.color_of.assign(A.size(), {});
    return extend_colored(wrapped, maps, m, CriticalColoringSet::trivial(), {},
                          opts);
}

// ---------------------------------------------------------------------------
// Digraph side.

namespace {

int max_tournament_size(const std::vector<ForbiddenTournament>& forbidden) {
    int mx = 0;
    for (const auto& ft : forbidden) mx = std::max(mx, ft.tournament.size());
    return mx;
}

void check_families_on(const ColoredDigraph& B, int base_size,
                       const std::vector<DesignatedFamily>& families,
                       const Caps& caps, std::vector<CheckResult>& out) {
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const DesignatedFamily& fam = families[fi];
        CheckResult cr;
        cr.name = "side-condition family " + std::to_string(fi) +
                  (fam.sign > 0 ? " (out)" : " (in)");
        cr.pass = true;
        for (Vertex a = 0; a < base_size && cr.pass; ++a) {
            const Color ua = fam.color_of_vertex[a];
            const auto& others =
                fam.sign > 0 ? B.digraph.out(a) : B.digraph.in(a);
            for (Vertex b : others) {
                caps.spend(1);
                if (!B.has_color(b, ua)) {
                    cr.pass = false;
                    cr.witness = "a=" + B.digraph.name(a) + " b=" + B.digraph.name(b);
                    break;
                }
            }
        }
        out.push_back(std::move(cr));
    }
}

struct DigraphLevelResult {
    std::shared_ptr<QuotientStructure> q;
    std::vector<std::vector<int>> fmaps;
};

DigraphLevelResult rec_digraph(const ColoredDigraph& A,
                               const std::vector<PartialPermorphism>& maps,
                               const std::vector<ForbiddenTournament>& forbidden,
                               std::vector<DesignatedFamily>& families,
                               const PipelineOptions& opts, RunStats& stats) {
    const int maxsize = max_tournament_size(forbidden);
    const std::string level_name = "digraph level size=" + std::to_string(maxsize);
    const int n = A.size();

    if (maxsize <= 1) {
        for (const auto& ft : forbidden)
            if (find_critical_tournament_copy(A, ft.tournament, ft.family, opts.exec))
                throw FactViolationError(0, "base case: A is not U_j-T_j-free");
        DigraphBaseTypeRealization tr =
            realize_types_digraph_base(A.digraph, "t1_", opts.caps);
        SymmetryExtension hs = extend_to_symmetries_digraph_base(tr, maps);
        stats.levels.push_back(
            {level_name, static_cast<std::size_t>(tr.C.size()), 0, false});

        std::vector<GroupElement> gens;
        for (std::size_t i = 0; i < maps.size(); ++i)
            gens.push_back(GroupElement{maps[i].chi.map, hs.h[i]});
        auto group = std::make_shared<DuplicatorGroup>(
            DuplicatorGroup::generate(std::move(gens), opts.caps));

        DigraphLevelResult out;
        out.q = std::make_shared<QuotientStructure>(
            build_quotient_digraph(A, maps, group, tr.C, opts.caps));
        if (opts.observer && opts.observer->on_quotient)
            opts.observer->on_quotient(*out.q);
        out.fmaps = quotient_automorphisms(*out.q);
        for (std::size_t i = 0; i < maps.size(); ++i)
            for (Vertex a = 0; a < n; ++a)
                if (maps[i].defined(a) && out.fmaps[i][a] != maps[i].apply(a))
                    throw FactViolationError(0, "f_i does not extend p_i");
        assert_orbit_condition(out.q->num_classes, n, out.fmaps);

        WorkBudget audit{opts.audit_budget, 0};
        try {
            for (const auto& ft : forbidden)
                if (find_critical_tournament_copy(out.q->B_digraph, ft.tournament,
                                                  ft.family, opts.exec, &audit))
                    throw FactViolationError(0, "quotient is not U_j-T_j-free");
            stats.levels.back().freeness_audit_run = true;
        } catch (const BudgetExhaustedError&) {
            stats.notes.push_back(level_name + ": freeness audit skipped (budget)");
        }
        std::vector<CheckResult> fam_checks;
        check_families_on(out.q->B_digraph, n, families, opts.caps, fam_checks);
        for (const auto& cr : fam_checks)
            if (!cr.pass)
                throw FactViolationError(0, "side condition fails: " + cr.name +
                                                " at " + cr.witness);
        stats.group_size = group->size();
        stats.quotient_size = out.q->num_classes;
        return out;
    }

    // split every tournament of size > 1 at its designated point t_1
    std::vector<ForbiddenTournament> big, small;
    for (const auto& ft : forbidden)
        (ft.tournament.size() > 1 ? big : small).push_back(ft);

    DigraphTypeRealization tr = realize_types_digraph(
        A, big, opts.caps, "t" + std::to_string(maxsize) + "_", level_name);
    SymmetryExtension hs = extend_to_symmetries_digraph(tr, maps);
    const ColoredDigraph& C = tr.C;
    stats.levels.push_back({level_name, static_cast<std::size_t>(C.size()),
                            static_cast<std::size_t>(2 * C.size()), false});

    // new colours U_c^+ (base + 2c) and U_c^- (base + 2c + 1)
    ColoredDigraph A2 = A;
    const Color base = A.num_colors();
    {
        std::set<std::string> used(A.color_names.begin(), A.color_names.end());
        for (Vertex c = 0; c < C.size(); ++c) {
            A2.add_color(fresh_color_name("plus_" + C.digraph.name(c), used));
            A2.add_color(fresh_color_name("minus_" + C.digraph.name(c), used));
        }
    }
    for (Vertex a = 0; a < n; ++a) {
        ColorSet extra;
        for (Vertex c : C.digraph.in(a)) extra.push_back(base + 2 * c);
        for (Vertex c : C.digraph.out(a)) extra.push_back(base + 2 * c + 1);
        std::sort(extra.begin(), extra.end());
        ColorSet& cs = A2.color_of[a];
        cs.insert(cs.end(), extra.begin(), extra.end());
        std::sort(cs.begin(), cs.end());
    }

    std::vector<PartialPermorphism> lifted_maps = maps;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        ColorPermutation& chi = lifted_maps[i].chi;
        chi.map.resize(base + 2 * C.size());
        for (Vertex c = 0; c < C.size(); ++c) {
            chi.map[base + 2 * c] = base + 2 * hs.h[i][c];
            chi.map[base + 2 * c + 1] = base + 2 * hs.h[i][c] + 1;
        }
    }

    auto carrier = std::make_shared<const ColoredDigraph>(C);
    std::vector<ForbiddenTournament> reduced = small;
    for (const auto& ft : big) {
        const Tournament& T = ft.tournament;
        Tournament Tp;
        std::vector<int> eps;
        for (Vertex v = 1; v < T.size(); ++v) {
            Tp.digraph.add_vertex(T.digraph.name(v));
            eps.push_back(T.digraph.arc(0, v) ? +1 : -1);
        }
        for (Vertex u = 1; u < T.size(); ++u)
            for (Vertex v = 1; v < T.size(); ++v)
                if (T.digraph.arc(u, v)) Tp.digraph.add_arc(u - 1, v - 1);
        TupleFamily fam = TupleFamily::lifted(
            std::make_shared<const TupleFamily>(ft.family), carrier, eps, base,
            base);
        reduced.push_back(ForbiddenTournament{std::move(Tp), std::move(fam)});
    }

    // side-condition families carried to the bottom of the recursion
    DesignatedFamily plus{+1, {}}, minus{-1, {}};
    for (Vertex a = 0; a < n; ++a) {
        plus.color_of_vertex.push_back(base + 2 * a);
        minus.color_of_vertex.push_back(base + 2 * a + 1);
    }
    families.push_back(std::move(plus));
    families.push_back(std::move(minus));

    FreenessConstraint next_constraint{TournamentFree{reduced}};
    ValidationReport rep = validate_instance(A2, lifted_maps, next_constraint);
    if (!rep.admissible())
        throw FactViolationError(0, "lifted digraph instance inadmissible: " +
                                        join(rep.violations));

    DigraphLevelResult out =
        rec_digraph(A2, lifted_maps, reduced, families, opts, stats);

    WorkBudget audit{opts.audit_budget, 0};
    try {
        for (const auto& ft : big)
            if (find_critical_tournament_copy(out.q->B_digraph, ft.tournament,
                                              ft.family, opts.exec, &audit))
                throw FactViolationError(0, level_name + ": quotient lost freeness");
        for (auto& lvl : stats.levels)
            if (lvl.name == level_name) lvl.freeness_audit_run = true;
    } catch (const BudgetExhaustedError&) {
        stats.notes.push_back(level_name + ": freeness audit skipped (budget)");
    }
    return out;
}

}  // namespace

ExtensionResult extend_digraph(const ColoredDigraph& A,
                               const std::vector<PartialPermorphism>& maps,
                               const std::vector<ForbiddenTournament>& forbidden,
                               const PipelineOptions& opts) {
    FreenessConstraint constraint{TournamentFree{forbidden}};
    ValidationReport rep = validate_instance(A, maps, constraint);
    if (!rep.admissible()) throw NotFreeError(join(rep.violations));

    RunStats stats;
    std::vector<DesignatedFamily> families;
    DigraphLevelResult lvl = rec_digraph(A, maps, forbidden, families, opts, stats);

    ExtensionResult result;
    result.is_digraph = true;
    result.B_digraph =
        project_digraph(lvl.q->B_digraph, A.num_colors(), A.color_names);
    for (std::size_t i = 0; i < maps.size(); ++i)
        result.automorphisms.push_back(AutomorphismResult{lvl.fmaps[i], maps[i].chi});
    result.stats = std::move(stats);
    result.certificates = verify_extension(A, result, constraint, maps);

    // merge the lifted side-condition scans into the certificate: both
    // orientations, over the full colour structure
    std::vector<CheckResult> fam_checks;
    check_families_on(lvl.q->B_digraph, A.size(), families, opts.caps, fam_checks);
    bool all = true;
    std::string witness;
    for (const auto& cr : fam_checks)
        if (!cr.pass) {
            all = false;
            witness = cr.name + ": " + cr.witness;
        }
    for (auto& chk : result.certificates.checks)
        if (chk.name == "neighborhood-color-condition") {
            if (!all) {
                chk.pass = false;
                chk.witness = witness;
            } else if (!fam_checks.empty() && chk.witness.empty()) {
                chk.witness = std::to_string(fam_checks.size()) +
                              " lifted families checked";
            }
        }
    return result;
}

// ---------------------------------------------------------------------------
// Tournament enumeration and family reduction.

namespace {

int pair_index(int i, int j, int k) {
    // pairs (i < j) in lexicographic order
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += k - a - 1;
    return idx + (j - i - 1);
}

std::uint64_t relabel_mask(std::uint64_t mask, const std::vector<int>& perm, int k) {
    std::uint64_t out = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const bool fwd = mask & (std::uint64_t(1) << pair_index(i, j, k));
            const int pi = perm[i], pj = perm[j];
            const int a = std::min(pi, pj), b = std::max(pi, pj);
            // arc i->j maps to arc pi->pj
            const bool bit = fwd ? (pi < pj) : (pj < pi);
            if (bit) out |= std::uint64_t(1) << pair_index(a, b, k);
        }
    return out;
}

std::uint64_t canonical_mask(std::uint64_t mask, int k) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t(0);
    do {
        best = std::min(best, relabel_mask(mask, perm, k));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<Tournament> enumerate_tournaments(int k, Exec exec) {
    if (k < 1 || k > 6)
        throw BudgetExhaustedError("tournament enumeration supports 1 <= k <= 6");
    const int pairs = k * (k - 1) / 2;
    const std::uint64_t total = std::uint64_t(1) << pairs;
    std::set<std::uint64_t> canon;
#ifdef _OPENMP
    if (exec == Exec::parallel && total >= 1024) {
#pragma omp parallel
        {
            std::set<std::uint64_t> local;
#pragma omp for nowait
            for (long long mask = 0; mask < static_cast<long long>(total); ++mask)
                local.insert(canonical_mask(static_cast<std::uint64_t>(mask), k));
#pragma omp critical
            canon.merge(local);
        }
    } else
#else
    (void)exec;
#endif
    {
        for (std::uint64_t mask = 0; mask < total; ++mask)
            canon.insert(canonical_mask(mask, k));
    }
    std::vector<Tournament> out;
    for (std::uint64_t mask : canon) {
        Tournament t;
        for (int v = 0; v < k; ++v) t.digraph.add_vertex(std::to_string(v));
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                if (mask & (std::uint64_t(1) << pair_index(i, j, k)))
                    t.digraph.add_arc(i, j);
                else
                    t.digraph.add_arc(j, i);
            }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Tournament> reduce_family(const FamilySpec& family, int A_size) {
    std::vector<Tournament> out;
    for (const auto& t : family.finite)
        if (t.size() <= A_size) out.push_back(t);
    if (family.min_size)
        for (int s = *family.min_size; s <= A_size; ++s)
            for (auto& t : enumerate_tournaments(s)) out.push_back(std::move(t));
    for (auto& t : enumerate_tournaments(A_size + 1)) out.push_back(std::move(t));
    return out;
}

}  // namespace eppa
