#pragma once

#include <functional>
#include <memory>

#include "eppa/duplicator.hpp"
#include "eppa/freeness.hpp"
#include "eppa/result.hpp"
#include "eppa/structures.hpp"
#include "eppa/typerealize.hpp"
#include "eppa/verify.hpp"

namespace eppa {

// Everything produced while descending one level of the induction: the new
// palette interpreted on A, the extended permutations, the lifted critical
// set and the designated colours for the next call.
struct LiftedContext {
    ColoredGraph A_lifted;
    int new_palette_index = 0;
    Color new_color_base = 0;
    std::vector<ColorPermutation> lifted_chis;
    std::shared_ptr<const CriticalColoringSet> lifted_critical;
    DesignatedColors lifted_designated;
    std::optional<long long> d_new;  // k * c_1 when the ledger is enabled
};

LiftedContext lift_colors(const ColoredTypeRealization& tr,
                          const SymmetryExtension& hs, const ColoredGraph& A,
                          const std::vector<PartialPermorphism>& maps,
                          const DesignatedColors& designated,
                          const CardinalityLedger& ledger);

// Observer hook for the per-level audits run by the acceptance suite.
struct PipelineObserver {
    std::function<void(const ColoredTypeRealization&,
                       const std::vector<PartialPermorphism>&,
                       const SymmetryExtension&)>
        on_graph_level;
    std::function<void(const BaseTypeRealization&,
                       const std::vector<PartialPermorphism>&,
                       const SymmetryExtension&)>
        on_graph_base;
    std::function<void(const QuotientStructure&)> on_quotient;
};

struct PipelineOptions {
    Caps caps;
    CardinalityLedger ledger;          // strict mode when enabled
    Exec exec = Exec::parallel;
    std::uint64_t audit_budget = 50'000'000;  // per-level freeness audits
    PipelineObserver* observer = nullptr;
};

// Theorem-1 front end: plain graphs, partial isomorphisms, K_m-freeness.
ExtensionResult extend_graph(const Graph& A,
                             const std::vector<PartialPermorphism>& maps, int m,
                             const PipelineOptions& opts = {});

// Lemma-2 engine: coloured graphs and permorphisms.  m is the clique size
// to forbid; m = 1 is the duplicator base case.
ExtensionResult extend_colored(const ColoredGraph& A,
                               const std::vector<PartialPermorphism>& maps, int m,
                               const CriticalColoringSet& critical,
                               const DesignatedColors& designated = {},
                               const PipelineOptions& opts = {});

// Theorem-4a / Lemma-5 engine: coloured digraphs against critical
// tournament families.
ExtensionResult extend_digraph(const ColoredDigraph& A,
                               const std::vector<PartialPermorphism>& maps,
                               const std::vector<ForbiddenTournament>& forbidden,
                               const PipelineOptions& opts = {});

// One representative per isomorphism class, deterministic order.
std::vector<Tournament> enumerate_tournaments(int k, Exec exec = Exec::parallel);

// F_0 = {F in family : |F| <= m} plus every tournament of size m+1 up to
// isomorphism.  `family` is either an explicit list or the rule "all
// tournaments of size >= s" encoded by min_size.
struct FamilySpec {
    std::vector<Tournament> finite;  // explicit members
    std::optional<int> min_size;     // rule form
};

std::vector<Tournament> reduce_family(const FamilySpec& family, int A_size);

}  // namespace eppa
