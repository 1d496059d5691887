#pragma once

#include "eppa/freeness.hpp"
#include "eppa/structures.hpp"

namespace eppa {

// Type-realizing steps.  Every carrier C extends A as a prefix: vertex i of
// A is vertex i of C.  New points are named "<prefix><counter>" with a
// deterministic counter, and carry all their neighbours inside A.

// Base case: C is a pure graph; every exact-neighbourhood class over A has
// size exactly c0.
struct BaseTypeRealization {
    Graph C;
    int base_size = 0;  // |A|
    long long c0 = 0;
};

// Inductive case: C is a U_c-K_{m+1}-free U-graph; every superset class
// {c : N_A(c) >= A_0, U(c) = U_0} has size c[|A_0|] when (A_0, U_0) is
// realisable and 0 otherwise.
struct ColoredTypeRealization {
    ColoredGraph C;
    int base_size = 0;
    int inner_m = 1;                 // realisability clique size
    std::vector<long long> c;        // c[t], 0 <= t <= |A|
    std::shared_ptr<const CriticalColoringSet> critical;
    CardinalityLedger ledger;
};

// Digraph base case: pure digraph, exact (N^+, N^-) classes of size c0.
struct DigraphBaseTypeRealization {
    Digraph C;
    int base_size = 0;
    long long c0 = 0;
};

// Digraph inductive case: superset classes over (A_0^+, A_0^-, U_0).
struct DigraphTypeRealization {
    ColoredDigraph C;
    int base_size = 0;
    std::vector<long long> c;
    std::vector<ForbiddenTournament> forbidden;  // the size->1 reduced view used
};

// Total bijections h_i of C, one per partial permorphism.
struct SymmetryExtension {
    std::vector<std::vector<Vertex>> h;
};

// ---------------------------------------------------------------------------

BaseTypeRealization realize_types_base(const Graph& A,
                                       const std::string& prefix = "t1_",
                                       const Caps& caps = {});

SymmetryExtension extend_to_symmetries_base(const BaseTypeRealization& tr,
                                            const std::vector<PartialPermorphism>& maps);

// inner_m is the clique size of the realisability predicate; the resulting
// C is U_c-K_{inner_m+1}-free.
ColoredTypeRealization realize_types_inductive(const ColoredGraph& A, int inner_m,
                                               const CriticalColoringSet& critical,
                                               const CardinalityLedger& ledger,
                                               const Caps& caps,
                                               const std::string& prefix,
                                               const std::string& level_name);

SymmetryExtension extend_to_symmetries_colored(const ColoredTypeRealization& tr,
                                               const std::vector<PartialPermorphism>& maps);

DigraphBaseTypeRealization realize_types_digraph_base(const Digraph& A,
                                                      const std::string& prefix = "t1_",
                                                      const Caps& caps = {});

SymmetryExtension extend_to_symmetries_digraph_base(
    const DigraphBaseTypeRealization& tr,
    const std::vector<PartialPermorphism>& maps);

DigraphTypeRealization realize_types_digraph(const ColoredDigraph& A,
                                             const std::vector<ForbiddenTournament>& forbidden,
                                             const Caps& caps,
                                             const std::string& prefix,
                                             const std::string& level_name);

SymmetryExtension extend_to_symmetries_digraph(const DigraphTypeRealization& tr,
                                               const std::vector<PartialPermorphism>& maps);

// Independent recounts of the counting identities; used by the construction
// as an always-on audit and by the acceptance suite.  `exec` picks the
// kernel for the recount scans.
void audit_base_counts(const Graph& A, const BaseTypeRealization& tr,
                       Exec exec = Exec::parallel);
void audit_inductive_counts(const ColoredGraph& A, const ColoredTypeRealization& tr,
                            const Caps& caps = {});
void audit_digraph_base_counts(const Digraph& A, const DigraphBaseTypeRealization& tr);
void audit_digraph_counts(const ColoredDigraph& A, const DigraphTypeRealization& tr,
                          const Caps& caps = {});

}  // namespace eppa
