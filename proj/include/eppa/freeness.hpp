#pragma once

#include <optional>
#include <variant>

#include "eppa/structures.hpp"

namespace eppa {

// ---------------------------------------------------------------------------
// FreenessConstraint: which forbidden-pattern condition an instance lives
// under.

struct CliqueFree {
    int m = 3;
    CriticalColoringSet critical;  // U_c; trivial() when r = 0
};

struct TournamentFree {
    std::vector<ForbiddenTournament> forbidden;
};

struct WeakHomFree {
    std::vector<RelationalStructure> forbidden;
};

struct FreenessConstraint {
    std::variant<CliqueFree, TournamentFree, WeakHomFree> value;

    const CliqueFree* clique() const { return std::get_if<CliqueFree>(&value); }
    const TournamentFree* tournament() const { return std::get_if<TournamentFree>(&value); }
    const WeakHomFree* weakhom() const { return std::get_if<WeakHomFree>(&value); }

    std::vector<std::string> validate() const;
};

// A certificate of non-freeness: the vertices matched, and the critical
// colouring matched when the constraint is coloured.  Witnesses re-check
// positively against their constraint.
struct Witness {
    std::vector<Vertex> vertices;
    std::vector<Color> coloring;        // graph case: one colour per palette
    std::vector<ColorSet> color_tuple;  // digraph case
};

// ---------------------------------------------------------------------------
// Searches.  Every search is deterministic: candidates are scanned in
// lexicographic order over sorted vertex tuples and the first witness wins
// (the parallel kernels reduce to the same minimum).  `budget`, when given,
// bounds the explored nodes; exhaustion raises BudgetExhaustedError, which
// is distinct from a "none" answer.

std::optional<Witness> find_critical_clique(const ColoredGraph& A, int m,
                                            const CriticalColoringSet& critical,
                                            Exec exec = Exec::parallel,
                                            WorkBudget* budget = nullptr);

// Plain K_m detection on an uncoloured graph.
std::optional<Witness> find_clique(const Graph& A, int m,
                                   Exec exec = Exec::parallel,
                                   WorkBudget* budget = nullptr);

// Witness = image of an embedding of T whose colour tuple lies in family.
std::optional<Witness> find_critical_tournament_copy(const ColoredDigraph& A,
                                                     const Tournament& T,
                                                     const TupleFamily& family,
                                                     Exec exec = Exec::parallel,
                                                     WorkBudget* budget = nullptr);

// Copies with s_2,...,s_l inside the first `anchor_size` vertices (the
// embedded A) and s_1 anywhere; this is the freeness notion the
// type-realizing step preserves.
std::optional<Witness> find_critical_copy_anchored(const ColoredDigraph& C,
                                                   int anchor_size,
                                                   const Tournament& T,
                                                   const TupleFamily& family,
                                                   WorkBudget* budget = nullptr);

// ---------------------------------------------------------------------------
// Realisability predicates.

struct CardinalityLedger {
    bool enabled = false;
    std::vector<int> d;  // d_j per palette, 1-based index j -> d[j-1]
};

// (A_0, U_0) is realisable iff the ledger constraint holds (when enabled)
// and no m-clique inside A_0 is critically coloured by a tuple from
// U_c restricted to U_0.
bool is_realisable_graph(const ColoredGraph& A, const std::vector<Vertex>& A0,
                         const ColorSet& U0, int m,
                         const CriticalColoringSet& critical,
                         const CardinalityLedger* ledger = nullptr);

// (A_0^+, A_0^-, U_0) is realisable iff no reduced tournament T_j^+ u T_j^-
// embeds into A_0^+ u A_0^- with the sign split respected and colour tuple
// (U_0, U(s_2), ..., U(s_l)) in U_j.  Tournaments of size 1 never obstruct.
bool is_realisable_digraph(const ColoredDigraph& A,
                           const std::vector<Vertex>& Aplus,
                           const std::vector<Vertex>& Aminus, const ColorSet& U0,
                           const std::vector<ForbiddenTournament>& forbidden);

// ---------------------------------------------------------------------------
// Theorem-6 definitional checkers.

bool is_link_structure(const RelationalStructure& L);

// Enumerates link structures up to isomorphism (size <= max arity) and
// compares embeddability.  `budget` guards signatures whose enumeration
// explodes.
bool same_link_type(const RelationalStructure& A, const RelationalStructure& B,
                    WorkBudget* budget = nullptr);

// rho maps T's universe into A's (rho[t] = vertex of A); weak homomorphisms
// preserve held tuples.
bool is_weak_homomorphism(const std::vector<int>& rho,
                          const RelationalStructure& T,
                          const RelationalStructure& A);

struct WeakHomWitness {
    int forbidden_index = -1;
    std::vector<int> rho;
};

std::optional<WeakHomWitness> weakhom_free(const RelationalStructure& A,
                                           const std::vector<RelationalStructure>& F,
                                           WorkBudget* budget = nullptr);

// Embedding test (induced): used by the link-type checker and tests.
bool embeds(const RelationalStructure& L, const RelationalStructure& A);

}  // namespace eppa
