#pragma once

#include <optional>

#include "eppa/freeness.hpp"
#include "eppa/result.hpp"
#include "eppa/structures.hpp"

namespace eppa {

// Independent certification.  Every check is computed by definition-level
// enumeration using only the structures and freeness modules; nothing here
// shares code with the construction.
//
// Check names, in order: induced-substructure, extension, bijectivity,
// automorphism-permorphism, freeness, orbit-condition,
// neighborhood-color-condition.

CertificateReport verify_extension(const ColoredGraph& A,
                                   const ExtensionResult& result,
                                   const FreenessConstraint& constraint,
                                   const std::vector<PartialPermorphism>& maps,
                                   const DesignatedColors* designated = nullptr,
                                   WorkBudget* budget = nullptr);

CertificateReport verify_extension(const ColoredDigraph& A,
                                   const ExtensionResult& result,
                                   const FreenessConstraint& constraint,
                                   const std::vector<PartialPermorphism>& maps,
                                   WorkBudget* budget = nullptr);

// Exhaustive existence oracle for micro instances.  Searches structures
// B >= A with |B| <= size_cap (canonical order: by size, then lexicographic
// relation sets) together with automorphism tuples extending the maps.
// Returns the first certified hit or nullopt when none exists within the
// cap; running out of budget raises BudgetExhaustedError instead, so
// "none-within-cap" is never conflated with "gave up".
std::optional<ExtensionResult> brute_force_extension(
    const ColoredGraph& A, const std::vector<PartialPermorphism>& maps,
    const FreenessConstraint& constraint, int size_cap,
    WorkBudget* budget = nullptr);

std::optional<ExtensionResult> brute_force_extension(
    const ColoredDigraph& A, const std::vector<PartialPermorphism>& maps,
    const FreenessConstraint& constraint, int size_cap,
    WorkBudget* budget = nullptr);

}  // namespace eppa
