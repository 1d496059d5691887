#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eppa {

// Instance fails a precondition of the construction (contains a forbidden
// pattern, or a map is not a permorphism).
struct NotFreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Group closure exceeded the element or byte cap.
struct GroupTooLargeError : std::runtime_error {
    std::size_t cap;
    explicit GroupTooLargeError(std::size_t cap_, const std::string& what_)
        : std::runtime_error(what_), cap(cap_) {}
};

// A construction level exceeded the structure cap.  `level` names the
// offending level so failures are diagnosable.
struct StructureCapError : std::runtime_error {
    std::string level;
    StructureCapError(std::string level_, const std::string& what_)
        : std::runtime_error(what_), level(std::move(level_)) {}
};

// An exhaustive search or the whole run spent its effort budget.  Distinct
// from a "none" answer by construction.
struct BudgetExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The matched neighbourhood/colour classes differ in size.  The counting
// identities make this impossible, so it signals an implementation bug.
struct ClassSizeMismatchError : std::logic_error {
    using std::logic_error::logic_error;
};

// One of the duplicator's basic facts failed to hold.  The facts are
// theorems, so this too signals an implementation bug.
struct FactViolationError : std::logic_error {
    int fact;
    FactViolationError(int fact_, const std::string& what_)
        : std::logic_error(what_), fact(fact_) {}
};

// Shared effort counter.  Heavy loops call spend(); exceeding the limit
// aborts the enclosing operation with BudgetExhaustedError.
struct WorkBudget {
    std::uint64_t limit = UINT64_MAX;
    std::uint64_t used = 0;

    void spend(std::uint64_t n) {
        used += n;
        if (used > limit)
            throw BudgetExhaustedError("work budget exhausted (" +
                                       std::to_string(limit) + " units)");
    }
    bool low() const { return used > limit; }
};

// Guardrails for the construction pipeline.
struct Caps {
    std::size_t group_cap = 100000;                  // max |Gamma|
    std::size_t structure_cap = 100000;              // max |C| per level and |B|
    std::size_t group_bytes_cap = std::size_t(1) << 28;  // element storage
    WorkBudget* budget = nullptr;                    // optional, shared

    void spend(std::uint64_t n) const {
        if (budget) budget->spend(n);
    }
};

// Kernel dispatch: parallel variants use OpenMP when available, the serial
// variants are the reference implementations kept for testing.
enum class Exec { serial, parallel };

}  // namespace eppa
