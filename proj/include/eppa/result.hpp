#pragma once

#include <string>
#include <vector>

#include "eppa/structures.hpp"

namespace eppa {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string witness;  // concrete re-checkable data on failure
};

struct CertificateReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct AutomorphismResult {
    std::vector<Vertex> map;  // total on B
    ColorPermutation chi;     // over the result's colour universe
};

struct LevelStats {
    std::string name;
    std::size_t carrier_size = 0;
    std::size_t new_colors = 0;
    bool freeness_audit_run = false;
};

struct RunStats {
    std::vector<LevelStats> levels;
    std::size_t group_size = 0;
    std::size_t quotient_size = 0;
    std::vector<std::string> notes;
};

// Side-condition family for digraphs: the map a -> U_a together with its
// orientation.  sign +1 reads aRb => b in U_a, sign -1 reads bRa => b in U_a.
struct DesignatedFamily {
    int sign = +1;
    std::vector<Color> color_of_vertex;  // per vertex of A; colours of B_full
};

struct ExtensionResult {
    bool is_digraph = false;
    // final extension over the instance's own signature
    ColoredGraph B;
    ColoredDigraph B_digraph;
    std::vector<AutomorphismResult> automorphisms;
    CertificateReport certificates;
    RunStats stats;
};

}  // namespace eppa
