#pragma once

#include <stdexcept>
#include <string>

#include "eppa/pipeline.hpp"
#include "eppa/result.hpp"

namespace eppa {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parsed instance file.  Digraph instances given by the rule
// "all tournaments of size >= s" carry the rule; the constraint holds the
// reduced finite family (reduction needs |A|, done at parse time).
struct Instance {
    bool is_digraph = false;
    ColoredGraph graph;
    ColoredDigraph digraph;
    std::vector<PartialPermorphism> maps;
    FreenessConstraint constraint;
    DesignatedColors designated;
    std::optional<int> family_min_size;
};

Instance parse_instance(const std::string& json_text);

// Canonical instance serialization; parse_instance(serialize_instance(i))
// reproduces i exactly.  Layered critical sets are not serializable and are
// rejected.
std::string serialize_instance(const Instance& instance);

std::string serialize_result(const Instance& instance, const ExtensionResult& result);

// Reads the extension and automorphisms back; certificates are always
// recomputed, never trusted.  Throws ParseError on malformed input or a
// vertex set that does not extend the instance.
ExtensionResult parse_result(const std::string& json_text, const Instance& instance);

std::string dot_dump(const ExtensionResult& result);

}  // namespace eppa
