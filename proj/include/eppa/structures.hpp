#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eppa/errors.hpp"

namespace eppa {

// Vertices and colours are dense indices into per-structure tables; the
// tables carry the user-visible names.  Extensions always append, so a
// structure's vertex (and colour) indices stay valid in every extension of
// it built by this library.
using Vertex = int;
using Color = int;

constexpr Vertex kNoVertex = -1;

// Sorted list of colour indices.  Sorted representation gives deterministic
// iteration and cheap intersection.
using ColorSet = std::vector<Color>;

bool contains(const ColorSet& s, Color c);
ColorSet intersect(const ColorSet& a, const ColorSet& b);
bool is_sorted_set(const ColorSet& s);

// ---------------------------------------------------------------------------
// Graph: finite, irreflexive, symmetric edge relation.

class Graph {
public:
    Graph() = default;

    Vertex add_vertex(std::string name);
    // Permissive: records the edge even if it breaks an invariant, so that
    // validate() can report the problem instead of crashing the parser.
    void add_edge(Vertex u, Vertex v);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Vertex v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    bool adjacent(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    std::optional<Vertex> index_of(const std::string& name) const;

    // Unordered pairs (u < v), lexicographic.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    std::vector<std::string> validate() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Vertex>> adj_;  // sorted
};

// ---------------------------------------------------------------------------
// Digraph: finite, irreflexive, antisymmetric arc relation.

class Digraph {
public:
    Digraph() = default;

    Vertex add_vertex(std::string name);
    void add_arc(Vertex u, Vertex v);  // u -> v; permissive, see Graph

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Vertex v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    bool arc(Vertex u, Vertex v) const;
    const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
    const std::vector<Vertex>& in(Vertex v) const { return in_[v]; }
    std::optional<Vertex> index_of(const std::string& name) const;

    std::vector<std::pair<Vertex, Vertex>> arcs() const;

    std::vector<std::string> validate() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Vertex>> out_, in_;  // sorted
};

// ---------------------------------------------------------------------------
// Palettes.  Colours of palette j occupy a contiguous index range; the
// construction appends whole palettes, so this invariant is stable.

struct Palette {
    int index = 0;  // j, 1-based
    Color first = 0;
    int count = 0;
    bool contains(Color c) const { return c >= first && c < first + count; }
};

// Colour table shared by ColoredGraph: global colour order plus the palette
// partition.
struct ColorTable {
    std::vector<std::string> names;
    std::vector<int> palette_of;  // 1-based palette index per colour
    std::vector<Palette> palettes;

    int num_colors() const { return static_cast<int>(names.size()); }
    int num_palettes() const { return static_cast<int>(palettes.size()); }
    Color add_color(std::string name, int palette_index);
    int add_palette();  // returns new palette index (r+1)
    std::optional<Color> index_of(const std::string& name) const;
    // Slice of a sorted ColorSet belonging to palette j.
    ColorSet palette_slice(const ColorSet& s, int j) const;
};

// ---------------------------------------------------------------------------
// ColoredGraph: the U-graph of the construction.  A is always a prefix of
// any extension C built from it.

struct ColoredGraph {
    Graph graph;
    ColorTable table;
    std::vector<ColorSet> color_of;  // per vertex, sorted

    int size() const { return graph.size(); }
    const ColorSet& colors(Vertex v) const { return color_of[v]; }
    bool has_color(Vertex v, Color c) const { return contains(color_of[v], c); }

    Vertex add_vertex(std::string name);
    std::vector<std::string> validate() const;
};

// ColoredDigraph: single colour universe, no per-vertex cardinality
// constraint.
struct ColoredDigraph {
    Digraph digraph;
    std::vector<std::string> color_names;
    std::vector<ColorSet> color_of;

    int size() const { return digraph.size(); }
    int num_colors() const { return static_cast<int>(color_names.size()); }
    const ColorSet& colors(Vertex v) const { return color_of[v]; }
    bool has_color(Vertex v, Color c) const { return contains(color_of[v], c); }

    Vertex add_vertex(std::string name);
    Color add_color(std::string name);
    std::optional<Color> color_index_of(const std::string& name) const;
    std::vector<std::string> validate() const;
};

// ---------------------------------------------------------------------------
// ColorPermutation: bijection of the colour universe.  The relation symbol
// is fixed implicitly.  In the graph case it must preserve each palette
// setwise.

struct ColorPermutation {
    std::vector<Color> map;  // identity when empty domain

    static ColorPermutation identity(int n);
    int size() const { return static_cast<int>(map.size()); }
    Color apply(Color c) const { return map[c]; }
    ColorSet apply(const ColorSet& s) const;
    ColorPermutation inverse() const;
    // this followed by other
    ColorPermutation then(const ColorPermutation& other) const;
    bool is_permutation() const;
    bool preserves_palettes(const ColorTable& table) const;
    bool operator==(const ColorPermutation&) const = default;
};

// ---------------------------------------------------------------------------
// PartialPermorphism: partial injective vertex map p with a colour
// permutation chi.  For an uncoloured instance chi is the identity on an
// empty universe.

struct PartialPermorphism {
    std::vector<Vertex> map;  // size |A|, kNoVertex where undefined
    ColorPermutation chi;

    bool defined(Vertex v) const { return map[v] != kNoVertex; }
    Vertex apply(Vertex v) const { return map[v]; }
    std::vector<Vertex> domain() const;
    std::vector<Vertex> range() const;
    bool is_total(int n) const;
    bool is_injective() const;

    static PartialPermorphism empty(int n, int colors);
};

// Permorphism checks (exhaustive over the domain).
std::vector<std::string> permorphism_violations(const ColoredGraph& A,
                                                const PartialPermorphism& p);
std::vector<std::string> permorphism_violations(const ColoredDigraph& A,
                                                const PartialPermorphism& p);

// ---------------------------------------------------------------------------
// CriticalColoringSet: the set U_c of forbidden colourings, one colour per
// palette.  Lifting a level produces sets too large to materialise, so the
// type is layered: an explicit tuple set, or a view lifted over a realised
// structure C.  Membership of (V_1,...,V_{r+1}) in a lifted set holds iff
// (V_1,...,V_r) lies in the parent and the vertex d of C named by V_{r+1}
// carries the colours V_1,...,V_r.

class CriticalColoringSet {
public:
    CriticalColoringSet() : arity_(0) {}  // empty explicit set of arity 0

    static CriticalColoringSet explicit_set(int arity,
                                            std::set<std::vector<Color>> tuples);
    // The one-element set holding the empty tuple; U_c-K_m-freeness w.r.t.
    // it is plain K_m-freeness.
    static CriticalColoringSet trivial();
    static CriticalColoringSet lifted(std::shared_ptr<const CriticalColoringSet> parent,
                                      std::shared_ptr<const ColoredGraph> carrier,
                                      Color new_color_base);

    int arity() const { return arity_; }
    bool is_explicit() const { return !lift_; }

    bool contains(const std::vector<Color>& tuple) const;
    // True iff some tuple of the set meets the product W_1 x ... x W_r.
    bool meets_product(const std::vector<ColorSet>& W) const;

    // Explicit sets only: closure under the coordinatewise image.
    bool chi_invariant(const ColorPermutation& chi) const;

    const std::set<std::vector<Color>>& explicit_tuples() const { return tuples_; }
    // Expand a layered set into explicit tuples; nullopt once `cap` tuples
    // would be exceeded.
    std::optional<std::set<std::vector<Color>>> materialize(std::size_t cap) const;

private:
    struct Lift {
        std::shared_ptr<const CriticalColoringSet> parent;
        std::shared_ptr<const ColoredGraph> carrier;
        Color new_color_base;
    };
    int arity_;
    std::set<std::vector<Color>> tuples_;
    std::shared_ptr<const Lift> lift_;
};

// ---------------------------------------------------------------------------
// DesignatedColors: the colours U_a^j; entry (a, j) is the colour of palette
// j held exactly by the neighbours of a.

struct DesignatedColors {
    std::map<std::pair<Vertex, int>, Color> entries;

    bool empty() const { return entries.empty(); }
    std::optional<Color> get(Vertex a, int palette) const;
    // Hypothesis checks: b in U_a^j iff aRb, and chi_i-compatibility.
    std::vector<std::string> violations(const ColoredGraph& A,
                                        const std::vector<PartialPermorphism>& maps) const;
};

// ---------------------------------------------------------------------------
// Tournament: a total antisymmetric digraph.  Vertex 0 is the designated
// point t_1 used by the splitting step.

struct Tournament {
    Digraph digraph;

    int size() const { return digraph.size(); }
    bool valid() const;
};

// TupleFamily: the digraph-side critical set U_j for one tournament: a set
// of l_j-tuples of colour sets.  Layered like CriticalColoringSet, plus a
// universal form (all tuples) used when plain T_j-freeness is meant.
class TupleFamily {
public:
    TupleFamily() : kind_(Kind::Universal), arity_(0) {}

    static TupleFamily universal(int arity);
    static TupleFamily explicit_set(int arity, std::set<std::vector<ColorSet>> tuples);
    // Lifted over the realised digraph `carrier`.  `eps` holds, for each
    // position of the reduced tournament, +1 if the point lay in T^+ and -1
    // if in T^-.  New colours are laid out as new_base + 2c (U_c^+) and
    // new_base + 2c + 1 (U_c^-).
    static TupleFamily lifted(std::shared_ptr<const TupleFamily> parent,
                              std::shared_ptr<const ColoredDigraph> carrier,
                              std::vector<int> eps, Color new_color_base,
                              int old_universe_size);

    int arity() const { return arity_; }
    bool is_universal() const { return kind_ == Kind::Universal; }
    bool is_explicit() const { return kind_ == Kind::Explicit; }

    bool contains(const std::vector<ColorSet>& tuple) const;

    // Explicit sets only.
    bool chi_invariant(const ColorPermutation& chi) const;
    const std::set<std::vector<ColorSet>>& explicit_tuples() const { return tuples_; }

private:
    enum class Kind { Universal, Explicit, Lifted };
    struct Lift {
        std::shared_ptr<const TupleFamily> parent;
        std::shared_ptr<const ColoredDigraph> carrier;
        std::vector<int> eps;
        Color new_color_base;
        int old_universe_size;
    };
    Kind kind_;
    int arity_;
    std::set<std::vector<ColorSet>> tuples_;
    std::shared_ptr<const Lift> lift_;
};

// A forbidden tournament with its critical tuple set.
struct ForbiddenTournament {
    Tournament tournament;
    TupleFamily family;
};

// ---------------------------------------------------------------------------
// RelationalStructure: general finite relational structures for the
// link-type and weak-homomorphism checkers.

struct RelationSymbol {
    std::string name;
    int arity = 0;
    bool operator==(const RelationSymbol&) const = default;
};

struct RelationalStructure {
    std::vector<RelationSymbol> signature;
    std::vector<std::string> universe;
    // relations[k] = held tuples of symbol k, each of length signature[k].arity
    std::vector<std::set<std::vector<int>>> relations;

    int size() const { return static_cast<int>(universe.size()); }
    bool holds(int symbol, const std::vector<int>& tuple) const;
    std::vector<std::string> validate() const;
    bool same_signature(const RelationalStructure& other) const;
};

// ---------------------------------------------------------------------------
// validate_instance

struct ValidationReport {
    std::vector<std::string> violations;
    bool admissible() const { return violations.empty(); }
};

// Forward declaration; defined in freeness.hpp.
struct FreenessConstraint;

ValidationReport validate_instance(const ColoredGraph& A,
                                   const std::vector<PartialPermorphism>& maps,
                                   const FreenessConstraint& constraint,
                                   const DesignatedColors* designated = nullptr);
ValidationReport validate_instance(const ColoredDigraph& A,
                                   const std::vector<PartialPermorphism>& maps,
                                   const FreenessConstraint& constraint);

}  // namespace eppa
