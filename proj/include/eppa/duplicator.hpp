#pragma once

#include <memory>

#include "eppa/structures.hpp"

namespace eppa {

// gamma = (chi, h): a permutation of the colour universe paired with a
// bijection of the carrier C.  The relation symbol is fixed implicitly.
struct GroupElement {
    std::vector<Color> chi;
    std::vector<Vertex> h;
    bool operator==(const GroupElement&) const = default;
};

// The finite group generated by the gamma_i, enumerated explicitly by BFS.
// Element 0 is the identity; products are resolved by table lookup.
// Composition acts left-to-right: x^(ab) = (x^a)^b.
class DuplicatorGroup {
public:
    static DuplicatorGroup generate(std::vector<GroupElement> generators,
                                    const Caps& caps);

    std::size_t size() const { return elements_.size(); }
    std::size_t num_generators() const { return generators_.size(); }
    const GroupElement& element(std::size_t g) const { return elements_[g]; }
    const GroupElement& generator(std::size_t i) const { return generators_[i]; }

    // index of gamma_i * element(g)  (gamma_i acts first)
    std::size_t left_mul(std::size_t i, std::size_t g) const { return left_[i][g]; }
    // index of element(g) * gamma_i
    std::size_t right_mul(std::size_t i, std::size_t g) const { return right_[i][g]; }
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t g) const;
    // generator indices whose left-to-right product is element(g)
    std::vector<int> word(std::size_t g) const;

private:
    std::size_t index_of(const GroupElement& e) const;

    std::vector<GroupElement> generators_;
    std::vector<GroupElement> elements_;
    std::vector<std::vector<std::size_t>> left_, right_;
    std::vector<std::pair<int, int>> parent_;  // (parent element, generator)
    struct Hash {
        std::size_t operator()(const GroupElement& e) const;
    };
    std::unordered_map<GroupElement, std::size_t, Hash> index_;
};

// B = A x Gamma / ==, the induced structure on the classes, the embedding
// of A, and everything needed to read off the automorphisms.  Classes
// 0..|A|-1 are the embedded copy of A, in A's vertex order; the remaining
// classes are ordered by their least (vertex, element) pair, which is also
// the canonical representative.
struct QuotientStructure {
    int base_size = 0;
    std::shared_ptr<const DuplicatorGroup> group;
    std::vector<int> class_of;  // pair (a, g) at index a * |Gamma| + g
    std::vector<std::pair<Vertex, std::size_t>> representative;
    int num_classes = 0;
    bool is_digraph = false;

    // induced structure (colours over the full universe of the base level)
    ColoredGraph B;
    ColoredDigraph B_digraph;

    int cls(Vertex a, std::size_t g) const {
        return class_of[static_cast<std::size_t>(a) * group->size() + g];
    }
    // action of phi(element g) on classes: (a, g') -> (a, g' * g)
    std::vector<int> phi(std::size_t g) const;
};

// Builds the quotient and asserts the basic facts (representative
// independence of the structure, embedded copy induced, designated-colour
// transport).  Throws FactViolationError on any failure; those are
// theorems, so a throw is a bug.
QuotientStructure build_quotient(const ColoredGraph& A,
                                 const std::vector<PartialPermorphism>& maps,
                                 std::shared_ptr<const DuplicatorGroup> gamma,
                                 const Graph& C,
                                 const DesignatedColors* designated,
                                 const Caps& caps);

QuotientStructure build_quotient_digraph(const ColoredDigraph& A,
                                         const std::vector<PartialPermorphism>& maps,
                                         std::shared_ptr<const DuplicatorGroup> gamma,
                                         const Digraph& C,
                                         const Caps& caps);

// f_i as class maps; f_i((a, g)/==) = (a, g * gamma_i)/==.  Well-definedness
// is audited pair by pair.
std::vector<std::vector<int>> quotient_automorphisms(const QuotientStructure& q);

// A generator word w with b^w inside the embedded A; entries are +(i+1) for
// f_i and -(i+1) for its inverse, applied left to right.
std::vector<int> orbit_witness(const QuotientStructure& q, int class_id);

}  // namespace eppa
