#include "eppa/duplicator.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace eppa {

namespace {

constexpr std::size_t kQuotientColorIntCap = std::size_t(1) << 26;

std::size_t fnv(const std::vector<int>& v, std::size_t seed) {
    std::size_t h = seed ^ 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::size_t DuplicatorGroup::Hash::operator()(const GroupElement& e) const {
    return fnv(e.h, fnv(e.chi, 0));
}

DuplicatorGroup DuplicatorGroup::generate(std::vector<GroupElement> generators,
                                          const Caps& caps) {
    DuplicatorGroup g;
    g.generators_ = std::move(generators);
    std::size_t chi_n = 0, h_n = 0;
    for (const auto& gen : g.generators_) {
        chi_n = std::max(chi_n, gen.chi.size());
        h_n = std::max(h_n, gen.h.size());
    }
    for (const auto& gen : g.generators_)
        if (gen.chi.size() != chi_n || gen.h.size() != h_n)
            throw std::logic_error("group generators act on different sets");
    GroupElement id;
    id.chi.resize(chi_n);
    for (std::size_t i = 0; i < chi_n; ++i) id.chi[i] = static_cast<Color>(i);
    id.h.resize(h_n);
    for (std::size_t i = 0; i < h_n; ++i) id.h[i] = static_cast<Vertex>(i);

    const std::size_t elem_bytes = (chi_n + h_n) * sizeof(int) + 64;
    std::size_t bytes = 0;
    auto push = [&](GroupElement e, int parent, int gen) -> std::size_t {
        auto it = g.index_.find(e);
        if (it != g.index_.end()) return it->second;
        bytes += elem_bytes;
        if (g.elements_.size() >= caps.group_cap)
            throw GroupTooLargeError(caps.group_cap,
                                     "group closure exceeds element cap " +
                                         std::to_string(caps.group_cap));
        if (bytes > caps.group_bytes_cap)
            throw GroupTooLargeError(caps.group_bytes_cap,
                                     "group closure exceeds byte cap");
        std::size_t idx = g.elements_.size();
        g.elements_.push_back(std::move(e));
        g.parent_.push_back({parent, gen});
        g.index_.emplace(g.elements_.back(), idx);
        return idx;
    };
    push(std::move(id), -1, -1);

    g.left_.assign(g.generators_.size(), {});
    std::size_t head = 0;
    while (head < g.elements_.size()) {
        const std::size_t cur = head++;
        for (std::size_t i = 0; i < g.generators_.size(); ++i) {
            caps.spend(chi_n + h_n);
            const GroupElement& gen = g.generators_[i];
            const GroupElement& e = g.elements_[cur];
            GroupElement prod;  // gen first, then e
            prod.chi.resize(chi_n);
            for (std::size_t x = 0; x < chi_n; ++x) prod.chi[x] = e.chi[gen.chi[x]];
            prod.h.resize(h_n);
            for (std::size_t x = 0; x < h_n; ++x) prod.h[x] = e.h[gen.h[x]];
            std::size_t idx = push(std::move(prod), static_cast<int>(cur),
                                   static_cast<int>(i));
            if (g.left_[i].size() <= cur)
                g.left_[i].resize(g.elements_.size(), SIZE_MAX);
            g.left_[i][cur] = idx;
        }
    }
    for (auto& row : g.left_) row.resize(g.elements_.size(), SIZE_MAX);

    g.right_.assign(g.generators_.size(),
                    std::vector<std::size_t>(g.elements_.size(), SIZE_MAX));
    for (std::size_t i = 0; i < g.generators_.size(); ++i) {
        const GroupElement& gen = g.generators_[i];
        for (std::size_t e = 0; e < g.elements_.size(); ++e) {
            caps.spend(chi_n + h_n);
            const GroupElement& el = g.elements_[e];
            GroupElement prod;  // el first, then gen
            prod.chi.resize(chi_n);
            for (std::size_t x = 0; x < chi_n; ++x) prod.chi[x] = gen.chi[el.chi[x]];
            prod.h.resize(h_n);
            for (std::size_t x = 0; x < h_n; ++x) prod.h[x] = gen.h[el.h[x]];
            g.right_[i][e] = g.index_of(prod);
        }
    }
    return g;
}

std::size_t DuplicatorGroup::index_of(const GroupElement& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
        throw FactViolationError(0, "group closure is not closed");
    return it->second;
}

std::size_t DuplicatorGroup::multiply(std::size_t a, std::size_t b) const {
    const GroupElement& ea = elements_[a];
    const GroupElement& eb = elements_[b];
    GroupElement prod;  // a first, then b
    prod.chi.resize(ea.chi.size());
    for (std::size_t x = 0; x < ea.chi.size(); ++x) prod.chi[x] = eb.chi[ea.chi[x]];
    prod.h.resize(ea.h.size());
    for (std::size_t x = 0; x < ea.h.size(); ++x) prod.h[x] = eb.h[ea.h[x]];
    return index_of(prod);
}

std::size_t DuplicatorGroup::inverse(std::size_t g) const {
    const GroupElement& e = elements_[g];
    GroupElement inv;
    inv.chi.resize(e.chi.size());
    for (std::size_t x = 0; x < e.chi.size(); ++x)
        inv.chi[e.chi[x]] = static_cast<Color>(x);
    inv.h.resize(e.h.size());
    for (std::size_t x = 0; x < e.h.size(); ++x)
        inv.h[e.h[x]] = static_cast<Vertex>(x);
    return index_of(inv);
}

std::vector<int> DuplicatorGroup::word(std::size_t g) const {
    std::vector<int> w;
    while (parent_[g].first >= 0) {
        w.push_back(parent_[g].second);
        g = parent_[g].first;
    }
    // g was built as gen * parent, so generators apply left to right in the
    // order collected
    return w;
}

// ---------------------------------------------------------------------------

namespace {

struct ClassAssignment {
    std::vector<int> class_of;
    std::vector<std::pair<Vertex, std::size_t>> representative;
    std::vector<std::string> names;
    int num_classes = 0;
};

ClassAssignment assign_classes(UnionFind& uf, int n, std::size_t G,
                               const std::vector<std::string>& base_names,
                               const Caps& caps) {
    ClassAssignment out;
    const std::size_t total = static_cast<std::size_t>(n) * G;
    out.class_of.assign(total, -1);
    std::unordered_map<int, int> by_root;
    // embedded copy of A first, in vertex order
    for (Vertex a = 0; a < n; ++a) {
        int root = uf.find(static_cast<int>(a * G));
        auto [it, fresh] = by_root.emplace(root, out.num_classes);
        if (!fresh)
            throw FactViolationError(1, "embedding of A is not injective");
        ++out.num_classes;
        (void)it;
    }
    for (std::size_t p = 0; p < total; ++p) {
        int root = uf.find(static_cast<int>(p));
        auto [it, fresh] = by_root.emplace(root, out.num_classes);
        if (fresh) {
            ++out.num_classes;
            if (static_cast<std::size_t>(out.num_classes) > caps.structure_cap)
                throw StructureCapError("quotient",
                                        "quotient exceeds structure cap");
        }
        out.class_of[p] = it->second;
    }
    out.representative.assign(out.num_classes, {kNoVertex, 0});
    for (std::size_t p = 0; p < total; ++p) {
        int c = out.class_of[p];
        if (out.representative[c].first == kNoVertex)
            out.representative[c] = {static_cast<Vertex>(p / G), p % G};
    }
    std::set<std::string> used(base_names.begin(), base_names.end());
    out.names.resize(out.num_classes);
    for (int c = 0; c < out.num_classes; ++c) {
        if (c < n) {
            out.names[c] = base_names[c];
        } else {
            static const std::string prefix = "b";
            int k = c - n;
            for (;;) {
                std::string cand = prefix + std::to_string(k);
                if (used.insert(cand).second) {
                    out.names[c] = cand;
                    break;
                }
                ++k;
            }
        }
    }
    return out;
}

}  // namespace

QuotientStructure build_quotient(const ColoredGraph& A,
                                 const std::vector<PartialPermorphism>& maps,
                                 std::shared_ptr<const DuplicatorGroup> gamma,
                                 const Graph& C,
                                 const DesignatedColors* designated,
                                 const Caps& caps) {
    QuotientStructure q;
    q.base_size = A.size();
    q.group = gamma;
    q.is_digraph = false;
    const int n = A.size();
    const std::size_t G = gamma->size();
    const std::size_t total = static_cast<std::size_t>(n) * G;

    UnionFind uf(total);
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (Vertex a = 0; a < n; ++a) {
            if (!maps[i].defined(a)) continue;
            const Vertex pa = maps[i].apply(a);
            for (std::size_t g = 0; g < G; ++g)
                uf.unite(static_cast<int>(pa * G + g),
                         static_cast<int>(a * G + gamma->left_mul(i, g)));
        }

    ClassAssignment cls = assign_classes(uf, n, G, A.graph.names(), caps);
    q.class_of = std::move(cls.class_of);
    q.representative = std::move(cls.representative);
    q.num_classes = cls.num_classes;

    // fact 1: every pair agrees with its class representative
    std::vector<std::vector<Vertex>> hinv(G);
    for (std::size_t g = 0; g < G; ++g) {
        const auto& h = gamma->element(g).h;
        hinv[g].resize(h.size());
        for (std::size_t x = 0; x < h.size(); ++x) hinv[g][h[x]] = static_cast<Vertex>(x);
    }
    for (Vertex a = 0; a < n; ++a)
        for (std::size_t g = 0; g < G; ++g) {
            caps.spend(1 + A.colors(a).size());
            const int c = q.cls(a, g);
            auto [ra, rg] = q.representative[c];
            const GroupElement& eg = gamma->element(g);
            const GroupElement& er = gamma->element(rg);
            if (eg.h[a] != er.h[ra])
                throw FactViolationError(1, "a^h differs from representative");
            ColorPermutation chi_g{eg.chi}, chi_r{er.chi};
            if (chi_g.apply(A.colors(a)) != chi_r.apply(A.colors(ra)))
                throw FactViolationError(1, "U(a)^chi differs from representative");
            // fact 3: neighbour transport into C and designated transport
            for (Vertex cc = 0; cc < C.size(); ++cc) {
                caps.spend(1);
                if (C.adjacent(a, hinv[g][cc]) != C.adjacent(ra, hinv[rg][cc]))
                    throw FactViolationError(3, "C-neighbour transport failed");
            }
            if (designated)
                for (int j = 1; j <= A.table.num_palettes(); ++j) {
                    auto da = designated->get(a, j);
                    auto dr = designated->get(ra, j);
                    if (da && dr && chi_g.apply(*da) != chi_r.apply(*dr))
                        throw FactViolationError(3, "designated-colour transport failed");
                }
        }

    // relation: votes per ordered class pair; conflicts violate fact 2
    std::unordered_map<std::uint64_t, char> vote;
    vote.reserve(total * std::max(1, n));
    for (std::size_t g = 0; g < G; ++g)
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = a + 1; b < n; ++b) {
                caps.spend(1);
                const std::uint64_t e = q.cls(a, g), f = q.cls(b, g);
                const std::uint64_t key = std::min(e, f) << 32 | std::max(e, f);
                const char bit = A.graph.adjacent(a, b) ? 1 : 0;
                auto [it, fresh] = vote.emplace(key, bit);
                if (!fresh && it->second != bit)
                    throw FactViolationError(2, "edge relation depends on representatives");
                if (e == f && bit)
                    throw FactViolationError(2, "edge collapses into a loop");
            }

    q.B.table = A.table;
    for (int c = 0; c < q.num_classes; ++c) q.B.add_vertex(cls.names[c]);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [key, bit] : vote)
        if (bit) edges.emplace_back(static_cast<int>(key >> 32),
                                    static_cast<int>(key & 0xffffffffu));
    std::sort(edges.begin(), edges.end());
    for (auto [e, f] : edges) q.B.graph.add_edge(e, f);

    // colours from the canonical representative (fact 1 makes this exact)
    std::size_t color_ints = 0;
    for (int c = 0; c < q.num_classes; ++c) {
        auto [ra, rg] = q.representative[c];
        ColorPermutation chi{gamma->element(rg).chi};
        q.B.color_of[c] = chi.apply(A.colors(ra));
        color_ints += q.B.color_of[c].size();
        if (color_ints > kQuotientColorIntCap)
            throw StructureCapError("quotient", "quotient colour table too large");
    }

    // facts 4 and 5: the embedding is induced
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b)
            if (q.B.graph.adjacent(q.cls(a, 0), q.cls(b, 0)) !=
                A.graph.adjacent(a, b))
                throw FactViolationError(4, "embedded adjacency differs from A");
        if (q.B.colors(q.cls(a, 0)) != A.colors(a))
            throw FactViolationError(5, "embedded colours differ from A");
    }
    return q;
}

QuotientStructure build_quotient_digraph(const ColoredDigraph& A,
                                         const std::vector<PartialPermorphism>& maps,
                                         std::shared_ptr<const DuplicatorGroup> gamma,
                                         const Digraph& C,
                                         const Caps& caps) {
    QuotientStructure q;
    q.base_size = A.size();
    q.group = gamma;
    q.is_digraph = true;
    const int n = A.size();
    const std::size_t G = gamma->size();
    const std::size_t total = static_cast<std::size_t>(n) * G;

    UnionFind uf(total);
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (Vertex a = 0; a < n; ++a) {
            if (!maps[i].defined(a)) continue;
            const Vertex pa = maps[i].apply(a);
            for (std::size_t g = 0; g < G; ++g)
                uf.unite(static_cast<int>(pa * G + g),
                         static_cast<int>(a * G + gamma->left_mul(i, g)));
        }

    ClassAssignment cls = assign_classes(uf, n, G, A.digraph.names(), caps);
    q.class_of = std::move(cls.class_of);
    q.representative = std::move(cls.representative);
    q.num_classes = cls.num_classes;

    std::vector<std::vector<Vertex>> hinv(G);
    for (std::size_t g = 0; g < G; ++g) {
        const auto& h = gamma->element(g).h;
        hinv[g].resize(h.size());
        for (std::size_t x = 0; x < h.size(); ++x) hinv[g][h[x]] = static_cast<Vertex>(x);
    }
    for (Vertex a = 0; a < n; ++a)
        for (std::size_t g = 0; g < G; ++g) {
            caps.spend(1 + A.colors(a).size());
            const int c = q.cls(a, g);
            auto [ra, rg] = q.representative[c];
            const GroupElement& eg = gamma->element(g);
            const GroupElement& er = gamma->element(rg);
            if (eg.h[a] != er.h[ra])
                throw FactViolationError(1, "a^h differs from representative");
            ColorPermutation chi_g{eg.chi}, chi_r{er.chi};
            if (chi_g.apply(A.colors(a)) != chi_r.apply(A.colors(ra)))
                throw FactViolationError(1, "U(a)^chi differs from representative");
            for (Vertex cc = 0; cc < C.size(); ++cc) {
                caps.spend(1);
                if (C.arc(a, hinv[g][cc]) != C.arc(ra, hinv[rg][cc]) ||
                    C.arc(hinv[g][cc], a) != C.arc(hinv[rg][cc], ra))
                    throw FactViolationError(3, "C-neighbour transport failed");
            }
        }

    std::unordered_map<std::uint64_t, char> vote;
    for (std::size_t g = 0; g < G; ++g)
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b) {
                if (a == b) continue;
                caps.spend(1);
                const std::uint64_t e = q.cls(a, g), f = q.cls(b, g);
                const std::uint64_t key = e << 32 | f;
                const char bit = A.digraph.arc(a, b) ? 1 : 0;
                auto [it, fresh] = vote.emplace(key, bit);
                if (!fresh && it->second != bit)
                    throw FactViolationError(2, "arc relation depends on representatives");
                if (e == f && bit)
                    throw FactViolationError(2, "arc collapses into a loop");
            }
    for (const auto& [key, bit] : vote) {
        if (!bit) continue;
        const std::uint64_t rev = (key & 0xffffffffu) << 32 | (key >> 32);
        auto it = vote.find(rev);
        if (it != vote.end() && it->second)
            throw FactViolationError(2, "quotient breaks antisymmetry");
    }

    q.B_digraph.color_names = A.color_names;
    for (int c = 0; c < q.num_classes; ++c) q.B_digraph.add_vertex(cls.names[c]);
    std::vector<std::pair<int, int>> arcs;
    for (const auto& [key, bit] : vote)
        if (bit) arcs.emplace_back(static_cast<int>(key >> 32),
                                   static_cast<int>(key & 0xffffffffu));
    std::sort(arcs.begin(), arcs.end());
    for (auto [e, f] : arcs) q.B_digraph.digraph.add_arc(e, f);

    std::size_t color_ints = 0;
    for (int c = 0; c < q.num_classes; ++c) {
        auto [ra, rg] = q.representative[c];
        ColorPermutation chi{gamma->element(rg).chi};
        q.B_digraph.color_of[c] = chi.apply(A.colors(ra));
        color_ints += q.B_digraph.color_of[c].size();
        if (color_ints > kQuotientColorIntCap)
            throw StructureCapError("quotient", "quotient colour table too large");
    }

    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = 0; b < n; ++b)
            if (a != b &&
                q.B_digraph.digraph.arc(q.cls(a, 0), q.cls(b, 0)) !=
                    A.digraph.arc(a, b))
                throw FactViolationError(4, "embedded arcs differ from A");
        if (q.B_digraph.colors(q.cls(a, 0)) != A.colors(a))
            throw FactViolationError(5, "embedded colours differ from A");
    }
    return q;
}

std::vector<std::vector<int>> quotient_automorphisms(const QuotientStructure& q) {
    std::vector<std::vector<int>> fs;
    const int n = q.base_size;
    const std::size_t G = q.group->size();
    for (std::size_t i = 0; i < q.group->num_generators(); ++i) {
        std::vector<int> f(q.num_classes, -1);
        for (Vertex a = 0; a < n; ++a)
            for (std::size_t g = 0; g < G; ++g) {
                const int src = q.cls(a, g);
                const int dst = q.cls(a, q.group->right_mul(i, g));
                if (f[src] == -1)
                    f[src] = dst;
                else if (f[src] != dst)
                    throw FactViolationError(0, "f_i is not well defined");
            }
        std::vector<char> hit(q.num_classes, 0);
        for (int c = 0; c < q.num_classes; ++c) {
            if (f[c] < 0 || hit[f[c]])
                throw FactViolationError(0, "f_i is not a bijection");
            hit[f[c]] = 1;
        }
        fs.push_back(std::move(f));
    }
    return fs;
}

std::vector<int> QuotientStructure::phi(std::size_t g) const {
    auto fs = quotient_automorphisms(*this);
    std::vector<int> map(num_classes);
    for (int c = 0; c < num_classes; ++c) map[c] = c;
    for (int letter : group->word(g))
        for (int c = 0; c < num_classes; ++c) map[c] = fs[letter][map[c]];
    return map;
}

std::vector<int> orbit_witness(const QuotientStructure& q, int class_id) {
    // among the pairs of the class, pick the one whose group element has the
    // shortest word (elements are indexed in BFS order); embedded classes
    // contain a (a, identity) pair and get the empty word
    const std::size_t G = q.group->size();
    std::size_t rg = G;
    for (Vertex a = 0; a < q.base_size; ++a)
        for (std::size_t g = 0; g < G && g < rg; ++g)
            if (q.cls(a, g) == class_id) rg = g;
    if (rg == G)
        throw FactViolationError(0, "class has no member pairs");
    std::vector<int> gword = q.group->word(rg);
    std::vector<int> witness;
    for (auto it = gword.rbegin(); it != gword.rend(); ++it)
        witness.push_back(-(*it + 1));
    // check the word really lands inside A
    auto fs = quotient_automorphisms(q);
    std::vector<std::vector<int>> finv(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        finv[i].assign(q.num_classes, -1);
        for (int c = 0; c < q.num_classes; ++c) finv[i][fs[i][c]] = c;
    }
    int cur = class_id;
    for (int letter : witness)
        cur = letter > 0 ? fs[letter - 1][cur] : finv[-letter - 1][cur];
    if (cur >= q.base_size)
        throw FactViolationError(0, "orbit witness does not reach A");
    return witness;
}

}  // namespace eppa
