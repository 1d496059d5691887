#include "eppa/structures.hpp"

#include <algorithm>
#include <unordered_map>

#include "eppa/freeness.hpp"

namespace eppa {

bool contains(const ColorSet& s, Color c) {
    return std::binary_search(s.begin(), s.end(), c);
}

ColorSet intersect(const ColorSet& a, const ColorSet& b) {
    ColorSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

bool is_sorted_set(const ColorSet& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Graph

Vertex add_named(std::vector<std::string>& names, std::string name) {
    names.push_back(std::move(name));
    return static_cast<Vertex>(names.size() - 1);
}

static void insert_sorted(std::vector<Vertex>& v, Vertex x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

Vertex Graph::add_vertex(std::string name) {
    adj_.emplace_back();
    return add_named(names_, std::move(name));
}

void Graph::add_edge(Vertex u, Vertex v) {
    insert_sorted(adj_[u], v);
    if (u != v) insert_sorted(adj_[v], u);
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::optional<Vertex> Graph::index_of(const std::string& name) const {
    for (Vertex v = 0; v < size(); ++v)
        if (names_[v] == name) return v;
    return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<std::string> Graph::validate() const {
    std::vector<std::string> bad;
    for (Vertex v = 0; v < size(); ++v)
        if (adjacent(v, v)) bad.push_back("irreflexivity: loop at " + names_[v]);
    std::set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) bad.push_back("duplicate vertex name " + n);
    return bad;
}

// ---------------------------------------------------------------------------
// Digraph

Vertex Digraph::add_vertex(std::string name) {
    out_.emplace_back();
    in_.emplace_back();
    return add_named(names_, std::move(name));
}

void Digraph::add_arc(Vertex u, Vertex v) {
    insert_sorted(out_[u], v);
    insert_sorted(in_[v], u);
}

bool Digraph::arc(Vertex u, Vertex v) const {
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::optional<Vertex> Digraph::index_of(const std::string& name) const {
    for (Vertex v = 0; v < size(); ++v)
        if (names_[v] == name) return v;
    return std::nullopt;
}

std::vector<std::pair<Vertex, Vertex>> Digraph::arcs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : out_[u]) out.emplace_back(u, v);
    return out;
}

std::vector<std::string> Digraph::validate() const {
    std::vector<std::string> bad;
    for (Vertex v = 0; v < size(); ++v)
        if (arc(v, v)) bad.push_back("irreflexivity: loop at " + names_[v]);
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : out_[u])
            if (u < v && arc(v, u))
                bad.push_back("antisymmetry: both arcs between " + names_[u] +
                              " and " + names_[v]);
    std::set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) bad.push_back("duplicate vertex name " + n);
    return bad;
}

// ---------------------------------------------------------------------------
// ColorTable

Color ColorTable::add_color(std::string name, int palette_index) {
    names.push_back(std::move(name));
    palette_of.push_back(palette_index);
    palettes[palette_index - 1].count++;
    return static_cast<Color>(names.size() - 1);
}

int ColorTable::add_palette() {
    Palette p;
    p.index = num_palettes() + 1;
    p.first = num_colors();
    p.count = 0;
    palettes.push_back(p);
    return p.index;
}

std::optional<Color> ColorTable::index_of(const std::string& name) const {
    for (Color c = 0; c < num_colors(); ++c)
        if (names[c] == name) return c;
    return std::nullopt;
}

ColorSet ColorTable::palette_slice(const ColorSet& s, int j) const {
    const Palette& p = palettes[j - 1];
    auto lo = std::lower_bound(s.begin(), s.end(), p.first);
    auto hi = std::lower_bound(s.begin(), s.end(), p.first + p.count);
    return ColorSet(lo, hi);
}

// ---------------------------------------------------------------------------
// ColoredGraph / ColoredDigraph

Vertex ColoredGraph::add_vertex(std::string name) {
    color_of.emplace_back();
    return graph.add_vertex(std::move(name));
}

std::vector<std::string> ColoredGraph::validate() const {
    std::vector<std::string> bad = graph.validate();
    if (static_cast<int>(color_of.size()) != graph.size())
        bad.push_back("colorOf size differs from vertex count");
    for (Vertex v = 0; v < size() && v < static_cast<int>(color_of.size()); ++v) {
        if (!is_sorted_set(color_of[v]))
            bad.push_back("colour set of " + graph.name(v) + " not sorted/unique");
        for (Color c : color_of[v])
            if (c < 0 || c >= table.num_colors())
                bad.push_back("undeclared colour on " + graph.name(v));
    }
    {
        int expect = 0;
        for (const Palette& p : table.palettes) {
            if (p.first != expect) bad.push_back("palette ranges not contiguous");
            expect = p.first + p.count;
        }
        if (expect != table.num_colors())
            bad.push_back("colours outside any palette");
    }
    return bad;
}

Vertex ColoredDigraph::add_vertex(std::string name) {
    color_of.emplace_back();
    return digraph.add_vertex(std::move(name));
}

Color ColoredDigraph::add_color(std::string name) {
    color_names.push_back(std::move(name));
    return static_cast<Color>(color_names.size() - 1);
}

std::optional<Color> ColoredDigraph::color_index_of(const std::string& name) const {
    for (Color c = 0; c < num_colors(); ++c)
        if (color_names[c] == name) return c;
    return std::nullopt;
}

std::vector<std::string> ColoredDigraph::validate() const {
    std::vector<std::string> bad = digraph.validate();
    if (static_cast<int>(color_of.size()) != digraph.size())
        bad.push_back("colorOf size differs from vertex count");
    for (Vertex v = 0; v < size() && v < static_cast<int>(color_of.size()); ++v) {
        if (!is_sorted_set(color_of[v]))
            bad.push_back("colour set of " + digraph.name(v) + " not sorted/unique");
        for (Color c : color_of[v])
            if (c < 0 || c >= num_colors())
                bad.push_back("undeclared colour on " + digraph.name(v));
    }
    return bad;
}

// ---------------------------------------------------------------------------
// ColorPermutation

ColorPermutation ColorPermutation::identity(int n) {
    ColorPermutation chi;
    chi.map.resize(n);
    for (int i = 0; i < n; ++i) chi.map[i] = i;
    return chi;
}

ColorSet ColorPermutation::apply(const ColorSet& s) const {
    ColorSet out;
    out.reserve(s.size());
    for (Color c : s) out.push_back(map[c]);
    std::sort(out.begin(), out.end());
    return out;
}

ColorPermutation ColorPermutation::inverse() const {
    ColorPermutation inv;
    inv.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = static_cast<Color>(i);
    return inv;
}

ColorPermutation ColorPermutation::then(const ColorPermutation& other) const {
    ColorPermutation out;
    out.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) out.map[i] = other.map[map[i]];
    return out;
}

bool ColorPermutation::is_permutation() const {
    std::vector<char> seen(map.size(), 0);
    for (Color c : map) {
        if (c < 0 || c >= static_cast<Color>(map.size()) || seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

bool ColorPermutation::preserves_palettes(const ColorTable& table) const {
    if (static_cast<int>(map.size()) != table.num_colors()) return false;
    for (Color c = 0; c < table.num_colors(); ++c)
        if (table.palette_of[c] != table.palette_of[map[c]]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// PartialPermorphism

std::vector<Vertex> PartialPermorphism::domain() const {
    std::vector<Vertex> d;
    for (Vertex v = 0; v < static_cast<Vertex>(map.size()); ++v)
        if (map[v] != kNoVertex) d.push_back(v);
    return d;
}

std::vector<Vertex> PartialPermorphism::range() const {
    std::vector<Vertex> r;
    for (Vertex v = 0; v < static_cast<Vertex>(map.size()); ++v)
        if (map[v] != kNoVertex) r.push_back(map[v]);
    std::sort(r.begin(), r.end());
    return r;
}

bool PartialPermorphism::is_total(int n) const {
    if (static_cast<int>(map.size()) != n) return false;
    return std::all_of(map.begin(), map.end(),
                       [](Vertex v) { return v != kNoVertex; });
}

bool PartialPermorphism::is_injective() const {
    std::set<Vertex> seen;
    for (Vertex v : map)
        if (v != kNoVertex && !seen.insert(v).second) return false;
    return true;
}

PartialPermorphism PartialPermorphism::empty(int n, int colors) {
    PartialPermorphism p;
    p.map.assign(n, kNoVertex);
    p.chi = ColorPermutation::identity(colors);
    return p;
}

std::vector<std::string> permorphism_violations(const ColoredGraph& A,
                                                const PartialPermorphism& p) {
    std::vector<std::string> bad;
    if (static_cast<int>(p.map.size()) != A.size()) {
        bad.push_back("map size differs from vertex count");
        return bad;
    }
    if (!p.is_injective()) bad.push_back("map not injective");
    if (!p.chi.is_permutation() ||
        static_cast<int>(p.chi.map.size()) != A.table.num_colors())
        bad.push_back("chi is not a permutation of the colour universe");
    else if (!p.chi.preserves_palettes(A.table))
        bad.push_back("chi does not preserve palettes");
    else {
        auto dom = p.domain();
        for (Vertex a : dom)
            for (Vertex b : dom)
                if (a < b && A.graph.adjacent(a, b) !=
                                 A.graph.adjacent(p.apply(a), p.apply(b)))
                    bad.push_back("edge relation not respected on (" +
                                  A.graph.name(a) + "," + A.graph.name(b) + ")");
        for (Vertex a : dom)
            if (p.chi.apply(A.colors(a)) != A.colors(p.apply(a)))
                bad.push_back("colour sets not respected at " + A.graph.name(a));
    }
    return bad;
}

std::vector<std::string> permorphism_violations(const ColoredDigraph& A,
                                                const PartialPermorphism& p) {
    std::vector<std::string> bad;
    if (static_cast<int>(p.map.size()) != A.size()) {
        bad.push_back("map size differs from vertex count");
        return bad;
    }
    if (!p.is_injective()) bad.push_back("map not injective");
    if (!p.chi.is_permutation() ||
        static_cast<int>(p.chi.map.size()) != A.num_colors())
        bad.push_back("chi is not a permutation of the colour universe");
    else {
        auto dom = p.domain();
        for (Vertex a : dom)
            for (Vertex b : dom)
                if (a != b && A.digraph.arc(a, b) !=
                                  A.digraph.arc(p.apply(a), p.apply(b)))
                    bad.push_back("arc relation not respected on (" +
                                  A.digraph.name(a) + "," + A.digraph.name(b) + ")");
        for (Vertex a : dom)
            if (p.chi.apply(A.colors(a)) != A.colors(p.apply(a)))
                bad.push_back("colour sets not respected at " + A.digraph.name(a));
    }
    return bad;
}

// ---------------------------------------------------------------------------
// CriticalColoringSet

CriticalColoringSet CriticalColoringSet::explicit_set(
    int arity, std::set<std::vector<Color>> tuples) {
    CriticalColoringSet s;
    s.arity_ = arity;
    s.tuples_ = std::move(tuples);
    return s;
}

CriticalColoringSet CriticalColoringSet::trivial() {
    return explicit_set(0, {std::vector<Color>{}});
}

CriticalColoringSet CriticalColoringSet::lifted(
    std::shared_ptr<const CriticalColoringSet> parent,
    std::shared_ptr<const ColoredGraph> carrier, Color new_color_base) {
    CriticalColoringSet s;
    s.arity_ = parent->arity() + 1;
    s.lift_ = std::make_shared<Lift>(Lift{std::move(parent), std::move(carrier),
                                          new_color_base});
    return s;
}

bool CriticalColoringSet::contains(const std::vector<Color>& tuple) const {
    std::vector<ColorSet> W;
    W.reserve(tuple.size());
    for (Color c : tuple) W.push_back(ColorSet{c});
    return meets_product(W);
}

bool CriticalColoringSet::meets_product(const std::vector<ColorSet>& W) const {
    if (static_cast<int>(W.size()) != arity_) return false;
    if (!lift_) {
        for (const auto& t : tuples_) {
            bool ok = true;
            for (int j = 0; j < arity_ && ok; ++j)
                ok = eppa::contains(W[j], t[j]);
            if (ok) return true;
        }
        return false;
    }
    // Lifted: last coordinate names a vertex d of the carrier; d must hold
    // the first r coordinates, which must lie in the parent set.
    const ColoredGraph& C = *lift_->carrier;
    const int r = arity_ - 1;
    for (Color v : W[r]) {
        if (v < lift_->new_color_base) continue;
        Vertex d = v - lift_->new_color_base;
        if (d >= C.size()) continue;
        std::vector<ColorSet> inner;
        inner.reserve(r);
        bool feasible = true;
        for (int j = 0; j < r; ++j) {
            // the parent tuple's j-th colour must lie in W_j and on d
            inner.push_back(intersect(W[j], C.colors(d)));
            if (inner.back().empty()) {
                feasible = false;
                break;
            }
        }
        if (feasible && lift_->parent->meets_product(inner)) return true;
    }
    return false;
}

bool CriticalColoringSet::chi_invariant(const ColorPermutation& chi) const {
    if (lift_) return true;  // invariance of lifted sets is a theorem
    for (const auto& t : tuples_) {
        std::vector<Color> image(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) image[j] = chi.apply(t[j]);
        if (!tuples_.count(image)) return false;
    }
    return true;
}

std::optional<std::set<std::vector<Color>>> CriticalColoringSet::materialize(
    std::size_t cap) const {
    if (!lift_) {
        if (tuples_.size() > cap) return std::nullopt;
        return tuples_;
    }
    auto parent = lift_->parent->materialize(cap);
    if (!parent) return std::nullopt;
    const ColoredGraph& C = *lift_->carrier;
    std::set<std::vector<Color>> out;
    for (const auto& t : *parent) {
        for (Vertex d = 0; d < C.size(); ++d) {
            bool all = true;
            for (Color c : t)
                if (!C.has_color(d, c)) { all = false; break; }
            if (!all) continue;
            std::vector<Color> ext = t;
            ext.push_back(lift_->new_color_base + d);
            out.insert(std::move(ext));
            if (out.size() > cap) return std::nullopt;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// DesignatedColors

std::optional<Color> DesignatedColors::get(Vertex a, int palette) const {
    auto it = entries.find({a, palette});
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> DesignatedColors::violations(
    const ColoredGraph& A, const std::vector<PartialPermorphism>& maps) const {
    std::vector<std::string> bad;
    for (const auto& [key, color] : entries) {
        auto [a, j] = key;
        if (a < 0 || a >= A.size()) {
            bad.push_back("designated colour on unknown vertex");
            continue;
        }
        if (j < 1 || j > A.table.num_palettes() ||
            !A.table.palettes[j - 1].contains(color)) {
            bad.push_back("designated colour outside palette " + std::to_string(j));
            continue;
        }
        for (Vertex b = 0; b < A.size(); ++b)
            if (A.has_color(b, color) != A.graph.adjacent(a, b)) {
                bad.push_back("U_a^j mismatch at a=" + A.graph.name(a) +
                              " j=" + std::to_string(j) + " b=" + A.graph.name(b));
                break;
            }
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& p = maps[i];
        for (const auto& [key, color] : entries) {
            auto [a, j] = key;
            if (a < 0 || a >= static_cast<Vertex>(p.map.size()) || !p.defined(a))
                continue;
            auto img = get(p.apply(a), j);
            if (!img || p.chi.apply(color) != *img)
                bad.push_back("(U_a^j)^chi_i != U_{a^p_i}^j for map " +
                              std::to_string(i) + ", a=" + A.graph.name(a) +
                              ", j=" + std::to_string(j));
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Tournament

bool Tournament::valid() const {
    if (!digraph.validate().empty()) return false;
    for (Vertex u = 0; u < digraph.size(); ++u)
        for (Vertex v = u + 1; v < digraph.size(); ++v)
            if (!digraph.arc(u, v) && !digraph.arc(v, u)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// TupleFamily

TupleFamily TupleFamily::universal(int arity) {
    TupleFamily f;
    f.kind_ = Kind::Universal;
    f.arity_ = arity;
    return f;
}

TupleFamily TupleFamily::explicit_set(int arity,
                                      std::set<std::vector<ColorSet>> tuples) {
    TupleFamily f;
    f.kind_ = Kind::Explicit;
    f.arity_ = arity;
    f.tuples_ = std::move(tuples);
    return f;
}

TupleFamily TupleFamily::lifted(std::shared_ptr<const TupleFamily> parent,
                                std::shared_ptr<const ColoredDigraph> carrier,
                                std::vector<int> eps, Color new_color_base,
                                int old_universe_size) {
    TupleFamily f;
    f.kind_ = Kind::Lifted;
    f.arity_ = parent->arity() - 1;
    f.lift_ = std::make_shared<Lift>(Lift{std::move(parent), std::move(carrier),
                                          std::move(eps), new_color_base,
                                          old_universe_size});
    return f;
}

bool TupleFamily::contains(const std::vector<ColorSet>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity_) return false;
    switch (kind_) {
        case Kind::Universal:
            return true;
        case Kind::Explicit:
            return tuples_.count(tuple) > 0;
        case Kind::Lifted: {
            const ColoredDigraph& C = *lift_->carrier;
            const int old = lift_->old_universe_size;
            // restriction of each coordinate to the old universe
            std::vector<ColorSet> inner(arity_ + 1);
            for (int l = 0; l < arity_; ++l) {
                auto hi = std::lower_bound(tuple[l].begin(), tuple[l].end(), old);
                inner[l + 1] = ColorSet(tuple[l].begin(), hi);
            }
            for (Vertex c = 0; c < C.size(); ++c) {
                bool ok = true;
                for (int l = 0; l < arity_ && ok; ++l) {
                    Color want = lift_->new_color_base + 2 * c +
                                 (lift_->eps[l] > 0 ? 0 : 1);
                    ok = eppa::contains(tuple[l], want);
                }
                if (!ok) continue;
                inner[0] = C.colors(c);
                if (lift_->parent->contains(inner)) return true;
            }
            return false;
        }
    }
    return false;
}

bool TupleFamily::chi_invariant(const ColorPermutation& chi) const {
    if (kind_ != Kind::Explicit) return true;
    for (const auto& t : tuples_) {
        std::vector<ColorSet> image(t.size());
        for (std::size_t l = 0; l < t.size(); ++l) image[l] = chi.apply(t[l]);
        if (!tuples_.count(image)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// RelationalStructure

bool RelationalStructure::holds(int symbol, const std::vector<int>& tuple) const {
    return relations[symbol].count(tuple) > 0;
}

std::vector<std::string> RelationalStructure::validate() const {
    std::vector<std::string> bad;
    if (relations.size() != signature.size()) {
        bad.push_back("relation count differs from signature");
        return bad;
    }
    for (std::size_t k = 0; k < signature.size(); ++k)
        for (const auto& t : relations[k]) {
            if (static_cast<int>(t.size()) != signature[k].arity)
                bad.push_back("tuple arity mismatch for " + signature[k].name);
            for (int x : t)
                if (x < 0 || x >= size())
                    bad.push_back("tuple entry outside universe for " +
                                  signature[k].name);
        }
    return bad;
}

bool RelationalStructure::same_signature(const RelationalStructure& other) const {
    return signature == other.signature;
}

// ---------------------------------------------------------------------------
// validate_instance

ValidationReport validate_instance(const ColoredGraph& A,
                                   const std::vector<PartialPermorphism>& maps,
                                   const FreenessConstraint& constraint,
                                   const DesignatedColors* designated) {
    ValidationReport rep;
    auto push = [&rep](std::vector<std::string> v) {
        for (auto& s : v) rep.violations.push_back(std::move(s));
    };
    push(A.validate());
    push(constraint.validate());
    const CliqueFree* cf = constraint.clique();
    if (!cf) {
        rep.violations.push_back("constraint kind does not match a graph instance");
        return rep;
    }
    if (cf->critical.arity() != A.table.num_palettes())
        rep.violations.push_back("critical colouring arity differs from palette count");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (auto& s : permorphism_violations(A, maps[i]))
            rep.violations.push_back("map " + std::to_string(i) + ": " + s);
        if (!cf->critical.chi_invariant(maps[i].chi))
            rep.violations.push_back("U_c not chi_" + std::to_string(i) +
                                     "-invariant");
    }
    if (rep.admissible()) {
        if (auto w = find_critical_clique(A, cf->m, cf->critical)) {
            std::string msg = "A not U_c-K_" + std::to_string(cf->m) + "-free (";
            for (std::size_t k = 0; k < w->vertices.size(); ++k)
                msg += (k ? "," : "") + A.graph.name(w->vertices[k]);
            rep.violations.push_back(msg + ")");
        }
    }
    if (designated)
        push(designated->violations(A, maps));
    return rep;
}

ValidationReport validate_instance(const ColoredDigraph& A,
                                   const std::vector<PartialPermorphism>& maps,
                                   const FreenessConstraint& constraint) {
    ValidationReport rep;
    auto push = [&rep](std::vector<std::string> v) {
        for (auto& s : v) rep.violations.push_back(std::move(s));
    };
    push(A.validate());
    push(constraint.validate());
    const TournamentFree* tf = constraint.tournament();
    if (!tf) {
        rep.violations.push_back("constraint kind does not match a digraph instance");
        return rep;
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (auto& s : permorphism_violations(A, maps[i]))
            rep.violations.push_back("map " + std::to_string(i) + ": " + s);
        for (std::size_t j = 0; j < tf->forbidden.size(); ++j)
            if (!tf->forbidden[j].family.chi_invariant(maps[i].chi))
                rep.violations.push_back("U_" + std::to_string(j + 1) +
                                         " not chi_" + std::to_string(i) +
                                         "-invariant");
    }
    if (rep.admissible()) {
        for (std::size_t j = 0; j < tf->forbidden.size(); ++j)
            if (auto w = find_critical_tournament_copy(A, tf->forbidden[j].tournament,
                                                       tf->forbidden[j].family)) {
                std::string msg = "A not U_j-T_j-free for tournament " +
                                  std::to_string(j + 1) + " (";
                for (std::size_t k = 0; k < w->vertices.size(); ++k)
                    msg += (k ? "," : "") + A.digraph.name(w->vertices[k]);
                rep.violations.push_back(msg + ")");
            }
    }
    return rep;
}

}  // namespace eppa
