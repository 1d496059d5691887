#include "eppa/io.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace eppa {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

Vertex need_vertex(const std::optional<Vertex>& v, const std::string& name) {
    if (!v) throw ParseError("unknown vertex \"" + name + "\"");
    return *v;
}

Color need_color(const std::optional<Color>& c, const std::string& name) {
    if (!c) throw ParseError("unknown colour \"" + name + "\"");
    return *c;
}

ColorPermutation parse_chi(const json& j, int num_colors,
                           const std::function<std::optional<Color>(const std::string&)>& lookup) {
    ColorPermutation chi = ColorPermutation::identity(num_colors);
    if (!j.contains("chi")) return chi;
    for (auto it = j["chi"].begin(); it != j["chi"].end(); ++it) {
        Color from = need_color(lookup(it.key()), it.key());
        Color to = need_color(lookup(it.value().get<std::string>()),
                              it.value().get<std::string>());
        chi.map[from] = to;
    }
    if (!chi.is_permutation()) throw ParseError("chi is not a permutation");
    return chi;
}

Tournament parse_tournament(const json& jt) {
    Tournament t;
    const int size = jt.at("size").get<int>();
    if (size < 1 || size > 16) throw ParseError("tournament size out of range");
    for (int v = 0; v < size; ++v) t.digraph.add_vertex(std::to_string(v));
    for (const auto& arc : jt.at("arcs")) {
        int u = arc.at(0).get<int>(), v = arc.at(1).get<int>();
        if (u < 0 || v < 0 || u >= size || v >= size)
            throw ParseError("tournament arc out of range");
        t.digraph.add_arc(u, v);
    }
    return t;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("instance file needs a \"kind\" field");
    Instance inst;
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "graph") {
        inst.is_digraph = false;
        ColoredGraph& A = inst.graph;
        for (const auto& v : j.at("vertices"))
            A.add_vertex(v.get<std::string>());
        if (j.contains("edges"))
            for (const auto& e : j["edges"]) {
                Vertex u = need_vertex(A.graph.index_of(e.at(0).get<std::string>()),
                                       e.at(0).get<std::string>());
                Vertex v = need_vertex(A.graph.index_of(e.at(1).get<std::string>()),
                                       e.at(1).get<std::string>());
                A.graph.add_edge(u, v);
            }
        if (j.contains("palettes"))
            for (const auto& jp : j["palettes"]) {
                int idx = A.table.add_palette();
                for (const auto& c : jp.at("colors"))
                    A.table.add_color(c.get<std::string>(), idx);
            }
        if (j.contains("colors"))
            for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
                Vertex v = need_vertex(A.graph.index_of(it.key()), it.key());
                ColorSet cs;
                for (const auto& c : it.value())
                    cs.push_back(need_color(A.table.index_of(c.get<std::string>()),
                                            c.get<std::string>()));
                std::sort(cs.begin(), cs.end());
                A.color_of[v] = std::move(cs);
            }
        auto lookup = [&A](const std::string& n) { return A.table.index_of(n); };
        if (j.contains("maps"))
            for (const auto& jm : j["maps"]) {
                PartialPermorphism p =
                    PartialPermorphism::empty(A.size(), A.table.num_colors());
                for (auto it = jm.at("map").begin(); it != jm.at("map").end(); ++it) {
                    Vertex from = need_vertex(A.graph.index_of(it.key()), it.key());
                    Vertex to = need_vertex(
                        A.graph.index_of(it.value().get<std::string>()),
                        it.value().get<std::string>());
                    p.map[from] = to;
                }
                p.chi = parse_chi(jm, A.table.num_colors(), lookup);
                inst.maps.push_back(std::move(p));
            }
        const json& jc = j.at("constraint");
        if (jc.at("type").get<std::string>() != "clique_free")
            throw ParseError("graph instances use the clique_free constraint");
        CliqueFree cf;
        cf.m = jc.at("m").get<int>();
        if (jc.contains("critical")) {
            std::set<std::vector<Color>> tuples;
            for (const auto& jt : jc["critical"]) {
                std::vector<Color> tup;
                for (const auto& c : jt)
                    tup.push_back(need_color(A.table.index_of(c.get<std::string>()),
                                             c.get<std::string>()));
                if (static_cast<int>(tup.size()) != A.table.num_palettes())
                    throw ParseError("critical tuple arity differs from palette count");
                tuples.insert(std::move(tup));
            }
            cf.critical = CriticalColoringSet::explicit_set(A.table.num_palettes(),
                                                            std::move(tuples));
        } else if (A.table.num_palettes() == 0) {
            cf.critical = CriticalColoringSet::trivial();
        } else {
            cf.critical = CriticalColoringSet::explicit_set(A.table.num_palettes(), {});
        }
        inst.constraint.value = std::move(cf);
        if (j.contains("designated"))
            for (auto it = j["designated"].begin(); it != j["designated"].end(); ++it) {
                Vertex a = need_vertex(A.graph.index_of(it.key()), it.key());
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
                    int palette = std::stoi(jt.key());
                    Color c = need_color(
                        A.table.index_of(jt.value().get<std::string>()),
                        jt.value().get<std::string>());
                    inst.designated.entries[{a, palette}] = c;
                }
            }
        return inst;
    }

    if (kind == "digraph") {
        inst.is_digraph = true;
        ColoredDigraph& A = inst.digraph;
        for (const auto& v : j.at("vertices"))
            A.add_vertex(v.get<std::string>());
        if (j.contains("arcs"))
            for (const auto& e : j["arcs"]) {
                Vertex u = need_vertex(A.digraph.index_of(e.at(0).get<std::string>()),
                                       e.at(0).get<std::string>());
                Vertex v = need_vertex(A.digraph.index_of(e.at(1).get<std::string>()),
                                       e.at(1).get<std::string>());
                A.digraph.add_arc(u, v);
            }
        if (j.contains("universe"))
            for (const auto& c : j["universe"]) A.add_color(c.get<std::string>());
        if (j.contains("colors"))
            for (auto it = j["colors"].begin(); it != j["colors"].end(); ++it) {
                Vertex v = need_vertex(A.digraph.index_of(it.key()), it.key());
                ColorSet cs;
                for (const auto& c : it.value())
                    cs.push_back(need_color(A.color_index_of(c.get<std::string>()),
                                            c.get<std::string>()));
                std::sort(cs.begin(), cs.end());
                A.color_of[v] = std::move(cs);
            }
        auto lookup = [&A](const std::string& n) { return A.color_index_of(n); };
        if (j.contains("maps"))
            for (const auto& jm : j["maps"]) {
                PartialPermorphism p =
                    PartialPermorphism::empty(A.size(), A.num_colors());
                for (auto it = jm.at("map").begin(); it != jm.at("map").end(); ++it) {
                    Vertex from = need_vertex(A.digraph.index_of(it.key()), it.key());
                    Vertex to = need_vertex(
                        A.digraph.index_of(it.value().get<std::string>()),
                        it.value().get<std::string>());
                    p.map[from] = to;
                }
                p.chi = parse_chi(jm, A.num_colors(), lookup);
                inst.maps.push_back(std::move(p));
            }
        const json& jc = j.at("constraint");
        const std::string type = jc.at("type").get<std::string>();
        TournamentFree tf;
        if (type == "forbidden_tournaments") {
            for (const auto& jt : jc.at("tournaments")) {
                ForbiddenTournament ft;
                ft.tournament = parse_tournament(jt);
                if (jt.contains("critical")) {
                    std::set<std::vector<ColorSet>> tuples;
                    for (const auto& jtuple : jt["critical"]) {
                        std::vector<ColorSet> tup;
                        for (const auto& jset : jtuple) {
                            ColorSet cs;
                            for (const auto& c : jset)
                                cs.push_back(
                                    need_color(A.color_index_of(c.get<std::string>()),
                                               c.get<std::string>()));
                            std::sort(cs.begin(), cs.end());
                            tup.push_back(std::move(cs));
                        }
                        tuples.insert(std::move(tup));
                    }
                    ft.family = TupleFamily::explicit_set(ft.tournament.size(),
                                                          std::move(tuples));
                } else {
                    ft.family = TupleFamily::universal(ft.tournament.size());
                }
                tf.forbidden.push_back(std::move(ft));
            }
        } else if (type == "all_tournaments_min_size") {
            const int s = jc.at("s").get<int>();
            inst.family_min_size = s;
            FamilySpec spec;
            spec.min_size = s;
            for (auto& t : reduce_family(spec, A.size())) {
                ForbiddenTournament ft;
                ft.family = TupleFamily::universal(t.size());
                ft.tournament = std::move(t);
                tf.forbidden.push_back(std::move(ft));
            }
        } else {
            throw ParseError("unknown digraph constraint type " + type);
        }
        inst.constraint.value = std::move(tf);
        return inst;
    }
    throw ParseError("unknown instance kind " + kind);
}

// ---------------------------------------------------------------------------

std::string serialize_instance(const Instance& inst) {
    json out;
    out["format"] = "eppa.instance/1";
    out["kind"] = inst.is_digraph ? "digraph" : "graph";
    if (!inst.is_digraph) {
        const ColoredGraph& A = inst.graph;
        out["vertices"] = A.graph.names();
        out["edges"] = json::array();
        for (auto [u, v] : A.graph.edges())
            out["edges"].push_back({A.graph.name(u), A.graph.name(v)});
        if (A.table.num_palettes() > 0) {
            out["palettes"] = json::array();
            for (const Palette& p : A.table.palettes) {
                json jp;
                jp["colors"] = json::array();
                for (int k = 0; k < p.count; ++k)
                    jp["colors"].push_back(A.table.names[p.first + k]);
                out["palettes"].push_back(std::move(jp));
            }
            json colors = json::object();
            for (Vertex v = 0; v < A.size(); ++v) {
                if (A.colors(v).empty()) continue;
                json cs = json::array();
                for (Color c : A.colors(v)) cs.push_back(A.table.names[c]);
                colors[A.graph.name(v)] = std::move(cs);
            }
            out["colors"] = std::move(colors);
        }
        out["maps"] = json::array();
        for (const auto& p : inst.maps) {
            json jm;
            json m = json::object();
            for (Vertex a = 0; a < A.size(); ++a)
                if (p.defined(a)) m[A.graph.name(a)] = A.graph.name(p.apply(a));
            jm["map"] = std::move(m);
            json chi = json::object();
            for (Color c = 0; c < static_cast<Color>(p.chi.map.size()); ++c)
                if (p.chi.map[c] != c)
                    chi[A.table.names[c]] = A.table.names[p.chi.map[c]];
            if (!chi.empty()) jm["chi"] = std::move(chi);
            out["maps"].push_back(std::move(jm));
        }
        const CliqueFree* cf = inst.constraint.clique();
        if (!cf) throw ParseError("graph instance without clique constraint");
        json jc;
        jc["type"] = "clique_free";
        jc["m"] = cf->m;
        if (A.table.num_palettes() > 0) {
            if (!cf->critical.is_explicit())
                throw ParseError("layered critical sets are not serializable");
            json crit = json::array();
            for (const auto& t : cf->critical.explicit_tuples()) {
                json jt = json::array();
                for (Color c : t) jt.push_back(A.table.names[c]);
                crit.push_back(std::move(jt));
            }
            jc["critical"] = std::move(crit);
        }
        out["constraint"] = std::move(jc);
        if (!inst.designated.empty()) {
            json des = json::object();
            for (const auto& [key, color] : inst.designated.entries) {
                auto [a, j] = key;
                des[A.graph.name(a)][std::to_string(j)] = A.table.names[color];
            }
            out["designated"] = std::move(des);
        }
    } else {
        const ColoredDigraph& A = inst.digraph;
        out["vertices"] = A.digraph.names();
        out["arcs"] = json::array();
        for (auto [u, v] : A.digraph.arcs())
            out["arcs"].push_back({A.digraph.name(u), A.digraph.name(v)});
        if (A.num_colors() > 0) {
            out["universe"] = A.color_names;
            json colors = json::object();
            for (Vertex v = 0; v < A.size(); ++v) {
                if (A.colors(v).empty()) continue;
                json cs = json::array();
                for (Color c : A.colors(v)) cs.push_back(A.color_names[c]);
                colors[A.digraph.name(v)] = std::move(cs);
            }
            out["colors"] = std::move(colors);
        }
        out["maps"] = json::array();
        for (const auto& p : inst.maps) {
            json jm;
            json m = json::object();
            for (Vertex a = 0; a < A.size(); ++a)
                if (p.defined(a)) m[A.digraph.name(a)] = A.digraph.name(p.apply(a));
            jm["map"] = std::move(m);
            json chi = json::object();
            for (Color c = 0; c < static_cast<Color>(p.chi.map.size()); ++c)
                if (p.chi.map[c] != c)
                    chi[A.color_names[c]] = A.color_names[p.chi.map[c]];
            if (!chi.empty()) jm["chi"] = std::move(chi);
            out["maps"].push_back(std::move(jm));
        }
        json jc;
        if (inst.family_min_size) {
            jc["type"] = "all_tournaments_min_size";
            jc["s"] = *inst.family_min_size;
        } else {
            const TournamentFree* tf = inst.constraint.tournament();
            if (!tf) throw ParseError("digraph instance without tournament constraint");
            jc["type"] = "forbidden_tournaments";
            jc["tournaments"] = json::array();
            for (const auto& ft : tf->forbidden) {
                json jt;
                jt["size"] = ft.tournament.size();
                jt["arcs"] = json::array();
                for (auto [u, v] : ft.tournament.digraph.arcs())
                    jt["arcs"].push_back({u, v});
                if (ft.family.is_explicit()) {
                    json crit = json::array();
                    for (const auto& tup : ft.family.explicit_tuples()) {
                        json jtuple = json::array();
                        for (const auto& cs : tup) {
                            json jset = json::array();
                            for (Color c : cs) jset.push_back(A.color_names[c]);
                            jtuple.push_back(std::move(jset));
                        }
                        crit.push_back(std::move(jtuple));
                    }
                    jt["critical"] = std::move(crit);
                } else if (!ft.family.is_universal()) {
                    throw ParseError("layered tuple families are not serializable");
                }
                jc["tournaments"].push_back(std::move(jt));
            }
        }
        out["constraint"] = std::move(jc);
    }
    return out.dump(2) + "\n";
}

std::string serialize_result(const Instance& instance, const ExtensionResult& result) {
    json out;
    out["format"] = "eppa.result/1";
    out["kind"] = result.is_digraph ? "digraph" : "graph";

    json ext;
    if (!result.is_digraph) {
        const ColoredGraph& B = result.B;
        ext["vertices"] = json::array();
        for (const auto& n : B.graph.names()) ext["vertices"].push_back(n);
        ext["edges"] = json::array();
        for (auto [u, v] : B.graph.edges())
            ext["edges"].push_back({B.graph.name(u), B.graph.name(v)});
        json colors = json::object();
        for (Vertex v = 0; v < B.size(); ++v) {
            if (B.colors(v).empty()) continue;
            json cs = json::array();
            for (Color c : B.colors(v)) cs.push_back(B.table.names[c]);
            colors[B.graph.name(v)] = std::move(cs);
        }
        ext["colors"] = std::move(colors);
    } else {
        const ColoredDigraph& B = result.B_digraph;
        ext["vertices"] = json::array();
        for (const auto& n : B.digraph.names()) ext["vertices"].push_back(n);
        ext["arcs"] = json::array();
        for (auto [u, v] : B.digraph.arcs())
            ext["arcs"].push_back({B.digraph.name(u), B.digraph.name(v)});
        json colors = json::object();
        for (Vertex v = 0; v < B.size(); ++v) {
            if (B.colors(v).empty()) continue;
            json cs = json::array();
            for (Color c : B.colors(v)) cs.push_back(B.color_names[c]);
            colors[B.digraph.name(v)] = std::move(cs);
        }
        ext["colors"] = std::move(colors);
    }
    out["extension"] = std::move(ext);

    out["automorphisms"] = json::array();
    for (const auto& f : result.automorphisms) {
        json jf;
        json m = json::object();
        const auto& names = result.is_digraph ? result.B_digraph.digraph.names()
                                              : result.B.graph.names();
        for (Vertex v = 0; v < static_cast<Vertex>(f.map.size()); ++v)
            m[names[v]] = names[f.map[v]];
        jf["map"] = std::move(m);
        json chi = json::object();
        const auto& cnames = result.is_digraph ? result.B_digraph.color_names
                                               : result.B.table.names;
        for (Color c = 0; c < static_cast<Color>(f.chi.map.size()); ++c)
            if (f.chi.map[c] != c) chi[cnames[c]] = cnames[f.chi.map[c]];
        jf["chi"] = std::move(chi);
        out["automorphisms"].push_back(std::move(jf));
    }

    out["certificates"] = json::array();
    for (const auto& c : result.certificates.checks) {
        json jc;
        jc["check"] = c.name;
        jc["pass"] = c.pass;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        out["certificates"].push_back(std::move(jc));
    }

    json stats;
    stats["levels"] = json::array();
    for (const auto& lvl : result.stats.levels) {
        json jl;
        jl["name"] = lvl.name;
        jl["carrier_size"] = lvl.carrier_size;
        jl["new_colors"] = lvl.new_colors;
        jl["freeness_audit_run"] = lvl.freeness_audit_run;
        stats["levels"].push_back(std::move(jl));
    }
    stats["group_size"] = result.stats.group_size;
    stats["extension_size"] = result.is_digraph
                                  ? result.B_digraph.size()
                                  : result.B.size();
    stats["notes"] = result.stats.notes;
    out["stats"] = std::move(stats);
    (void)instance;
    return out.dump(2) + "\n";
}

ExtensionResult parse_result(const std::string& text, const Instance& instance) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("extension"))
        throw ParseError("result file needs an \"extension\" field");
    ExtensionResult result;
    result.is_digraph = j.at("kind").get<std::string>() == "digraph";
    if (result.is_digraph != instance.is_digraph)
        throw ParseError("result kind differs from instance kind");
    const json& ext = j.at("extension");

    const auto& inst_names = instance.is_digraph
                                 ? instance.digraph.digraph.names()
                                 : instance.graph.graph.names();
    std::vector<std::string> names;
    for (const auto& v : ext.at("vertices")) names.push_back(v.get<std::string>());
    if (names.size() < inst_names.size())
        throw ParseError("extension is smaller than the instance");
    for (std::size_t i = 0; i < inst_names.size(); ++i)
        if (names[i] != inst_names[i])
            throw ParseError("extension does not list the instance vertices first");

    if (!result.is_digraph) {
        ColoredGraph& B = result.B;
        B.table = instance.graph.table;
        for (const auto& n : names) B.add_vertex(n);
        if (ext.contains("edges"))
            for (const auto& e : ext["edges"]) {
                Vertex u = need_vertex(B.graph.index_of(e.at(0).get<std::string>()),
                                       e.at(0).get<std::string>());
                Vertex v = need_vertex(B.graph.index_of(e.at(1).get<std::string>()),
                                       e.at(1).get<std::string>());
                B.graph.add_edge(u, v);
            }
        if (ext.contains("colors"))
            for (auto it = ext["colors"].begin(); it != ext["colors"].end(); ++it) {
                Vertex v = need_vertex(B.graph.index_of(it.key()), it.key());
                ColorSet cs;
                for (const auto& c : it.value())
                    cs.push_back(need_color(B.table.index_of(c.get<std::string>()),
                                            c.get<std::string>()));
                std::sort(cs.begin(), cs.end());
                B.color_of[v] = std::move(cs);
            }
    } else {
        ColoredDigraph& B = result.B_digraph;
        B.color_names = instance.digraph.color_names;
        for (const auto& n : names) B.add_vertex(n);
        if (ext.contains("arcs"))
            for (const auto& e : ext["arcs"]) {
                Vertex u = need_vertex(B.digraph.index_of(e.at(0).get<std::string>()),
                                       e.at(0).get<std::string>());
                Vertex v = need_vertex(B.digraph.index_of(e.at(1).get<std::string>()),
                                       e.at(1).get<std::string>());
                B.digraph.add_arc(u, v);
            }
        if (ext.contains("colors"))
            for (auto it = ext["colors"].begin(); it != ext["colors"].end(); ++it) {
                Vertex v = need_vertex(B.digraph.index_of(it.key()), it.key());
                ColorSet cs;
                for (const auto& c : it.value())
                    cs.push_back(
                        need_color(B.color_index_of(c.get<std::string>()),
                                   c.get<std::string>()));
                std::sort(cs.begin(), cs.end());
                B.color_of[v] = std::move(cs);
            }
    }

    const int num_colors = result.is_digraph ? result.B_digraph.num_colors()
                                             : result.B.table.num_colors();
    auto vlookup = [&](const std::string& n) {
        return result.is_digraph ? result.B_digraph.digraph.index_of(n)
                                 : result.B.graph.index_of(n);
    };
    auto clookup = [&](const std::string& n) {
        return result.is_digraph ? result.B_digraph.color_index_of(n)
                                 : result.B.table.index_of(n);
    };
    if (j.contains("automorphisms"))
        for (const auto& jf : j["automorphisms"]) {
            AutomorphismResult f;
            f.map.assign(names.size(), kNoVertex);
            for (auto it = jf.at("map").begin(); it != jf.at("map").end(); ++it) {
                Vertex from = need_vertex(vlookup(it.key()), it.key());
                Vertex to = need_vertex(vlookup(it.value().get<std::string>()),
                                        it.value().get<std::string>());
                f.map[from] = to;
            }
            for (Vertex v : f.map)
                if (v == kNoVertex) throw ParseError("automorphism is not total");
            f.chi = parse_chi(jf, num_colors, clookup);
            result.automorphisms.push_back(std::move(f));
        }
    return result;
}

std::string dot_dump(const ExtensionResult& result) {
    std::string out;
    if (!result.is_digraph) {
        out += "graph B {\n";
        for (const auto& n : result.B.graph.names())
            out += "  \"" + n + "\";\n";
        for (auto [u, v] : result.B.graph.edges())
            out += "  \"" + result.B.graph.name(u) + "\" -- \"" +
                   result.B.graph.name(v) + "\";\n";
    } else {
        out += "digraph B {\n";
        for (const auto& n : result.B_digraph.digraph.names())
            out += "  \"" + n + "\";\n";
        for (auto [u, v] : result.B_digraph.digraph.arcs())
            out += "  \"" + result.B_digraph.digraph.name(u) + "\" -> \"" +
                   result.B_digraph.digraph.name(v) + "\";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace eppa
