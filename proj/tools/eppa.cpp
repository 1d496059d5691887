#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eppa/io.hpp"
#include "eppa/pipeline.hpp"
#include "eppa/verify.hpp"

namespace {

// exit codes: 0 certified success, 1 verification failure, 2 inadmissible
// instance (not free / bad maps), 3 cap or budget exceeded, 4 parse error
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kNotFree = 2;
constexpr int kCapExceeded = 3;
constexpr int kParseError = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw eppa::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

void print_report(const eppa::CertificateReport& report) {
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                  << (c.witness.empty() ? "" : "  [" + c.witness + "]") << "\n";
}

struct ExtendArgs {
    std::string input, output, dot;
    std::size_t cap_group = 100000;
    std::size_t cap_structure = 100000;
    std::uint64_t budget = 0;  // 0 = unlimited
    int oracle_max_size = 0;
    bool strict_ledger = false;
    bool emit_stats = false;
    bool serial = false;
};

int run_extend(const ExtendArgs& args) {
    eppa::Instance inst = eppa::parse_instance(slurp(args.input));
    eppa::PipelineOptions opts;
    opts.caps.group_cap = args.cap_group;
    opts.caps.structure_cap = args.cap_structure;
    opts.exec = args.serial ? eppa::Exec::serial : eppa::Exec::parallel;
    eppa::WorkBudget budget{args.budget ? args.budget : UINT64_MAX, 0};
    opts.caps.budget = &budget;
    if (args.strict_ledger) {
        if (inst.is_digraph)
            throw eppa::NotFreeError("the cardinality ledger applies to graphs only");
        opts.ledger.enabled = true;
        for (int j = 1; j <= inst.graph.table.num_palettes(); ++j) {
            int d = inst.graph.size() > 0
                        ? static_cast<int>(inst.graph.table
                                               .palette_slice(inst.graph.colors(0), j)
                                               .size())
                        : 0;
            opts.ledger.d.push_back(d);
        }
    }

    eppa::ExtensionResult result;
    if (inst.is_digraph) {
        const auto* tf = inst.constraint.tournament();
        result = eppa::extend_digraph(inst.digraph, inst.maps, tf->forbidden, opts);
    } else {
        const auto* cf = inst.constraint.clique();
        result = eppa::extend_colored(inst.graph, inst.maps, cf->m, cf->critical,
                                      inst.designated, opts);
    }

    if (args.oracle_max_size > 0) {
        eppa::WorkBudget oracle_budget{std::uint64_t(1) << 26, 0};
        std::optional<eppa::ExtensionResult> witness;
        try {
            witness = inst.is_digraph
                          ? eppa::brute_force_extension(inst.digraph, inst.maps,
                                                        inst.constraint,
                                                        args.oracle_max_size,
                                                        &oracle_budget)
                          : eppa::brute_force_extension(inst.graph, inst.maps,
                                                        inst.constraint,
                                                        args.oracle_max_size,
                                                        &oracle_budget);
            result.stats.notes.push_back(
                witness ? "oracle: witness of size " +
                              std::to_string(witness->is_digraph
                                                 ? witness->B_digraph.size()
                                                 : witness->B.size())
                        : "oracle: none within cap " +
                              std::to_string(args.oracle_max_size));
        } catch (const eppa::BudgetExhaustedError&) {
            result.stats.notes.push_back("oracle: budget exhausted");
        }
    }

    const std::string text = eppa::serialize_result(inst, result);
    if (args.output.empty())
        std::cout << text;
    else
        write_file(args.output, text);
    if (!args.dot.empty()) write_file(args.dot, eppa::dot_dump(result));
    if (args.emit_stats) {
        std::cerr << "levels:";
        for (const auto& lvl : result.stats.levels)
            std::cerr << " [" << lvl.name << " |C|=" << lvl.carrier_size << "]";
        std::cerr << " |Gamma|=" << result.stats.group_size
                  << " |B|=" << result.stats.quotient_size << "\n";
        for (const auto& n : result.stats.notes) std::cerr << "note: " << n << "\n";
    }
    return result.certificates.all_pass() ? kOk : kVerifyFailed;
}

int run_verify(const std::string& instance_path, const std::string& result_path) {
    eppa::Instance inst = eppa::parse_instance(slurp(instance_path));
    eppa::ExtensionResult result = eppa::parse_result(slurp(result_path), inst);
    eppa::CertificateReport report =
        inst.is_digraph
            ? eppa::verify_extension(inst.digraph, result, inst.constraint, inst.maps)
            : eppa::verify_extension(inst.graph, result, inst.constraint, inst.maps,
                                     inst.designated.empty() ? nullptr
                                                             : &inst.designated);
    print_report(report);
    return report.all_pass() ? kOk : kVerifyFailed;
}

int run_enumerate(const std::string& kind, int k, bool serial) {
    if (kind != "tournaments")
        throw eppa::ParseError("unknown enumeration kind " + kind);
    auto list = eppa::enumerate_tournaments(
        k, serial ? eppa::Exec::serial : eppa::Exec::parallel);
    for (std::size_t i = 0; i < list.size(); ++i) {
        std::cout << "T" << i + 1 << ":";
        for (auto [u, v] : list[i].digraph.arcs())
            std::cout << " " << u << "->" << v;
        std::cout << "\n";
    }
    std::cout << "count " << list.size() << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extension engine for partial isomorphisms of K_m-free graphs "
                 "and tournament-free digraphs"};
    app.require_subcommand(1);

    ExtendArgs ext;
    CLI::App* cmd_extend = app.add_subcommand("extend", "build a certified extension");
    cmd_extend->add_option("input", ext.input, "instance file (JSON)")->required();
    cmd_extend->add_option("-o,--output", ext.output, "result file (default stdout)");
    cmd_extend->add_option("--cap-group", ext.cap_group, "group element cap");
    cmd_extend->add_option("--cap-structure", ext.cap_structure,
                           "per-level structure cap");
    cmd_extend->add_option("--budget", ext.budget, "work budget (0 = unlimited)");
    cmd_extend->add_option("--oracle-max-size", ext.oracle_max_size,
                           "also run the exhaustive oracle up to this size");
    cmd_extend->add_flag("--strict-ledger", ext.strict_ledger,
                         "enable the per-palette cardinality ledger");
    cmd_extend->add_flag("--emit-stats", ext.emit_stats, "print per-level stats");
    cmd_extend->add_option("--emit-dot", ext.dot, "write a DOT dump of B");
    cmd_extend->add_flag("--serial", ext.serial, "serial kernels only");

    std::string verify_instance, verify_result;
    CLI::App* cmd_verify = app.add_subcommand("verify", "re-check a result file");
    cmd_verify->add_option("instance", verify_instance, "instance file")->required();
    cmd_verify->add_option("result", verify_result, "result file")->required();

    std::string enum_kind = "tournaments";
    int enum_k = 3;
    bool enum_serial = false;
    CLI::App* cmd_enum =
        app.add_subcommand("enumerate", "list structures up to isomorphism");
    cmd_enum->add_option("kind", enum_kind, "what to enumerate (tournaments)");
    cmd_enum->add_option("-k", enum_k, "size")->required();
    cmd_enum->add_flag("--serial", enum_serial, "serial kernels only");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_extend->parsed()) return run_extend(ext);
        if (cmd_verify->parsed()) return run_verify(verify_instance, verify_result);
        if (cmd_enum->parsed()) return run_enumerate(enum_kind, enum_k, enum_serial);
    } catch (const eppa::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const eppa::NotFreeError& e) {
        std::cerr << "inadmissible instance: " << e.what() << "\n";
        return kNotFree;
    } catch (const eppa::GroupTooLargeError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const eppa::StructureCapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const eppa::BudgetExhaustedError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kOk;
}
