// tdeg — command-line front end over the toricdeg C API.
//
// Exit codes: 0 verdict pass, 1 verdict fail, 2 malformed or unreadable
// input (including usage errors), 3 internal failure.

#include "toricdeg.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct WorkbenchDeleter {
    void operator()(td_workbench* w) const { td_workbench_free(w); }
};
using Workbench = std::unique_ptr<td_workbench, WorkbenchDeleter>;

struct StringDeleter {
    void operator()(char* s) const { td_free_string(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

// Reads the whole input document; "-" means standard input.
bool read_input(const std::string& spec, std::string& out, std::string& err) {
    if (spec == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        out = buf.str();
        return true;
    }
    std::ifstream f(spec, std::ios::binary);
    if (!f) {
        err = "cannot read input file: " + spec;
        return false;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    out = buf.str();
    return true;
}

// Writes a report; "-" means standard output.
bool write_output(const std::string& spec, const std::string& content, std::string& err) {
    if (spec == "-") {
        std::cout << content;
        return true;
    }
    std::ofstream f(spec, std::ios::binary);
    if (!f) {
        err = "cannot write output file: " + spec;
        return false;
    }
    f << content;
    if (!f) {
        err = "failed while writing: " + spec;
        return false;
    }
    return true;
}

// One leaf subcommand that takes a JSON document and prints the envelope.
struct ReportCommand {
    CLI::App* cli = nullptr;
    std::string command;   // dispatch name, e.g. "complex.validate"
    std::string in_spec;
    bool canonical = false;
};

int run_report_command(const ReportCommand& rc) {
    std::string input, err;
    if (!read_input(rc.in_spec, input, err)) {
        std::cerr << "error: " << err << "\n";
        return 2;
    }
    Workbench w(td_workbench_new());
    if (!w) {
        std::cerr << "error: out of memory\n";
        return 3;
    }
    char* report = nullptr;
    td_status st = td_run_json(w.get(), rc.command.c_str(), input.c_str(),
                               rc.canonical ? 1 : 0, &report);
    ApiString guard(report);
    if (st == TD_OK || st == TD_VERDICT) {
        std::cout << (report ? report : "");
        return st == TD_OK ? 0 : 1;
    }
    std::cerr << "error: " << td_last_error(w.get()) << "\n";
    return st == TD_EINPUT ? 2 : 3;
}

int run_k3(const std::string& json_spec, const std::string& csv_spec, bool canonical) {
    Workbench w(td_workbench_new());
    if (!w) {
        std::cerr << "error: out of memory\n";
        return 3;
    }
    char* report = nullptr;
    td_status st = td_run_json(w.get(), "k3.run", "", canonical ? 1 : 0, &report);
    ApiString guard(report);
    if (st != TD_OK && st != TD_VERDICT) {
        std::cerr << "error: " << td_last_error(w.get()) << "\n";
        return st == TD_EINPUT ? 2 : 3;
    }
    std::string err;
    // Default destination: the envelope on standard output.
    std::string json_dest = json_spec.empty() && csv_spec.empty() ? "-" : json_spec;
    if (!json_dest.empty()) {
        if (!write_output(json_dest, report ? report : "", err)) {
            std::cerr << "error: " << err << "\n";
            return 2;
        }
    }
    if (!csv_spec.empty()) {
        char* csv = nullptr;
        td_status cst = td_run_csv(w.get(), &csv);
        ApiString cguard(csv);
        if (cst != TD_OK) {
            std::cerr << "error: " << td_last_error(w.get()) << "\n";
            return 3;
        }
        if (!write_output(csv_spec, csv ? csv : "", err)) {
            std::cerr << "error: " << err << "\n";
            return 2;
        }
    }
    return st == TD_OK ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("toric degeneration workbench (version ") + td_version() + ")"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<ReportCommand>> leaves;
    auto add_leaf = [&](CLI::App* parent, const char* name, const char* command,
                        const char* help) {
        auto rc = std::make_unique<ReportCommand>();
        rc->cli = parent->add_subcommand(name, help);
        rc->command = command;
        rc->cli->add_option("--in", rc->in_spec, "input JSON file, or - for standard input")
            ->required();
        rc->cli->add_flag("--canonical", rc->canonical,
                          "omit timing so equal inputs print identical bytes");
        leaves.push_back(std::move(rc));
    };

    CLI::App* monoid = app.add_subcommand("monoid", "classify monoids and list Hilbert bases");
    monoid->require_subcommand(1);
    add_leaf(monoid, "classify", "monoid.classify",
             "integral / fine / saturated / toric flags with witnesses");
    add_leaf(monoid, "hilbert", "monoid.hilbert", "minimal generating set of a cone monoid");

    CLI::App* cone = app.add_subcommand("cone", "polyhedral cone calculations");
    cone->require_subcommand(1);
    add_leaf(cone, "dual", "cone.dual", "dual cone in both generator and halfspace form");

    CLI::App* kn = app.add_subcommand("kn", "torus-fibration descriptors of toric models");
    kn->require_subcommand(1);
    add_leaf(kn, "describe", "kn.describe",
             "base space and fiber ranks over every toric stratum");

    CLI::App* complex =
        app.add_subcommand("complex", "integral affine cell complexes with singularities");
    complex->require_subcommand(1);
    add_leaf(complex, "validate", "complex.validate", "structural well-formedness report");
    add_leaf(complex, "monodromy", "complex.monodromy",
             "wall monodromy transforms and latent kink vector");
    add_leaf(complex, "positive", "complex.positive", "positivity of all wall kinks");
    add_leaf(complex, "simple-check", "complex.simple-check",
             "simplicity of the singular structure");
    add_leaf(complex, "mpl-check", "complex.mpl-check",
             "balance of a (given or latent) kink function");

    CLI::App* gluing = app.add_subcommand("gluing", "multiplicative gluing data");
    gluing->require_subcommand(1);
    add_leaf(gluing, "check", "gluing.check", "closed-form cocycle conditions");
    add_leaf(gluing, "trivialize", "gluing.trivialize",
             "solve for a 0-cochain trivializing a lifted cocycle");

    CLI::App* k3 = app.add_subcommand("k3", "quartic surface degeneration pipeline");
    k3->require_subcommand(1);
    CLI::App* k3run = k3->add_subcommand(
        "run", "intersection complex, discriminant, fiber classes, Euler count");
    std::string k3_json, k3_csv;
    bool k3_canonical = false;
    k3run->add_option("--json", k3_json, "write the report envelope here (- for stdout)");
    k3run->add_option("--csv", k3_csv, "write the discriminant table here (- for stdout)");
    k3run->add_flag("--canonical", k3_canonical,
                    "omit timing so repeated runs print identical bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems are input errors; --help is success
    }

    if (k3run->parsed()) return run_k3(k3_json, k3_csv, k3_canonical);
    for (const auto& rc : leaves)
        if (rc->cli->parsed()) return run_report_command(*rc);
    std::cerr << "error: no command selected\n";
    return 2;
}
