#include <ncomp/ncomp.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::json;

struct Config {
    std::string              input;
    std::string              format;
    std::string              window;
    std::string              method = "auto";
    std::string              consts;
    bool                     simplify   = false;
    bool                     arithmetic = false;
    bool                     dot        = false;
    bool                     intervals  = false;
    bool                     json       = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ncomp::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ncomp::Style style_of(const Config& c) {
    if (c.format.empty()) return isatty(STDOUT_FILENO) ? ncomp::Style::Unicode : ncomp::Style::Ascii;
    if (c.format == "unicode") return ncomp::Style::Unicode;
    if (c.format == "ascii") return ncomp::Style::Ascii;
    return ncomp::Style::Tptp;
}

std::set<std::string> constants_of(const Config& c) {
    std::set<std::string> out;
    std::stringstream     ss(c.consts);
    std::string           item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (!std::islower(static_cast<unsigned char>(item[0]))) throw ncomp::Error("not a symbolic constant: " + item);
        out.insert(item);
    }
    return out;
}

ncomp::IntWindow window_of(const Config& c, const ncomp::Program& p) {
    return c.window.empty() ? ncomp::default_window(p) : ncomp::parse_window(c.window);
}

json atom_json(const ncomp::GroundAtom& a) { return ncomp::to_string(a); }

json atoms_json(const std::vector<ncomp::GroundAtom>& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(atom_json(a));
    return out;
}

void print_sentences(const std::vector<ncomp::Formula>& fs, const Config& c, const std::string& prefix) {
    auto style = style_of(c);
    json out   = json::array();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        auto f    = c.simplify ? ncomp::simplify(fs[i]) : fs[i];
        auto text = ncomp::print_formula(f, style, prefix + std::to_string(i + 1));
        if (c.json) out.push_back(text);
        else std::cout << text << "\n";
    }
    if (c.json) std::cout << json{{"sentences", out}}.dump() << "\n";
}

int cmd_complete(const Config& c) {
    auto                       p = ncomp::parse_program(read_input(c.input), c.input);
    std::vector<ncomp::Formula> fs;
    if (c.arithmetic) {
        for (const auto& sym : ncomp::predicate_symbols(p)) fs.push_back(ncomp::arithmetic_completed_definition(p, sym));
        for (const auto& r : p.rules) {
            if (r.is_constraint()) fs.push_back(ncomp::constraint_sentence(p, r));
        }
    }
    else {
        fs = ncomp::ncomp(p);
    }
    print_sentences(fs, c, "ncomp");
    return 0;
}

int cmd_comp(const Config& c) {
    auto p = ncomp::parse_program(read_input(c.input), c.input);
    print_sentences(ncomp::comp(p), c, "comp");
    return 0;
}

int cmd_tight(const Config& c) {
    auto p = ncomp::parse_program(read_input(c.input), c.input);
    if (c.dot) {
        std::cout << ncomp::to_dot(ncomp::dependency_graph(p));
        return 0;
    }
    auto r = ncomp::is_tight(p);
    std::vector<std::string> cycle;
    for (const auto& v : r.cycle) cycle.push_back(ncomp::to_string(v));
    if (c.json) {
        std::cout << json{{"tight", r.tight}, {"cycle", cycle}}.dump() << "\n";
        return 0;
    }
    if (r.tight) {
        std::cout << "tight\n";
        return 0;
    }
    std::cout << "not tight:";
    for (const auto& v : cycle) std::cout << " " << v << " ->";
    std::cout << " " << cycle.front() << "\n";
    return 0;
}

int cmd_solve(const Config& c) {
    auto p = ncomp::parse_program(read_input(c.input), c.input);
    auto w = window_of(c, p);
    auto g = ncomp::ground(p, w, constants_of(c));
    for (const auto& msg : g.warnings) std::cerr << "warning: " << msg << "\n";
    auto m      = ncomp::parse_method(c.method);
    auto models = ncomp::stable_models(g, m);
    if (c.json) {
        json out{{"method", ncomp::to_string(ncomp::resolve(g, m))}, {"window", ncomp::to_string(w)}, {"warnings", g.warnings}};
        out["models"] = json::array();
        for (const auto& s : models) out["models"].push_back(atoms_json(s));
        std::cout << out.dump() << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
        std::cout << "Answer: " << i + 1 << "\n" << ncomp::format_model(models[i]) << "\n";
    }
    std::cout << (models.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
    std::cout << "Models: " << models.size() << "\n";
    return 0;
}

int cmd_verify(const Config& c) {
    auto                 p = ncomp::parse_program(read_input(c.input), c.input);
    ncomp::VerifyOptions opt;
    opt.extra_constants = constants_of(c);
    opt.method          = ncomp::parse_method(c.method);
    auto rep            = ncomp::verify_correspondence(p, window_of(c, p), opt);
    if (!c.json) {
        std::cout << ncomp::to_text(rep);
        return rep.ok() ? 0 : 1;
    }
    std::string mode = rep.enumeration == ncomp::VerifyReport::Enumeration::Full ? "full" : "sampled";
    std::cout << json{{"record", "summary"},
                      {"window", ncomp::to_string(rep.window)},
                      {"tight", rep.tight},
                      {"cycle", rep.cycle},
                      {"sentences", rep.sentences},
                      {"stable_models", rep.stable_models},
                      {"warnings", rep.warnings}}
                     .dump()
              << "\n";
    std::cout << json{{"record", "stable"},
                      {"checked", rep.stable_checked},
                      {"violations", rep.stable_violations.size()},
                      {"inconclusive", rep.stable_inconclusive}}
                     .dump()
              << "\n";
    std::cout << json{{"record", "subsets"},
                      {"applicable", rep.tight},
                      {"enumeration", mode},
                      {"base_size", rep.base_size},
                      {"candidates", rep.candidates},
                      {"completion_models", rep.completion_models},
                      {"violations", rep.subset_violations.size()},
                      {"gaps", rep.gap_witnesses.size()},
                      {"inconclusive", rep.subset_inconclusive}}
                     .dump()
              << "\n";
    for (const auto& x : rep.stable_violations) {
        std::cout << json{{"record", "counterexample"}, {"check", "stable"}, {"atoms", atoms_json(x.atoms)}, {"detail", x.detail}}.dump()
                  << "\n";
    }
    for (const auto& x : rep.subset_violations) {
        std::cout << json{{"record", "counterexample"}, {"check", "subsets"}, {"atoms", atoms_json(x.atoms)}, {"detail", x.detail}}.dump()
                  << "\n";
    }
    for (const auto& x : rep.gap_witnesses) {
        std::cout << json{{"record", "gap"}, {"atoms", atoms_json(x.atoms)}, {"detail", x.detail}}.dump() << "\n";
    }
    std::cout << json{{"record", "result"}, {"ok", rep.ok()}}.dump() << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_reverse(const Config& c) {
    auto chain = ncomp::parse_axiom_chain(ncomp::parse_formulas(read_input(c.input), c.input));
    auto p     = ncomp::reverse_completion(chain);
    if (c.intervals) p = ncomp::rewrite_intervals(std::move(p));
    for (const auto& note : ncomp::window_bound_variables(p)) {
        std::cerr << "warning: rule " << note.rule + 1 << ": variable " << note.variable
                  << " is not bound by an atom, equality or interval; grounders without comparison-based bounds "
                     "reject this rule\n";
    }
    std::cout << ncomp::print_program(p);
    return 0;
}

int cmd_puzzle(const Config& c) {
    auto r = ncomp::solve_puzzle();
    if (c.json) {
        json b3 = json::array();
        for (const auto& [m, n] : r.b3) b3.push_back({m, n});
        std::cout << json{{"models", r.models}, {"b3", b3}, {"extents", r.extents}, {"solved", r.solved()}}.dump() << "\n";
        return r.solved() ? 0 : 1;
    }
    for (const auto& [m, n] : r.b3) std::cout << "M=" << m << ", N=" << n << "\n";
    std::cout << "stable models: " << r.models << "\n";
    for (const auto& [pred, n] : r.extents) std::cout << "|" << pred << "| = " << n << "\n";
    if (!r.solved()) std::cerr << "error: expected a unique stable model with b3 = {(4,13)}\n";
    return r.solved() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Natural completion of regular logic programs"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Config c;

    app.add_option("--format", c.format, "Formula style (default: unicode on a terminal, ascii otherwise)")
        ->check(CLI::IsMember({"unicode", "ascii", "tptp"}));
    app.add_option("--int-window", c.window, "Integer window LO..HI for grounding and evaluation");
    app.add_option("--method", c.method, "Solving method")->check(CLI::IsMember({"auto", "brute", "completion", "stratified"}));
    app.add_option("--consts", c.consts, "Extra symbolic constants, comma separated");
    app.add_flag("--simplify", c.simplify, "Simplify the printed sentences");
    app.add_flag("--arithmetic", c.arithmetic, "Print arithmetic completed definitions");
    app.add_flag("--intervals", c.intervals, "With reverse, turn comparison bounds into intervals where exact");
    app.add_flag("--dot", c.dot, "Print the dependency graph in Graphviz format");
    app.add_flag("--json", c.json, "Structured output");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const Config&);
        bool        file;
    };
    const Command commands[] = {
        {"complete", "Print the natural completion", cmd_complete, true},
        {"comp", "Print the completion defined through val and tau", cmd_comp, true},
        {"tight", "Decide tightness", cmd_tight, true},
        {"solve", "Print the stable models", cmd_solve, true},
        {"verify", "Check stable models against the completion", cmd_verify, true},
        {"reverse", "Turn a chain of definitions into a program", cmd_reverse, true},
        {"puzzle", "Solve the Sum and Product puzzle", cmd_puzzle, false},
    };
    for (const auto& cmd : commands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        if (cmd.file) sub->add_option("file", c.input, "Input file, or - for standard input")->required();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& cmd : commands) {
            if (app.got_subcommand(cmd.name)) return cmd.run(c);
        }
    }
    catch (const ncomp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
