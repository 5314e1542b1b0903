#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hyperpoly/hyperpoly.h"

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBudget = 3 };

struct Flags {
    std::string in;
    std::string order;
    std::string mode = "all";
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::uint64_t budget_trees = 0;
    std::string format = "json";
    std::size_t rank = 0;
    std::size_t count = 200;
    std::size_t max_v = 7;
    std::size_t max_e = 6;
};

struct CliError {
    int exit_code;
    std::string message;
};

int exit_for(hp_status s) {
    switch (s) {
        case HP_OK: return kOk;
        case HP_VERIFICATION_FAILED:
        case HP_ERR_INVARIANT_VIOLATION: return kVerificationFailed;
        case HP_ERR_BUDGET_EXCEEDED: return kBudget;
        default: return kUsage;
    }
}

// Errors abort; HP_OK and HP_VERIFICATION_FAILED come back to the caller.
hp_status check(hp_status s) {
    if (s != HP_OK && s != HP_VERIFICATION_FAILED) {
        const std::string detail = hp_last_error();
        throw CliError{exit_for(s), detail.empty() ? hp_status_name(s) : detail};
    }
    return s;
}

struct Text {
    char* p = nullptr;
    ~Text() { hp_string_free(p); }
    std::string str() const { return p ? p : ""; }
    nlohmann::json json() const { return nlohmann::json::parse(str()); }
};

std::string read_input(const std::string& path) {
    if (path.empty()) throw CliError{kUsage, "--in is required"};
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream file(path, std::ios::binary);
    if (!file) throw CliError{kUsage, "cannot open " + path};
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

using HypergraphPtr = std::unique_ptr<hp_hypergraph, decltype(&hp_hypergraph_free)>;
using GraphPtr = std::unique_ptr<hp_graph, decltype(&hp_graph_free)>;

HypergraphPtr load_hypergraph(const std::string& path) {
    const std::string text = read_input(path);
    hp_hypergraph* h = nullptr;
    check(hp_hypergraph_parse(text.c_str(), &h));
    HypergraphPtr owned(h, &hp_hypergraph_free);
    Text notes;
    check(hp_hypergraph_diagnostics(h, &notes.p));
    for (const auto& note : notes.json()) std::cerr << "warning: " << note.get<std::string>() << '\n';
    return owned;
}

hp_options options_of(const Flags& f) {
    hp_options o;
    hp_options_init(&o);
    o.order = f.order.empty() ? nullptr : f.order.c_str();
    o.mode = f.mode == "random" ? HP_MODE_RANDOM : HP_MODE_ALL;
    if (f.samples) o.samples = f.samples;
    o.seed = f.seed;
    o.jobs = f.jobs;
    if (f.budget_trees) o.tree_budget = f.budget_trees;
    return o;
}

std::string polynomial_text(const nlohmann::json& poly, char var) {
    std::string out;
    const auto& c = poly.at("coefficients");
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto k = c[i].get<long long>();
        if (k == 0) continue;
        if (!out.empty()) out += " + ";
        if (k != 1 || i == 0) out += std::to_string(k);
        if (i >= 1) out += var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

std::string tutte_text(const nlohmann::json& poly) {
    std::vector<std::array<long long, 3>> terms;
    for (const auto& t : poly.at("coeffs")) terms.push_back({t[0].get<long long>(), t[1].get<long long>(), t[2].get<long long>()});
    // Highest total degree first, then higher powers of x.
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a[0] + a[1] != b[0] + b[1] ? a[0] + a[1] > b[0] + b[1] : a[0] > b[0];
    });
    std::string out;
    for (const auto& [i, j, k] : terms) {
        if (!out.empty()) out += " + ";
        if (k != 1 || (i == 0 && j == 0)) out += std::to_string(k);
        if (i) out += "x" + (i > 1 ? "^" + std::to_string(i) : std::string());
        if (j) out += "y" + (j > 1 ? "^" + std::to_string(j) : std::string());
    }
    return out.empty() ? "0" : out;
}

std::string report_text(const nlohmann::json& report) {
    std::ostringstream out;
    out << "status: " << report.at("status").get<std::string>() << '\n';
    if (report.contains("seed")) out << "seed: " << report.at("seed") << '\n';
    for (const auto& c : report.at("checks")) {
        out << "  " << c.at("name").get<std::string>() << ": passed " << c.at("passed") << ", failed "
            << c.at("failed") << ", vacuous " << c.at("vacuous") << '\n';
    }
    for (const auto& [key, value] : report.items()) {
        if (key == "status" || key == "checks" || key == "seed" || key == "counterexample") continue;
        out << key << ": " << value.dump() << '\n';
    }
    if (report.contains("counterexample")) out << "counterexample: " << report.at("counterexample").dump() << '\n';
    return out.str();
}

void print(const Flags& f, const nlohmann::json& doc, const std::string& text) {
    std::cout << (f.format == "text" ? text : doc.dump() + "\n");
}

int run_report(const Flags& f, hp_status status, const Text& report) {
    const auto doc = report.json();
    print(f, doc, report_text(doc));
    if (status == HP_VERIFICATION_FAILED) std::cerr << "verification failed\n";
    return exit_for(status);
}

int cmd_hypertrees(const Flags& f) {
    auto h = load_hypergraph(f.in);
    const hp_options o = options_of(f);
    Text out;
    check(hp_hypertrees(h.get(), &o, &out.p));
    const auto doc = out.json();
    // Text lists values in document order of the hyperedges.
    Text source;
    check(hp_hypergraph_to_json(h.get(), &source.p));
    const auto hypergraph = source.json();
    std::string text;
    for (const auto& tree : doc.at("hypertrees")) {
        std::string line;
        for (const auto& e : hypergraph.at("hyperedges")) {
            const auto id = e.at("id").get<std::string>();
            line += (line.empty() ? "" : " ") + id + "=" + std::to_string(tree.at(id).get<int>());
        }
        text += line + '\n';
    }
    print(f, doc, text);
    return kOk;
}

int cmd_polynomial(const Flags& f, bool interior) {
    auto h = load_hypergraph(f.in);
    const hp_options o = options_of(f);
    Text out;
    check(interior ? hp_interior_polynomial(h.get(), &o, &out.p) : hp_exterior_polynomial(h.get(), &o, &out.p));
    const auto doc = out.json();
    print(f, doc, polynomial_text(doc, interior ? 'x' : 'y') + '\n');
    return kOk;
}

int cmd_order_independence(const Flags& f) {
    auto h = load_hypergraph(f.in);
    const hp_options o = options_of(f);
    Text out;
    return run_report(f, check(hp_verify_order_independence(h.get(), &o, &out.p)), out);
}

int cmd_lemmas(const Flags& f) {
    auto h = load_hypergraph(f.in);
    const hp_options o = options_of(f);
    Text out;
    return run_report(f, check(hp_verify_lemmas(h.get(), &o, &out.p)), out);
}

int cmd_transposition(const Flags& f) {
    auto h = load_hypergraph(f.in);
    const hp_options o = options_of(f);
    Text out;
    return run_report(f, check(hp_verify_transposition(h.get(), &o, f.rank, &out.p)), out);
}

int cmd_crosscheck(const Flags& f) {
    const std::string text = read_input(f.in);
    hp_graph* raw = nullptr;
    check(hp_graph_parse(text.c_str(), &raw));
    GraphPtr g(raw, &hp_graph_free);
    const hp_options o = options_of(f);
    Text out;
    const hp_status status = check(hp_crosscheck_tutte(g.get(), &o, &out.p));
    if (f.format == "text") {
        const auto doc = out.json();
        std::cout << "T = " << tutte_text(doc.at("tutte")) << '\n'
                  << "I = " << polynomial_text(doc.at("interior"), 'x') << '\n'
                  << "X = " << polynomial_text(doc.at("exterior"), 'y') << '\n';
    }
    return run_report(f, status, out);
}

int cmd_gen_corpus(const Flags& f) {
    Text out;
    check(hp_generate_corpus(f.seed, f.count, f.max_v, f.max_e, &out.p));
    const auto doc = out.json();
    print(f, doc, doc.dump(2) + '\n');
    return kOk;
}

int cmd_replay(const Flags& f) {
    const std::string text = read_input(f.in);
    const hp_options o = options_of(f);
    Text out;
    return run_report(f, check(hp_replay(text.c_str(), &o, &out.p)), out);
}

void add_common(CLI::App* cmd, Flags& f, bool needs_input = true) {
    auto* in = cmd->add_option("--in", f.in, "Input document, '-' for stdin");
    if (needs_input) in->required();
    cmd->add_option("--order", f.order, "Comma-separated hyperedge ids, smallest first");
    cmd->add_option("--mode", f.mode, "Ordering coverage")->check(CLI::IsMember({"all", "random"}));
    cmd->add_option("--samples", f.samples, "Random orderings to draw");
    cmd->add_option("--seed", f.seed, "Seed for random choices");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--budget-trees", f.budget_trees, "Step cap for spanning-tree enumeration");
    cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interior and exterior polynomials of hypergraphs"};
    app.require_subcommand(1);
    Flags f;

    auto* hypertrees = app.add_subcommand("hypertrees", "List all hypertrees");
    auto* interior = app.add_subcommand("interior", "Interior polynomial I(x)");
    auto* exterior = app.add_subcommand("exterior", "Exterior polynomial X(y)");
    auto* verify = app.add_subcommand("verify", "Run a verifier");
    verify->require_subcommand(1);
    auto* independence = verify->add_subcommand("order-independence", "I and X agree across orderings");
    auto* lemmas = verify->add_subcommand("lemmas", "Exhaustive supporting-lemma checks");
    auto* transposition = verify->add_subcommand("transposition", "Replay the adjacent-swap argument");
    auto* crosscheck = app.add_subcommand("crosscheck-tutte", "Compare a graph's I and X with its Tutte polynomial");
    auto* corpus = app.add_subcommand("gen-corpus", "Random connected hypergraphs");
    auto* replay = app.add_subcommand("replay", "Re-run a counterexample document");

    for (auto* cmd : {hypertrees, interior, exterior, independence, lemmas, transposition, crosscheck, replay}) {
        add_common(cmd, f);
    }
    // --h collides with the short help flag, so help is long-form only here.
    transposition->set_help_flag("--help", "Print this help message and exit");
    transposition->add_option("--h", f.rank, "1-based rank h; ranks h and h+1 are swapped")->required();
    corpus->add_option("--seed", f.seed, "Generator seed");
    corpus->add_option("--count", f.count, "Number of instances");
    corpus->add_option("--max-v", f.max_v, "Largest vertex count")->check(CLI::PositiveNumber);
    corpus->add_option("--max-e", f.max_e, "Largest hyperedge count")->check(CLI::PositiveNumber);
    corpus->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*hypertrees) return cmd_hypertrees(f);
        if (*interior) return cmd_polynomial(f, true);
        if (*exterior) return cmd_polynomial(f, false);
        if (*independence) return cmd_order_independence(f);
        if (*lemmas) return cmd_lemmas(f);
        if (*transposition) return cmd_transposition(f);
        if (*crosscheck) return cmd_crosscheck(f);
        if (*corpus) return cmd_gen_corpus(f);
        if (*replay) return cmd_replay(f);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
