#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "pgraph/cli.hpp"
#include "pgraph/laws.hpp"
#include "pgraph/oracles.hpp"
#include "pgraph/schorr_waite.hpp"
#include "pgraph/text_format.hpp"
#include "pgraph/union_find.hpp"

namespace pgraph::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int cmd_mark(const MarkArgs& a, std::ostream& out, std::ostream& err) {
    GraphFile f;
    Node root = null_node;
    try {
        f = parse_graph_file(read_file(a.file));
        root = resolve_node(f, a.root);
    } catch (const std::exception& ex) {
        err << "pgraph mark: " << ex.what() << '\n';
        return usage_error;
    }
    if (f.graph.kind() != GraphKind::Binary) {
        err << "pgraph mark: expected a binary graph, got " << kind_name(f.graph.kind()) << '\n';
        return usage_error;
    }

    SwOptions opts;
    opts.check_each_iteration = a.check_invariants;
    opts.trace = a.trace;
    opts.connected = a.connected;
    opts.debug_steps = a.debug_steps;
    SwResult res;
    try {
        res = sw_run(f.graph, root, opts);
    } catch (const PreconditionError& ex) {
        err << "pgraph mark: precondition violated: " << ex.what() << '\n';
        return check_failed;
    }

    if (a.trace) {
        for (const TraceEvent& ev : res.trace)
            out << format_trace_line(ev) << '\n';
    }
    out << format_graph(res.final_graph, f.symbols);
    bool restored = erase(res.final_graph) == erase(f.graph);
    out << "marked=" << filter_marks(res.final_graph, {Mark::X}).size() << " restored=" << (restored ? "ok" : "FAIL")
        << '\n';
    if (a.check_invariants) {
        out << "iterations=" << res.iterations << " checks=" << res.checks;
        if (a.debug_steps)
            out << " step_checks=" << res.step_checks;
        out << '\n';
    }
    if (res.failure) {
        err << "pgraph mark: " << *res.failure << '\n';
        return check_failed;
    }
    return ok;
}

int cmd_laws(const LawsArgs& a, std::ostream& out, std::ostream&) {
    LawOptions opts;
    opts.seed = a.seed;
    opts.cases = a.cases;
    opts.max_nodes = a.max_nodes;
    opts.exhaustive_tiny = a.exhaustive_tiny;
    opts.filter = a.filter;
    std::vector<LawStats> stats = run_laws(opts);
    std::size_t failed = 0;
    for (const LawStats& s : stats) {
        bool bad = s.failures > 0;
        if (bad && !s.probe)
            ++failed;
        out << std::left << std::setw(36) << s.name << " " << std::setw(14) << s.group << " cases=" << s.random_cases;
        if (a.exhaustive_tiny)
            out << " tiny=" << s.tiny_cases;
        out << " failures=" << s.failures << (s.probe ? " (probe)" : "") << " " << std::fixed << std::setprecision(2)
            << s.seconds << "s\n";
        for (const std::string& c : s.counterexamples)
            out << "  counterexample: " << c << '\n';
    }
    out << "laws=" << stats.size() << " failed=" << failed << '\n';
    return failed ? check_failed : ok;
}

int cmd_uf(const UfArgs& a, std::ostream& out, std::ostream& err) {
    UfScript script;
    try {
        script = parse_uf_script(read_file(a.file));
    } catch (const std::exception& ex) {
        err << "pgraph uf: " << ex.what() << '\n';
        return usage_error;
    }
    UfRun run;
    Partition oracle;
    try {
        run = run_uf_script(script);
        oracle = partition_oracle(script);
    } catch (const ScriptError& ex) {
        err << "pgraph uf: " << ex.what() << '\n';
        return usage_error;
    }
    for (const UfStep& s : run.steps)
        out << s.text << " -> " << s.result << '\n';
    if (run.failure) {
        err << "pgraph uf: " << *run.failure << '\n';
        return check_failed;
    }
    for (const auto& b : oracle.blocks) {
        out << "set {";
        bool first = true;
        for (const std::string& m : b.members) {
            out << (first ? "" : ",") << m;
            first = false;
        }
        out << "} rep=" << b.rep << '\n';
    }
    out << "ops=" << run.steps.size() << " set_checks=" << run.set_checks << " ok\n";
    return ok;
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
    GenConfig cfg;
    cfg.node_count = a.nodes;
    cfg.edge_density = a.density;
    cfg.seed = a.seed;
    cfg.closed_only = !a.open;
    cfg.inverted_forest = a.forest;
    cfg.components = a.components;
    if (a.kind == "binary")
        cfg.kind = GraphKind::Binary;
    else if (a.kind == "unary")
        cfg.kind = GraphKind::Unary;
    else if (a.kind == "general")
        cfg.kind = GraphKind::General;
    else {
        err << "pgraph gen: unknown kind '" << a.kind << "'\n";
        return usage_error;
    }
    if (a.marks == "O")
        cfg.marks = MarkMode::Unmarked;
    else if (a.marks == "random")
        cfg.marks = MarkMode::Random;
    else {
        err << "pgraph gen: unknown marks mode '" << a.marks << "'\n";
        return usage_error;
    }
    std::string text = format_graph(gen_graph(cfg));
    if (a.output.empty()) {
        out << text;
        return ok;
    }
    std::ofstream file(a.output);
    if (!(file << text)) {
        err << "pgraph gen: cannot write " << a.output << '\n';
        return usage_error;
    }
    return ok;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partial-graph toolkit: Schorr-Waite marking, law suites, union-find replay", "pgraph"};
    app.require_subcommand(1);

    MarkArgs mark;
    auto* m = app.add_subcommand("mark", "Run Schorr-Waite marking on a binary graph file");
    m->add_option("file", mark.file, "Graph file")->required();
    m->add_option("--root,-r", mark.root, "Root node (id or symbol)")->required();
    m->add_flag("--check-invariants", mark.check_invariants, "Check the loop invariant at every iteration");
    m->add_flag("--trace", mark.trace, "Print one line per iteration");
    m->add_flag("--connected", mark.connected, "Require every node to be reachable from the root");
    m->add_flag("--debug-steps", mark.debug_steps, "Check each PUSH/SWING/POP against its expected effect");

    LawsArgs laws;
    auto* l = app.add_subcommand("laws", "Run the algebraic law suite");
    l->add_option("--seed", laws.seed, "Random seed");
    l->add_option("--cases", laws.cases, "Random cases per law");
    l->add_option("--max-nodes", laws.max_nodes, "Largest random graph");
    l->add_flag("--exhaustive-tiny", laws.exhaustive_tiny, "Also sweep every binary graph over a 3-node universe");
    l->add_option("--filter", laws.filter, "Only laws whose name contains this");

    UfArgs uf;
    auto* u = app.add_subcommand("uf", "Replay a union-find script with set checks");
    u->add_option("file", uf.file, "Script file")->required();

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a random graph file");
    g->add_option("--nodes,-n", gen.nodes, "Node count");
    g->add_option("--density", gen.density, "Edge density in [0,1]")->check(CLI::Range(0.0, 1.0));
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_option("--kind", gen.kind, "binary, unary or general");
    g->add_flag("--open", gen.open, "Allow dangling edges");
    g->add_option("--marks", gen.marks, "O or random");
    g->add_flag("--forest", gen.forest, "Unary inverted forest");
    g->add_option("--components", gen.components, "Disconnected node ranges");
    g->add_option("--output,-o", gen.output, "Output file (default stdout)");

    std::vector<const char*> args;
    for (const std::string& s : argv)
        args.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (m->parsed())
            return cmd_mark(mark, out, err);
        if (l->parsed())
            return cmd_laws(laws, out, err);
        if (u->parsed())
            return cmd_uf(uf, out, err);
        return cmd_gen(gen, out, err);
    } catch (const std::exception& ex) {
        err << "pgraph: " << ex.what() << '\n';
        return usage_error;
    }
}

}  // namespace pgraph::cli
