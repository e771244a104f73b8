#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pgraph/graph.hpp"

namespace pgraph::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

struct MarkArgs {
    std::string file;
    std::string root;
    bool check_invariants = false;
    bool trace = false;
    bool connected = false;
    bool debug_steps = false;
};

struct LawsArgs {
    std::uint64_t seed = 1;
    std::size_t cases = 500;
    std::size_t max_nodes = 8;
    bool exhaustive_tiny = false;
    std::string filter;
};

struct UfArgs {
    std::string file;
};

struct GenArgs {
    std::size_t nodes = 8;
    double density = 0.5;
    std::uint64_t seed = 1;
    std::string kind = "binary";
    bool open = false;
    std::string marks = "O";
    bool forest = false;
    std::size_t components = 1;
    std::string output;
};

int cmd_mark(const MarkArgs& a, std::ostream& out, std::ostream& err);
int cmd_laws(const LawsArgs& a, std::ostream& out, std::ostream& err);
int cmd_uf(const UfArgs& a, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace pgraph::cli
