#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgraph/graph.hpp"
#include "pgraph/oracles.hpp"

namespace pgraph {

/// nullopt when the case passes, otherwise a counterexample description.
using LawOutcome = std::optional<std::string>;

struct Law {
    std::string name;
    /// partial_graph, heap_model, schorr_waite or union_find.
    std::string group;
    /// One randomized case on graphs of at most `max_nodes` nodes; the law
    /// draws its own inputs.
    std::function<LawOutcome(Rng&, std::size_t max_nodes)> random_case;
    /// All instances of the law for one graph of the tiny universe, if the
    /// law takes part in the exhaustive sweep.
    std::function<LawOutcome(const PartialGraph&)> tiny_case;
    /// Informational: failures are counted but do not fail the suite.
    bool probe = false;
};

const std::vector<Law>& law_registry();

struct LawOptions {
    std::uint64_t seed = 1;
    std::size_t cases = 500;
    std::size_t max_nodes = 8;
    bool exhaustive_tiny = false;
    /// Only laws whose name contains this.
    std::string filter;
    /// Counterexamples kept per law.
    std::size_t keep = 3;
};

struct LawStats {
    std::string name;
    std::string group;
    bool probe = false;
    std::size_t random_cases = 0;
    std::size_t tiny_cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> counterexamples;
    double seconds = 0;
};

std::vector<LawStats> run_laws(const LawOptions& opts);

/// True when no non-probe law failed.
bool laws_pass(const std::vector<LawStats>& stats);

}  // namespace pgraph
