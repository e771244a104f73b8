#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pgraph/graph.hpp"
#include "pgraph/heap.hpp"

namespace pgraph {

/// Ends of the paths from x: nodes outside g, or the first node a path
/// revisits. Follows the remove-then-recurse definition on any kind.
NodeSet summit(const PartialGraph& g, Node x);
NodeSet summits(const PartialGraph& g);
/// Self-loops.
NodeSet loops(const PartialGraph& g);
/// Nodes lying on some cycle.
NodeSet cycles(const PartialGraph& g);
/// Edge targets outside the graph (null included).
NodeSet dangls(const PartialGraph& g);
/// Every cycle is a self-loop.
bool preacyclic(const PartialGraph& g);

struct SetWitness {
    NodeSet members;
    Node representative = null_node;
};

struct SetCheck {
    bool ok = false;
    std::string diagnostic;
};

/// Restricts h to the witness members and checks that the fragment is
/// an inverted tree rooted at the representative.
SetCheck check_set(const Heap& h, const SetWitness& w);

/// NEW: one fresh cell pointing to itself.
Node uf_new(Heap& h);
/// FIND: follows successors until a self-loop. HeapFault when the chase
/// leaves `footprint` (if given) or runs longer than the heap allows.
Node uf_find(const Heap& h, Node x, const NodeSet* footprint = nullptr);
/// UNION of two representatives: links x1 under x2 and returns x2.
Node uf_union(Heap& h, Node x1, Node x2);

class ScriptError : public std::runtime_error {
public:
    ScriptError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct UfOp {
    enum class Kind { New, Find, Union };
    Kind kind = Kind::New;
    std::string a;
    std::string b;
    std::size_t line = 0;
};

struct UfScript {
    std::vector<UfOp> ops;
};

/// `new h`, `find h`, `union h h`, one per line; `#` starts a comment.
UfScript parse_uf_script(std::string_view text);
std::string format_uf_script(const UfScript& s);

struct UfStep {
    std::string text;
    /// Handle naming the result's set representative (new: the handle).
    std::string result;
    Node address = null_node;
};

struct UfRun {
    Heap heap;
    std::map<std::string, Node> handles;
    std::vector<UfStep> steps;
    std::size_t set_checks = 0;
    std::optional<std::string> failure;
};

struct UfRunOptions {
    /// check_set on every live set after each op.
    bool check_sets = true;
    /// Compare find results with the explicit-partition oracle.
    bool compare_oracle = true;
};

/// Replays a script against the heap. A union first FINDs both handles
/// and does nothing when they share a representative. Handle errors throw
/// ScriptError; check failures stop the run and set `failure`.
UfRun run_uf_script(const UfScript& script, const UfRunOptions& opts = {});

}  // namespace pgraph
