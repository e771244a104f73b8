#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgraph/graph.hpp"
#include "pgraph/heap.hpp"

namespace pgraph {

/// Partially marked nodes, bottom first; the last element is the top.
using Stack = std::vector<Node>;

using NodeFn = std::function<Node(Node)>;

/// Predecessor of the first occurrence of x in null ++ alpha; null if absent.
Node prev_in(const Stack& alpha, Node x);
/// Successor of the first occurrence of x in alpha ++ t; t if absent.
Node next_in(const Stack& alpha, Node t, Node x);

/// Children of x after redirecting the edge selected by its mark:
/// L replaces the left child by f(x), R the right one; O and X keep both.
std::vector<Node> if_mark(const NodeFn& f, Node x, const Entry& e);

/// map (if_mark f) with contents erased.
PartialGraph map_if_mark(const NodeFn& f, const PartialGraph& g);

PartialGraph inset(const Stack& alpha, const PartialGraph& g);
PartialGraph restore(Node t, const Stack& alpha, const PartialGraph& g);

/// nodes0 of the L/R/X part: every node tm may report as visited.
NodeSet marked0(const PartialGraph& g);

struct StackChase {
    std::optional<Stack> stack;
    /// Nodes collected before a failure, bottom first.
    Stack partial;
    std::string failure;
};

/// Walks back from p, following left children of L nodes and right
/// children of R nodes, until null.
StackChase reconstruct_stack(const PartialGraph& g, Node p);

struct ConjunctResult {
    bool ok = true;
    std::string witness;
};

struct InvariantReport {
    /// Conjuncts (a) to (f) in order.
    std::array<ConjunctResult, 6> conjuncts;
    Stack stack;
    bool stack_found = true;

    bool ok() const;
    /// 'a'..'f' of the first failing conjunct.
    std::optional<char> first_failure() const;
    std::string summary() const;
};

/// inv': the six conjuncts for an explicit stack.
InvariantReport check_inv_with(const PartialGraph& g0, const PartialGraph& g, const Stack& alpha,
                               Node t, Node p);
/// inv: reconstructs the stack from p, then checks inv' against it. When
/// the chase fails, (a) and (c) fail and the rest use the partial chain.
InvariantReport check_inv(const PartialGraph& g0, const PartialGraph& g, Node t, Node p);

/// Raised when an operation runs with its guard false.
class GuardViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MachineState {
    Heap heap;
    Node t = null_node;
    Node p = null_node;
    bool tm = false;
    Mark pm = Mark::Unit;
    Node tmp = null_node;
    Node tmp1 = null_node;
    Node tmp2 = null_node;
};

enum class SwOp { Push, Swing, Pop };
const char* op_name(SwOp op);

void compute_tm(MachineState& s);
void op_push(MachineState& s);
void op_swing(MachineState& s);
void op_pop(MachineState& s);

/// Checks the expected effect of one operation: its premise on the state
/// before, the shape of the graph after, and inv' for the new stack.
/// Returns a failure description, or nullopt.
std::optional<std::string> check_step(SwOp op, const PartialGraph& g0, const PartialGraph& before,
                                      Node t0, Node p0, const PartialGraph& after, Node t1, Node p1);

/// The general postcondition: same edges, only X and O marks, and the
/// X part is exactly what r reaches in the unmarked initial graph.
std::optional<std::string> check_postcondition(const PartialGraph& g0, const PartialGraph& g, Node r);

struct SwOptions {
    /// Checks inv and tm at every loop head on the part reachable from the
    /// root, and that the unreached nodes are untouched.
    bool check_each_iteration = false;
    bool trace = false;
    bool debug_steps = false;
    /// Also require nodes(g0) = reach(g0/O, r).
    bool connected = false;
};

struct TraceEvent {
    std::size_t iteration = 0;
    SwOp op = SwOp::Push;
    Node t_before = null_node;
    Node p_before = null_node;
    Node t_after = null_node;
    Node p_after = null_node;
    std::optional<InvariantReport> report;
    bool tm_ok = true;
};

std::string format_trace_line(const TraceEvent& ev);

struct SwResult {
    PartialGraph final_graph{GraphKind::Binary};
    std::vector<TraceEvent> trace;
    std::optional<InvariantReport> initial_report;
    std::size_t iterations = 0;
    std::size_t checks = 0;
    std::size_t step_checks = 0;
    /// Set when the run aborted or the postcondition failed.
    std::optional<std::string> failure;

    bool ok() const { return !failure; }
};

/// Throws PreconditionError naming the violated condition.
void check_preconditions(const PartialGraph& g0, Node r, bool connected);

/// Lays g0 out, runs the marking loop on the heap, and abstracts the
/// result. Preconditions are checked first (PreconditionError).
SwResult sw_run(const PartialGraph& g0, Node r, const SwOptions& opts = {});

}  // namespace pgraph
