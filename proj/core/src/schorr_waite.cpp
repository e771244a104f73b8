#include "pgraph/schorr_waite.hpp"

#include <algorithm>
#include <sstream>

namespace pgraph {

namespace {

const MarkSet partial_marks{Mark::L, Mark::R};

std::string node_list(const std::vector<Node>& xs) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << (i ? "," : "") << xs[i];
    os << ']';
    return os.str();
}

// First node where a and b differ, described; empty when equal.
std::string graph_diff(const PartialGraph& a, const PartialGraph& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first))
            return "node " + std::to_string(ia->first) + " only on the left";
        if (ia == a.end() || ib->first < ia->first)
            return "node " + std::to_string(ib->first) + " only on the right";
        if (!(ia->second == ib->second)) {
            return "node " + std::to_string(ia->first) + ": " + node_list(ia->second.adj) + " vs " +
                   node_list(ib->second.adj);
        }
        ++ia;
        ++ib;
    }
    return {};
}

}  // namespace

Node prev_in(const Stack& alpha, Node x) {
    auto it = std::find(alpha.begin(), alpha.end(), x);
    if (it == alpha.end() || it == alpha.begin())
        return null_node;
    return *(it - 1);
}

Node next_in(const Stack& alpha, Node t, Node x) {
    auto it = std::find(alpha.begin(), alpha.end(), x);
    if (it == alpha.end() || it + 1 == alpha.end())
        return t;
    return *(it + 1);
}

std::vector<Node> if_mark(const NodeFn& f, Node x, const Entry& e) {
    if (e.adj.size() != 2)
        throw ArityError("if_mark on a non-binary entry");
    switch (e.mark) {
    case Mark::L: return {f(x), e.adj[1]};
    case Mark::R: return {e.adj[0], f(x)};
    default: return e.adj;
    }
}

PartialGraph map_if_mark(const NodeFn& f, const PartialGraph& g) {
    return map_graph([&](Node x, const Entry& e) { return Entry{Mark::Unit, if_mark(f, x, e)}; }, g);
}

PartialGraph inset(const Stack& alpha, const PartialGraph& g) {
    return map_if_mark([&](Node x) { return prev_in(alpha, x); }, g);
}

PartialGraph restore(Node t, const Stack& alpha, const PartialGraph& g) {
    return map_if_mark([&](Node x) { return next_in(alpha, t, x); }, g);
}

NodeSet marked0(const PartialGraph& g) {
    return nodes0(filter_marks(g, {Mark::L, Mark::R, Mark::X}));
}

StackChase reconstruct_stack(const PartialGraph& g, Node p) {
    StackChase out;
    NodeSet seen;
    for (Node x = p; x != null_node;) {
        const Entry* e = g.find(x);
        if (!e) {
            out.failure = "stack chain leaves the graph at " + std::to_string(x);
            break;
        }
        if (!seen.insert(x).second) {
            out.failure = "stack chain revisits " + std::to_string(x);
            break;
        }
        if (e->mark == Mark::L) {
            out.partial.push_back(x);
            x = e->adj[0];
        } else if (e->mark == Mark::R) {
            out.partial.push_back(x);
            x = e->adj[1];
        } else {
            out.failure = "stack chain reaches " + std::to_string(x) + " marked " + mark_char(e->mark);
            break;
        }
    }
    std::reverse(out.partial.begin(), out.partial.end());
    if (out.failure.empty())
        out.stack = out.partial;
    return out;
}

bool InvariantReport::ok() const {
    return std::all_of(conjuncts.begin(), conjuncts.end(), [](const auto& c) { return c.ok; });
}

std::optional<char> InvariantReport::first_failure() const {
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (!conjuncts[i].ok)
            return static_cast<char>('a' + i);
    }
    return std::nullopt;
}

std::string InvariantReport::summary() const {
    if (ok())
        return "ok";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (conjuncts[i].ok)
            continue;
        os << (first ? "" : "; ") << '(' << static_cast<char>('a' + i) << ") " << conjuncts[i].witness;
        first = false;
    }
    return os.str();
}

InvariantReport check_inv_with(const PartialGraph& g0, const PartialGraph& g, const Stack& alpha,
                               Node t, Node p) {
    InvariantReport r;
    r.stack = alpha;
    auto fail = [&](int i, std::string why) {
        if (r.conjuncts[i].ok)
            r.conjuncts[i] = {false, std::move(why)};
    };

    NodeSet members;
    for (Node x : alpha) {
        if (x == null_node)
            fail(0, "null on the stack");
        else if (!members.insert(x).second)
            fail(0, "node " + std::to_string(x) + " twice on the stack");
    }
    Node top = alpha.empty() ? null_node : alpha.back();
    if (p != top)
        fail(0, "p=" + std::to_string(p) + " but the stack top is " + std::to_string(top));
    if (t != null_node && !g.contains(t))
        fail(0, "t=" + std::to_string(t) + " is not a node");

    if (!closed(g)) {
        NodeSet dangling = set_minus(sinks(g), nodes0(g));
        fail(1, "dangling edges to " + to_string(dangling));
    }

    NodeSet partial = nodes(filter_marks(g, partial_marks));
    if (partial != members)
        fail(2, "partially marked " + to_string(partial) + " vs stack " + to_string(members));

    const PartialGraph erased = erase(g);
    if (std::string d = graph_diff(inset(alpha, g), erased); !d.empty())
        fail(3, "inset differs from erasure at " + d);

    if (std::string d = graph_diff(restore(t, alpha, g), erase(g0)); !d.empty())
        fail(4, "restore differs from the initial graph at " + d);

    const PartialGraph unmarked = filter_marks(g, {Mark::O});
    NodeSet covered = reach(unmarked, t);
    for (Node y : alpha) {
        if (const Entry* e = g.find(y); e && e->adj.size() == 2)
            covered = set_union(covered, reach(unmarked, e->adj[1]));
    }
    NodeSet stray = set_minus(nodes(unmarked), covered);
    if (!stray.empty())
        fail(5, "unmarked nodes " + to_string(stray) + " not reachable from t or the stack");
    return r;
}

InvariantReport check_inv(const PartialGraph& g0, const PartialGraph& g, Node t, Node p) {
    StackChase chase = reconstruct_stack(g, p);
    if (chase.stack)
        return check_inv_with(g0, g, *chase.stack, t, p);
    InvariantReport r = check_inv_with(g0, g, chase.partial, t, p);
    r.stack_found = false;
    r.conjuncts[0] = {false, chase.failure};
    if (r.conjuncts[2].ok)
        r.conjuncts[2] = {false, chase.failure};
    return r;
}

const char* op_name(SwOp op) {
    switch (op) {
    case SwOp::Push: return "PUSH";
    case SwOp::Swing: return "SWING";
    case SwOp::Pop: return "POP";
    }
    return "?";
}

void compute_tm(MachineState& s) {
    s.tm = s.t == null_node || s.heap.read_mark(s.t) != Mark::O;
}

void op_push(MachineState& s) {
    if (s.t == null_node)
        throw HeapFault("PUSH with t = null");
    if (s.heap.read_mark(s.t) != Mark::O)
        throw GuardViolation("PUSH on marked node " + std::to_string(s.t));
    s.tmp = s.heap.read_pointer(s.t + 1);
    s.heap.write(s.t + 1, CellValue::pointer(s.p));
    s.heap.write(s.t, Mark::L);
    s.p = s.t;
    s.t = s.tmp;
}

void op_swing(MachineState& s) {
    if (!s.tm)
        throw GuardViolation("SWING with an unmarked tip");
    if (s.p == null_node)
        throw HeapFault("SWING with p = null");
    if (s.heap.read_mark(s.p) != Mark::L)
        throw GuardViolation("SWING on " + std::to_string(s.p) + ", which is not marked L");
    s.tmp1 = s.heap.read_pointer(s.p + 2);
    s.tmp2 = s.heap.read_pointer(s.p + 1);
    s.heap.write(s.p + 2, CellValue::pointer(s.tmp2));
    s.heap.write(s.p + 1, CellValue::pointer(s.t));
    s.heap.write(s.p, Mark::R);
    s.t = s.tmp1;
}

void op_pop(MachineState& s) {
    if (!s.tm)
        throw GuardViolation("POP with an unmarked tip");
    if (s.p == null_node)
        throw HeapFault("POP with p = null");
    if (s.heap.read_mark(s.p) != Mark::R)
        throw GuardViolation("POP on " + std::to_string(s.p) + ", which is not marked R");
    s.tmp = s.heap.read_pointer(s.p + 2);
    s.heap.write(s.p + 2, CellValue::pointer(s.t));
    s.heap.write(s.p, Mark::X);
    s.t = s.p;
    s.p = s.tmp;
}

std::optional<std::string> check_step(SwOp op, const PartialGraph& g0, const PartialGraph& before,
                                      Node t0, Node p0, const PartialGraph& after, Node t1, Node p1) {
    const std::string where = std::string(op_name(op)) + ": ";
    Node pivot = op == SwOp::Push ? t0 : p0;
    const Entry* e = before.find(pivot);
    Mark want = op == SwOp::Push ? Mark::O : op == SwOp::Swing ? Mark::L : Mark::R;
    if (!e || e->mark != want)
        return where + "premise: node " + std::to_string(pivot) + " is not marked " + mark_char(want);

    StackChase chase = reconstruct_stack(before, p0);
    if (!chase.stack)
        return where + "premise: " + chase.failure;
    const Stack& alpha = *chase.stack;

    InvariantReport pre = check_inv_with(g0, before, alpha, t0, p0);
    if (!pre.ok())
        return where + "premise inv': " + pre.summary();
    if (op != SwOp::Push && !marked0(before).count(t0))
        return where + "premise: t=" + std::to_string(t0) + " is unmarked";

    const Node l = e->adj[0];
    const Node r = e->adj[1];
    Entry next;
    Stack alpha1 = alpha;
    Node want_t = null_node;
    Node want_p = null_node;
    switch (op) {
    case SwOp::Pop:
        next = {Mark::X, {l, t0}};
        alpha1.pop_back();
        want_t = p0;
        want_p = r;
        break;
    case SwOp::Swing:
        next = {Mark::R, {t0, l}};
        want_t = r;
        want_p = p0;
        break;
    case SwOp::Push:
        next = {Mark::L, {p0, r}};
        alpha1.push_back(t0);
        want_t = l;
        want_p = t0;
        break;
    }
    JoinResult expected = join(singleton(pivot, next, GraphKind::Binary), remove(before, pivot));
    if (!expected || !(*expected == after))
        return where + "result graph differs at " + graph_diff(after, *expected);
    if (t1 != want_t || p1 != want_p) {
        return where + "registers t=" + std::to_string(t1) + " p=" + std::to_string(p1) + ", expected t=" +
               std::to_string(want_t) + " p=" + std::to_string(want_p);
    }
    InvariantReport post = check_inv_with(g0, after, alpha1, t1, p1);
    if (!post.ok())
        return where + "conclusion inv': " + post.summary();
    return std::nullopt;
}

std::optional<std::string> check_postcondition(const PartialGraph& g0, const PartialGraph& g, Node r) {
    if (std::string d = graph_diff(erase(g0), erase(g)); !d.empty())
        return "edges not restored: " + d;
    PartialGraph done = filter_marks(g, {Mark::X});
    PartialGraph rest = filter_marks(g, {Mark::O});
    JoinResult split = join(done, rest);
    if (!split || !(*split == g))
        return "final graph has partially marked nodes " + to_string(nodes(filter_marks(g, partial_marks)));
    NodeSet want = reach(filter_marks(g0, {Mark::O}), r);
    if (nodes(done) != want)
        return "marked " + to_string(nodes(done)) + ", reachable " + to_string(want);
    return std::nullopt;
}

void check_preconditions(const PartialGraph& g0, Node r, bool connected) {
    if (g0.kind() != GraphKind::Binary)
        throw PreconditionError("graph is not binary");
    if (!closed(g0))
        throw PreconditionError("graph is not closed: dangling edges to " +
                                to_string(set_minus(sinks(g0), nodes0(g0))));
    if (!g0.contains(r))
        throw PreconditionError("root " + std::to_string(r) + " is not a node");
    PartialGraph unmarked = filter_marks(g0, {Mark::O});
    if (!(unmarked == g0)) {
        throw PreconditionError("graph is not unmarked (g0 = g0/O fails at " +
                                to_string(set_minus(nodes(g0), nodes(unmarked))) + ")");
    }
    if (connected && nodes(g0) != reach(unmarked, r)) {
        throw PreconditionError("graph is not connected from the root: unreached " +
                                to_string(set_minus(nodes(g0), reach(unmarked, r))));
    }
}

std::string format_trace_line(const TraceEvent& ev) {
    std::ostringstream os;
    os << "iter=" << ev.iteration << " op=" << op_name(ev.op) << " t=" << ev.t_after << " p=" << ev.p_after
       << " inv=";
    if (!ev.report)
        os << "-";
    else if (auto c = ev.report->first_failure())
        os << "FAIL(" << *c << ")";
    else if (!ev.tm_ok)
        os << "FAIL(tm)";
    else
        os << "ok";
    return os.str();
}

SwResult sw_run(const PartialGraph& g0, Node r, const SwOptions& opts) {
    check_preconditions(g0, r, opts.connected);
    MachineState s;
    try {
        s.heap = layout_binary(g0);
    } catch (const LayoutError& ex) {
        throw PreconditionError(std::string("cannot lay out the graph: ") + ex.what());
    }
    const NodeSet ns = nodes(g0);
    const std::size_t cap = 3 * ns.size() + 8;
    const bool inspect = opts.check_each_iteration || opts.trace;
    // The invariant speaks about the part reachable from r; the rest is
    // framed out and must stay exactly as it was.
    const NodeSet footprint = reach(g0, r);
    const NodeSet frame = set_minus(ns, footprint);
    const PartialGraph g0_reached = filter_nodes(g0, footprint);
    const PartialGraph g0_frame = filter_nodes(g0, frame);

    SwResult res;
    auto loop_head = [&](std::optional<InvariantReport>& slot, bool& tm_ok) {
        PartialGraph g = abstract_binary(s.heap, ns);
        slot = check_inv(g0_reached, filter_nodes(g, footprint), s.t, s.p);
        tm_ok = s.tm == (marked0(g).count(s.t) != 0);
        ++res.checks;
        if (!opts.check_each_iteration)
            return;
        std::string why;
        if (!slot->ok())
            why = slot->summary();
        else if (!tm_ok)
            why = "tm disagrees with the marking of t";
        else if (!(filter_nodes(g, frame) == g0_frame))
            why = "unreached nodes changed: " + graph_diff(g0_frame, filter_nodes(g, frame));
        if (!why.empty())
            res.failure = "invariant failed after iteration " + std::to_string(res.iterations) + ": " + why;
    };

    try {
        s.t = r;
        s.p = null_node;
        compute_tm(s);
        if (inspect) {
            bool tm_ok = true;
            loop_head(res.initial_report, tm_ok);
        }
        while (!res.failure && (s.p != null_node || !s.tm)) {
            if (res.iterations >= cap) {
                res.failure = "iteration cap " + std::to_string(cap) + " exceeded";
                break;
            }
            TraceEvent ev;
            ev.iteration = ++res.iterations;
            ev.t_before = s.t;
            ev.p_before = s.p;
            std::optional<PartialGraph> before;
            if (opts.debug_steps)
                before = abstract_binary(s.heap, footprint);

            if (s.tm) {
                s.pm = s.heap.read_mark(s.p);
                if (s.pm == Mark::R) {
                    ev.op = SwOp::Pop;
                    op_pop(s);
                } else {
                    ev.op = SwOp::Swing;
                    op_swing(s);
                }
            } else {
                ev.op = SwOp::Push;
                op_push(s);
            }
            ev.t_after = s.t;
            ev.p_after = s.p;

            if (before) {
                ++res.step_checks;
                auto bad = check_step(ev.op, g0_reached, *before, ev.t_before, ev.p_before,
                                      abstract_binary(s.heap, footprint), s.t, s.p);
                if (bad)
                    res.failure = "iteration " + std::to_string(ev.iteration) + ": " + *bad;
            }
            compute_tm(s);
            if (inspect)
                loop_head(ev.report, ev.tm_ok);
            if (inspect)
                res.trace.push_back(std::move(ev));
        }
    } catch (const std::exception& ex) {
        res.failure = "iteration " + std::to_string(res.iterations) + ": " + ex.what();
    }

    try {
        res.final_graph = abstract_binary(s.heap, ns);
    } catch (const AbstractionError& ex) {
        if (!res.failure)
            res.failure = std::string("final heap does not abstract: ") + ex.what();
        return res;
    }
    if (!res.failure) {
        if (auto bad = check_postcondition(g0, res.final_graph, r))
            res.failure = "postcondition: " + *bad;
    }
    return res;
}

}  // namespace pgraph
