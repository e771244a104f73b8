#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pgraph/oracles.hpp"
#include "pgraph/schorr_waite.hpp"

using namespace pgraph;
using namespace fixtures::nine;

namespace {

PartialGraph binary(std::initializer_list<std::pair<Node, Entry>> entries) {
    PartialGraph::Map m(entries.begin(), entries.end());
    return PartialGraph::from_entries(GraphKind::Binary, std::move(m));
}

MachineState start_at(const PartialGraph& g, Node r) {
    MachineState s;
    s.heap = layout_binary(g);
    s.t = r;
    compute_tm(s);
    return s;
}

// One iteration of the marking loop, choosing the operation the same
// way the algorithm does.
SwOp step(MachineState& s) {
    SwOp op = SwOp::Push;
    if (s.tm) {
        s.pm = s.heap.read_mark(s.p);
        op = s.pm == Mark::R ? SwOp::Pop : SwOp::Swing;
    }
    switch (op) {
    case SwOp::Push: op_push(s); break;
    case SwOp::Swing: op_swing(s); break;
    case SwOp::Pop: op_pop(s); break;
    }
    compute_tm(s);
    return op;
}

const NodeFn tag = [](Node x) { return 1000 + x; };

}  // namespace

TEST(StackFunctions, PrevAndNext) {
    Stack alpha{n1, n2, n5};
    EXPECT_EQ(prev_in(alpha, n2), n1);
    EXPECT_EQ(prev_in(alpha, n1), null_node);
    EXPECT_EQ(prev_in(alpha, n9), null_node);
    EXPECT_EQ(next_in(alpha, n6, n2), n5);
    EXPECT_EQ(next_in(alpha, n6, n5), n6);
    EXPECT_EQ(next_in(alpha, n6, n9), n6);
    EXPECT_EQ(prev_in({}, n1), null_node);
    EXPECT_EQ(next_in({}, n6, n1), n6);
}

TEST(IfMark, RedirectsByMark) {
    EXPECT_EQ(if_mark(tag, n1, {Mark::L, {0, n9}}), (std::vector<Node>{1000 + n1, n9}));
    EXPECT_EQ(if_mark(tag, n2, {Mark::R, {n3, n1}}), (std::vector<Node>{n3, 1000 + n2}));
    EXPECT_EQ(if_mark(tag, n4, {Mark::O, {n5, n6}}), (std::vector<Node>{n5, n6}));
    EXPECT_EQ(if_mark(tag, n4, {Mark::X, {n5, n6}}), (std::vector<Node>{n5, n6}));
    EXPECT_THROW(if_mark(tag, n4, {Mark::O, {n5}}), ArityError);
}

TEST(MapIfMark, ErasesContents) {
    PartialGraph g = map_if_mark(tag, midway());
    EXPECT_EQ(g.mark(n1), Mark::Unit);
    EXPECT_EQ(g.adj(n1), (std::vector<Node>{1000 + n1, n9}));
    EXPECT_EQ(g.adj(n6), midway().adj(n6));
}

TEST(Inset, StackInMidwayGraph) {
    EXPECT_EQ(inset({n1, n2, n5}, midway()), erase(midway()));
}

TEST(Inset, PermutedStackFails) {
    EXPECT_NE(inset({n2, n5, n1}, midway()), erase(midway()));
}

TEST(Inset, NoPartialNodesIsErasure) {
    EXPECT_EQ(inset({n1, n2}, start()), erase(start()));
    EXPECT_EQ(restore(n4, {}, start()), erase(start()));
}

TEST(Restore, RecoversInitialEdges) {
    PartialGraph r = restore(n6, {n1, n2, n5}, midway());
    EXPECT_EQ(r, erase(start()));
    EXPECT_EQ(r.adj(n1), (std::vector<Node>{n2, n9}));
    EXPECT_EQ(r.adj(n2), (std::vector<Node>{n3, n5}));
    EXPECT_EQ(r.adj(n5), (std::vector<Node>{n6, n8}));
}

TEST(Restore, StackTopMovesIntoTip) {
    // Every partial node other than the top is in the shorter stack.
    PartialGraph g2 = midway().with_entry(n5, {Mark::X, {n6, n8}});
    EXPECT_EQ(restore(n6, {n1, n2, n5}, g2), restore(n5, {n1, n2}, g2));
}

TEST(Marked0, IncludesNull) {
    EXPECT_EQ(marked0(midway()), (NodeSet{0, n1, n2, n3, n4, n5}));
    EXPECT_EQ(marked0(start()), NodeSet{0});
}

TEST(ReconstructStack, FollowsReversedPath) {
    StackChase c = reconstruct_stack(midway(), n5);
    ASSERT_TRUE(c.stack);
    EXPECT_EQ(*c.stack, (Stack{n1, n2, n5}));
    EXPECT_EQ(*reconstruct_stack(midway(), null_node).stack, Stack{});
}

TEST(ReconstructStack, FailsOnMarkedX) {
    StackChase c = reconstruct_stack(midway(), n3);
    EXPECT_FALSE(c.stack);
    EXPECT_FALSE(c.failure.empty());
}

TEST(ReconstructStack, FailsOnCycle) {
    PartialGraph g = binary({{3, {Mark::L, {6, 0}}}, {6, {Mark::L, {3, 0}}}});
    EXPECT_FALSE(reconstruct_stack(g, 6).stack);
}

TEST(CheckInv, HoldsInitially) {
    InvariantReport r = check_inv(start(), start(), n1, null_node);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_TRUE(r.stack.empty());
}

TEST(CheckInv, HoldsMidway) {
    InvariantReport r = check_inv(start(), midway(), n6, n5);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_EQ(r.stack, (Stack{n1, n2, n5}));
    EXPECT_EQ(r.summary(), "ok");
}

TEST(CheckInv, FlippedMarkBreaksStackShape) {
    PartialGraph bad = midway().with_entry(n2, {Mark::L, {n3, n1}});
    InvariantReport r = check_inv_with(start(), bad, {n1, n2, n5}, n6, n5);
    EXPECT_FALSE(r.conjuncts[3].ok);
    EXPECT_FALSE(r.ok());
    EXPECT_FALSE(check_inv(start(), bad, n6, n5).ok());
}

TEST(CheckInv, WrongTipBreaksRestore) {
    InvariantReport r = check_inv(start(), midway(), n7, n5);
    EXPECT_FALSE(r.conjuncts[4].ok);
}

TEST(CheckInv, UnreachedUnmarkedNodeBreaksReachability) {
    // n9 only hangs off n1's right child and n8; drop the n8 edge and
    // make n1's right child null, so n9 is not reachable any more.
    PartialGraph g0 = start().with_entry(n1, {Mark::O, {n2, 0}}).with_entry(n8, {Mark::O, {0, 0}});
    PartialGraph g = midway().with_entry(n1, {Mark::L, {0, 0}}).with_entry(n8, {Mark::O, {0, 0}});
    InvariantReport r = check_inv(g0, g, n6, n5);
    EXPECT_FALSE(r.conjuncts[5].ok);
}

TEST(Tm, ComputedFromTip) {
    MachineState s = start_at(start(), n1);
    EXPECT_FALSE(s.tm);
    s.t = null_node;
    compute_tm(s);
    EXPECT_TRUE(s.tm);
    s.heap.write(n1, Mark::L);
    s.t = n1;
    compute_tm(s);
    EXPECT_TRUE(s.tm);
}

TEST(Operations, ReachMidwayState) {
    MachineState s = start_at(start(), n1);
    int iterations = 0;
    while (!(s.t == n6 && s.p == n5)) {
        step(s);
        ASSERT_LT(++iterations, 30);
    }
    EXPECT_EQ(abstract_binary(s.heap, nodes(start())), midway());
    EXPECT_EQ(iterations, 10);
}

TEST(Operations, PushPivotsOnTip) {
    MachineState s = start_at(midway(), n6);
    s.p = n5;
    op_push(s);
    PartialGraph g = abstract_binary(s.heap, nodes(midway()));
    EXPECT_EQ(g.at(n6), (Entry{Mark::L, {n5, 0}}));
    EXPECT_EQ(s.t, n7);
    EXPECT_EQ(s.p, n6);
    EXPECT_EQ(remove(g, n6), remove(midway(), n6));
}

TEST(Operations, SwingPivotsOnTop) {
    PartialGraph g0 = binary({{3, {Mark::L, {0, 6}}}, {6, {Mark::X, {0, 0}}}});
    MachineState s = start_at(g0, 6);
    s.p = 3;
    op_swing(s);
    PartialGraph g = abstract_binary(s.heap, nodes(g0));
    EXPECT_EQ(g.at(3), (Entry{Mark::R, {6, 0}}));
    EXPECT_EQ(s.t, 6u);
    EXPECT_EQ(s.p, 3u);
}

TEST(Operations, PopPivotsOnTop) {
    PartialGraph g0 = binary({{3, {Mark::R, {6, 9}}}, {6, {Mark::X, {0, 0}}}, {9, {Mark::L, {0, 0}}}});
    MachineState s = start_at(g0, 6);
    s.p = 3;
    op_pop(s);
    PartialGraph g = abstract_binary(s.heap, nodes(g0));
    EXPECT_EQ(g.at(3), (Entry{Mark::X, {6, 6}}));
    EXPECT_EQ(s.t, 3u);
    EXPECT_EQ(s.p, 9u);
}

TEST(Operations, GuardsAndFaults) {
    MachineState s = start_at(midway(), null_node);
    EXPECT_THROW(op_push(s), HeapFault);
    s.p = n2;
    EXPECT_THROW(op_swing(s), GuardViolation);
    s.p = n1;
    EXPECT_THROW(op_pop(s), GuardViolation);
    s.t = n3;
    EXPECT_THROW(op_push(s), GuardViolation);
    s.p = null_node;
    EXPECT_THROW(op_pop(s), HeapFault);
}

TEST(CheckStep, AcceptsEveryStepOfARun) {
    MachineState s = start_at(start(), n1);
    std::size_t steps = 0;
    while (s.p != null_node || !s.tm) {
        PartialGraph before = abstract_binary(s.heap, nodes(start()));
        Node t0 = s.t, p0 = s.p;
        SwOp op = step(s);
        auto bad = check_step(op, start(), before, t0, p0, abstract_binary(s.heap, nodes(start())), s.t, s.p);
        ASSERT_FALSE(bad) << *bad;
        ++steps;
    }
    EXPECT_EQ(steps, 27u);
}

TEST(CheckStep, RejectsWrongResult) {
    MachineState s = start_at(midway(), n6);
    s.p = n5;
    PartialGraph before = midway();
    op_push(s);
    PartialGraph after = abstract_binary(s.heap, nodes(before));
    EXPECT_FALSE(check_step(SwOp::Push, start(), before, n6, n5, after, s.t, s.p));
    EXPECT_TRUE(check_step(SwOp::Push, start(), before, n6, n5, after, n8, s.p));
    EXPECT_TRUE(check_step(SwOp::Swing, start(), before, n6, n5, after, s.t, s.p));
}

TEST(SwRun, MarksNineNodeGraph) {
    SwOptions opts;
    opts.check_each_iteration = true;
    opts.debug_steps = true;
    opts.connected = true;
    SwResult r = sw_run(start(), n1, opts);
    ASSERT_TRUE(r.ok()) << *r.failure;
    EXPECT_EQ(filter_marks(r.final_graph, {Mark::X}).size(), 9u);
    EXPECT_EQ(erase(r.final_graph), erase(start()));
    EXPECT_EQ(r.iterations, 27u);
    EXPECT_EQ(r.checks, 28u);
    EXPECT_EQ(r.step_checks, 27u);
    ASSERT_TRUE(r.initial_report);
    EXPECT_TRUE(r.initial_report->ok());
}

TEST(SwRun, SingleNode) {
    PartialGraph g = singleton(3, Mark::O, {0, 0}, GraphKind::Binary);
    SwOptions opts;
    opts.trace = true;
    SwResult r = sw_run(g, 3, opts);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.final_graph, singleton(3, Mark::X, {0, 0}, GraphKind::Binary));
    ASSERT_EQ(r.trace.size(), 3u);
    EXPECT_EQ(r.trace[0].op, SwOp::Push);
    EXPECT_EQ(r.trace[1].op, SwOp::Swing);
    EXPECT_EQ(r.trace[2].op, SwOp::Pop);
    EXPECT_EQ(format_trace_line(r.trace[2]), "iter=3 op=POP t=3 p=0 inv=ok");
}

TEST(SwRun, UnreachedComponentUntouched) {
    PartialGraph g = binary({{3, {Mark::O, {6, 0}}}, {6, {Mark::O, {3, 3}}}, {9, {Mark::O, {12, 9}}},
                             {12, {Mark::O, {0, 9}}}});
    SwResult r = sw_run(g, 3);
    ASSERT_TRUE(r.ok()) << *r.failure;
    EXPECT_EQ(filter_nodes(r.final_graph, {9, 12}), filter_nodes(g, {9, 12}));
    EXPECT_EQ(nodes(filter_marks(r.final_graph, {Mark::X})), (NodeSet{3, 6}));
}

TEST(SwRun, Preconditions) {
    EXPECT_THROW(sw_run(start(), 99), PreconditionError);
    EXPECT_THROW(sw_run(start().with_entry(n4, {Mark::X, {0, n2}}), n1), PreconditionError);
    EXPECT_THROW(sw_run(start().with_entry(n4, {Mark::O, {0, 100}}), n1), PreconditionError);
    EXPECT_THROW(sw_run(singleton(1, Mark::O, {}), 1), PreconditionError);

    PartialGraph g = binary({{3, {Mark::O, {0, 0}}}, {6, {Mark::O, {0, 0}}}});
    SwOptions opts;
    opts.connected = true;
    EXPECT_THROW(sw_run(g, 3, opts), PreconditionError);
    EXPECT_TRUE(sw_run(g, 3).ok());
}

TEST(SwRun, MatchesDepthFirstOracle) {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        GenConfig cfg;
        cfg.node_count = 1 + rng.below(20);
        cfg.edge_density = rng.unit();
        cfg.seed = rng.next();
        PartialGraph g = gen_graph(cfg);
        Node r = gen_node_id(cfg, rng.below(cfg.node_count));
        SwResult res = sw_run(g, r);
        ASSERT_TRUE(res.ok()) << *res.failure;
        EXPECT_EQ(nodes(filter_marks(res.final_graph, {Mark::X})), dfs_mark(g, r));
    }
}

TEST(Postcondition, DetectsBadFinalGraph) {
    SwResult r = sw_run(start(), n1);
    EXPECT_FALSE(check_postcondition(start(), r.final_graph, n1));
    EXPECT_TRUE(check_postcondition(start(), r.final_graph.with_entry(n9, {Mark::O, {0, 0}}), n1));
    EXPECT_TRUE(check_postcondition(start(), r.final_graph.with_entry(n9, {Mark::X, {n1, 0}}), n1));
}
