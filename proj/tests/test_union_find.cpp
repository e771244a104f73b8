#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pgraph/oracles.hpp"
#include "pgraph/union_find.hpp"

using namespace pgraph;
using namespace fixtures::forest;

namespace {

PartialGraph unary(std::initializer_list<std::pair<Node, Node>> succ) {
    PartialGraph::Map m;
    for (const auto& [x, y] : succ)
        m[x] = {Mark::Unit, {y}};
    return PartialGraph::from_entries(GraphKind::Unary, std::move(m));
}

}  // namespace

TEST(Summit, TwoTrees) {
    EXPECT_EQ(summit(before(), c), NodeSet{a});
    EXPECT_EQ(summit(before(), g), NodeSet{d});
    EXPECT_EQ(summit(after(), e), NodeSet{d});
    EXPECT_EQ(summit(after(), c), NodeSet{d});
    EXPECT_EQ(summit(before(), 42), NodeSet{42});
}

TEST(Summit, PathsOracleAgrees) {
    for (Node x : {a, b, c, d, e, f, g}) {
        EXPECT_EQ(summit(before(), x), summit_by_paths(before(), x));
        EXPECT_EQ(summit(after(), x), summit_by_paths(after(), x));
    }
}

TEST(Summit, DanglingAndCycles) {
    PartialGraph open = unary({{1, 2}, {2, 9}});
    EXPECT_EQ(summit(open, 1), NodeSet{9});
    PartialGraph ring = unary({{1, 2}, {2, 3}, {3, 1}});
    EXPECT_EQ(summit(ring, 1), NodeSet{1});
    EXPECT_EQ(summits(ring), (NodeSet{1, 2, 3}));
}

TEST(Summits, Examples) {
    EXPECT_EQ(summits(before()), (NodeSet{a, d}));
    EXPECT_EQ(summits(after()), NodeSet{d});
    EXPECT_TRUE(summits(PartialGraph(GraphKind::Unary)).empty());
}

TEST(Loops, Roots) {
    EXPECT_EQ(loops(before()), (NodeSet{a, d}));
    EXPECT_EQ(loops(after()), NodeSet{d});
}

TEST(CyclesAndDangls, Examples) {
    EXPECT_TRUE(cycles(PartialGraph{}).empty());
    EXPECT_TRUE(dangls(PartialGraph{}).empty());
    EXPECT_EQ(cycles(before()), (NodeSet{a, d}));
    EXPECT_TRUE(dangls(before()).empty());
    EXPECT_EQ(dangls(remove(before(), a)), NodeSet{a});
    EXPECT_EQ(cycles(unary({{1, 2}, {2, 1}, {3, 1}})), (NodeSet{1, 2}));
}

TEST(Preacyclic, OnlySelfLoops) {
    EXPECT_TRUE(preacyclic(before()));
    EXPECT_TRUE(preacyclic(PartialGraph(GraphKind::Unary)));
    EXPECT_FALSE(preacyclic(unary({{1, 2}, {2, 1}})));
    EXPECT_TRUE(preacyclic(unary({{1, 2}})));
}

TEST(CheckSet, TwoTrees) {
    Heap h = layout_unary(before());
    EXPECT_TRUE(check_set(h, {{a, b, c}, a}).ok);
    EXPECT_TRUE(check_set(h, {{d, e, f, g}, d}).ok);
    EXPECT_FALSE(check_set(h, {{a, b, c}, b}).ok);
    EXPECT_FALSE(check_set(h, {{b, c}, a}).ok);
    EXPECT_FALSE(check_set(h, {{a, b, c, d}, a}).ok);
    Heap merged = layout_unary(after());
    SetCheck all = check_set(merged, {{a, b, c, d, e, f, g}, d});
    EXPECT_TRUE(all.ok) << all.diagnostic;
}

TEST(CheckSet, MissingCellIsReported) {
    SetCheck r = check_set(Heap{}, {{5}, 5});
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.diagnostic.empty());
}

TEST(UfNew, SelfLoop) {
    Heap h;
    Node p = uf_new(h);
    EXPECT_EQ(p, 1u);
    EXPECT_EQ(h.read_pointer(p), p);
    EXPECT_TRUE(check_set(h, {{p}, p}).ok);
    Node q = uf_new(h);
    EXPECT_NE(p, q);
    EXPECT_TRUE(check_set(h, {{q}, q}).ok);
    EXPECT_TRUE(check_set(h, {{p}, p}).ok);
}

TEST(UfFind, Examples) {
    Heap h = layout_unary(before());
    EXPECT_EQ(uf_find(h, c), a);
    EXPECT_EQ(uf_find(h, a), a);
    EXPECT_EQ(uf_find(h, g), d);
    EXPECT_EQ(uf_find(layout_unary(after()), b), d);
}

TEST(UfFind, FootprintAndCycleFaults) {
    Heap h = layout_unary(before());
    NodeSet part{b, c};
    EXPECT_THROW(uf_find(h, c, &part), HeapFault);
    Heap ring = layout_unary(unary({{1, 2}, {2, 1}}));
    EXPECT_THROW(uf_find(ring, 1), HeapFault);
}

TEST(UfUnion, LinksUnderSecond) {
    Heap h = layout_unary(before());
    EXPECT_EQ(uf_union(h, a, d), d);
    EXPECT_EQ(h, layout_unary(after()));
    EXPECT_EQ(uf_find(h, b), d);
    EXPECT_TRUE(check_set(h, {{a, b, c, d, e, f, g}, d}).ok);

    Heap s;
    Node p = uf_new(s);
    Node q = uf_new(s);
    EXPECT_EQ(uf_union(s, p, q), q);
    EXPECT_TRUE(check_set(s, {{p, q}, q}).ok);
}

TEST(Script, ParseAndFormat) {
    UfScript s = parse_uf_script("new a\n# comment\nnew b  # trailing\nunion a b\nfind a\n");
    ASSERT_EQ(s.ops.size(), 4u);
    EXPECT_EQ(s.ops[2].kind, UfOp::Kind::Union);
    EXPECT_EQ(s.ops[2].a, "a");
    EXPECT_EQ(s.ops[2].b, "b");
    EXPECT_EQ(s.ops[3].line, 5u);
    EXPECT_EQ(format_uf_script(s), "new a\nnew b\nunion a b\nfind a\n");
    EXPECT_EQ(format_uf_script(parse_uf_script(format_uf_script(s))), format_uf_script(s));
}

TEST(Script, ParseErrors) {
    EXPECT_THROW(parse_uf_script("new\n"), ScriptError);
    EXPECT_THROW(parse_uf_script("merge a b\n"), ScriptError);
    EXPECT_THROW(parse_uf_script("find a b\n"), ScriptError);
    try {
        parse_uf_script("new a\n\nunion a\n");
        FAIL();
    } catch (const ScriptError& ex) {
        EXPECT_EQ(ex.line(), 3u);
    }
}

TEST(Script, HandleErrors) {
    EXPECT_THROW(run_uf_script(parse_uf_script("find a\n")), ScriptError);
    EXPECT_THROW(run_uf_script(parse_uf_script("new a\nnew a\n")), ScriptError);
    EXPECT_THROW(run_uf_script(parse_uf_script("new a\nunion a b\n")), ScriptError);
}

TEST(Script, SmallestMerge) {
    UfRun r = run_uf_script(parse_uf_script("new a\nnew b\nunion a b\nfind a\nfind b\n"));
    ASSERT_FALSE(r.failure) << *r.failure;
    ASSERT_EQ(r.steps.size(), 5u);
    EXPECT_EQ(r.steps[2].result, "b");
    EXPECT_EQ(r.steps[3].result, "b");
    EXPECT_EQ(r.steps[4].result, "b");
    EXPECT_EQ(uf_find(r.heap, r.handles.at("a")), r.handles.at("b"));
    EXPECT_GT(r.set_checks, 0u);
}

TEST(Script, TwoTreesThenUnion) {
    UfRun r = run_uf_script(parse_uf_script(fixtures::read_data("two_trees.uf")));
    ASSERT_FALSE(r.failure) << *r.failure;
    EXPECT_EQ(r.steps.back().result, "d");
    Node rep = r.handles.at("d");
    NodeSet all;
    for (const auto& [name, x] : r.handles) {
        all.insert(x);
        EXPECT_EQ(uf_find(r.heap, x), rep) << name;
    }
    EXPECT_TRUE(check_set(r.heap, {all, rep}).ok);
}

TEST(Script, SameSetUnionIsNoOp) {
    UfRun r = run_uf_script(parse_uf_script("new a\nnew b\nunion a b\nunion b a\nfind a\n"));
    ASSERT_FALSE(r.failure);
    EXPECT_EQ(r.steps.back().result, "b");
}

TEST(Script, RandomScriptsAgreeWithPartition) {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        UfScript s = gen_uf_script(rng, 60);
        UfRun r = run_uf_script(s);
        ASSERT_FALSE(r.failure) << *r.failure << "\n" << format_uf_script(s);
        Partition p = partition_oracle(s);
        for (const auto& blk : p.blocks) {
            for (const std::string& m : blk.members)
                ASSERT_EQ(uf_find(r.heap, r.handles.at(m)), r.handles.at(blk.rep));
        }
    }
}
