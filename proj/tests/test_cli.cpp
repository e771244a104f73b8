#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pgraph/cli.hpp"

using namespace pgraph;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "pgraph");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    explicit TempFile(const std::string& text) {
        path_ = (std::filesystem::temp_directory_path() /
                 ("pgraph_cli_" + std::to_string(counter_++) + "_" + std::to_string(::getpid())))
                    .string();
        std::ofstream(path_) << text;
    }
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    static inline int counter_ = 0;
    std::string path_;
};

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(CliMark, NineNodeGraph) {
    Outcome r = run({"mark", fixtures::data_path("nine_node.graph"), "--root", "n1", "--check-invariants"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "marked=9 restored=ok")) << r.out;
    EXPECT_TRUE(contains(r.out, "iterations=27 checks=28")) << r.out;
    EXPECT_TRUE(contains(r.out, "# symbols: n1=3")) << r.out;
}

TEST(CliMark, TraceAndDebugSteps) {
    Outcome r = run({"mark", fixtures::data_path("nine_node.graph"), "-r", "3", "--trace", "--debug-steps",
                     "--check-invariants", "--connected"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "iter=1 op=PUSH t=6 p=3 inv=ok")) << r.out;
    EXPECT_TRUE(contains(r.out, "iter=27 op=POP t=3 p=0 inv=ok")) << r.out;
    EXPECT_TRUE(contains(r.out, "step_checks=27")) << r.out;
    EXPECT_FALSE(contains(r.out, "FAIL"));
}

TEST(CliMark, RootNotInGraph) {
    Outcome r = run({"mark", fixtures::data_path("nine_node.graph"), "--root", "99"});
    EXPECT_EQ(r.code, cli::check_failed);
    EXPECT_TRUE(contains(r.err, "precondition")) << r.err;
}

TEST(CliMark, MarkedInputRejected) {
    TempFile f("kind binary\n3 X 0 0\n");
    Outcome r = run({"mark", f.path(), "--root", "3"});
    EXPECT_EQ(r.code, cli::check_failed);
    EXPECT_TRUE(contains(r.err, "g0 = g0/O")) << r.err;
}

TEST(CliMark, DisconnectedRejectedOnlyWhenAsked) {
    TempFile f("kind binary\n3 O 0 0\n6 O 0 0\n");
    EXPECT_EQ(run({"mark", f.path(), "--root", "3"}).code, cli::ok);
    Outcome r = run({"mark", f.path(), "--root", "3", "--connected"});
    EXPECT_EQ(r.code, cli::check_failed);
    EXPECT_TRUE(contains(r.err, "connected")) << r.err;
}

TEST(CliMark, UsageErrors) {
    EXPECT_EQ(run({"mark", "/nonexistent/file.graph", "--root", "1"}).code, cli::usage_error);
    EXPECT_EQ(run({"mark", fixtures::data_path("nine_node.graph")}).code, cli::usage_error);
    EXPECT_EQ(run({"mark", fixtures::data_path("composite.graph"), "--root", "a"}).code, cli::usage_error);
    TempFile bad("kind binary\n3 O 0 0\n3 O 0 0\n");
    Outcome r = run({"mark", bad.path(), "--root", "3"});
    EXPECT_EQ(r.code, cli::usage_error);
    EXPECT_TRUE(contains(r.err, "line 3")) << r.err;
    EXPECT_EQ(run({}).code, cli::usage_error);
    EXPECT_EQ(run({"frobnicate"}).code, cli::usage_error);
}

TEST(CliMark, HelpExitsZero) {
    Outcome r = run({"--help"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "mark"));
}

TEST(CliLaws, AllPass) {
    Outcome r = run({"laws", "--cases", "200", "--seed", "7"});
    EXPECT_EQ(r.code, cli::ok) << r.out;
    EXPECT_TRUE(contains(r.out, "failed=0")) << r.out;
    EXPECT_TRUE(contains(r.out, "(probe)")) << r.out;
}

TEST(CliLaws, Filter) {
    Outcome r = run({"laws", "--cases", "10", "--filter", "join_unit"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_TRUE(contains(r.out, "laws=1 failed=0")) << r.out;
}

TEST(CliUf, SmallestMerge) {
    TempFile f("new a\nnew b\nunion a b\nfind a\n");
    Outcome r = run({"uf", f.path()});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "find a -> b")) << r.out;
    EXPECT_TRUE(contains(r.out, "set {a,b} rep=b")) << r.out;
}

TEST(CliUf, TwoTreesThenUnion) {
    Outcome r = run({"uf", fixtures::data_path("two_trees.uf")});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "find c -> a")) << r.out;
    EXPECT_TRUE(contains(r.out, "union a d -> d")) << r.out;
    EXPECT_TRUE(contains(r.out, "set {a,b,c,d,e,f,g} rep=d")) << r.out;
}

TEST(CliUf, Errors) {
    TempFile unknown("find a\n");
    EXPECT_EQ(run({"uf", unknown.path()}).code, cli::usage_error);
    TempFile garbage("new a\nfrob\n");
    Outcome r = run({"uf", garbage.path()});
    EXPECT_EQ(r.code, cli::usage_error);
    EXPECT_TRUE(contains(r.err, "line 2")) << r.err;
}

TEST(CliGen, EmptyGraph) {
    Outcome r = run({"gen", "--nodes", "0"});
    EXPECT_EQ(r.code, cli::ok);
    EXPECT_EQ(r.out, "kind binary\n");
}

TEST(CliGen, WritesParsableFile) {
    TempFile f("");
    for (std::string kind : {"binary", "unary", "general"}) {
        Outcome r = run({"gen", "--nodes", "12", "--kind", kind, "--seed", "4", "--marks", "random", "-o", f.path()});
        ASSERT_EQ(r.code, cli::ok) << r.err;
        std::ifstream in(f.path());
        std::stringstream ss;
        ss << in.rdbuf();
        PartialGraph g = parse_graph(ss.str());
        EXPECT_EQ(g.size(), 12u);
        EXPECT_EQ(kind_name(g.kind()), kind);
    }
}

TEST(CliGen, GeneratedGraphMarks) {
    TempFile f(run({"gen", "--nodes", "20", "--seed", "9", "--density", "0.7"}).out);
    Outcome r = run({"mark", f.path(), "--root", "3", "--check-invariants"});
    EXPECT_EQ(r.code, cli::ok) << r.err;
    EXPECT_TRUE(contains(r.out, "restored=ok"));
}

TEST(CliGen, BadOptions) {
    EXPECT_EQ(run({"gen", "--kind", "ternary"}).code, cli::usage_error);
    EXPECT_EQ(run({"gen", "--marks", "some"}).code, cli::usage_error);
    EXPECT_EQ(run({"gen", "--density", "2"}).code, cli::usage_error);
}
