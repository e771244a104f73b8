#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pgraph/graph.hpp"

// Reference implementations for cross-checking. None of these call into
// the code they check.

namespace pgraph {

/// SplitMix64. Bounded draws use the high 32 bits scaled by
/// multiply-shift, so sequences reproduce on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, n); n must be in [1, 2^32].
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [0, 1) with 53 bits.
    double unit();
    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }
    template <class T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i)
            std::swap(xs[i - 1], xs[below(i)]);
    }

private:
    std::uint64_t state_;
};

/// Recursive depth-first marking with an explicit visited set.
NodeSet dfs_mark(const PartialGraph& g0, Node r);

/// Worklist breadth-first reachability.
NodeSet reach_oracle(const PartialGraph& g, Node x);

/// summit by enumerating simple paths from x.
NodeSet summit_by_paths(const PartialGraph& g, Node x);
NodeSet summits_oracle(const PartialGraph& g);

/// Explicit set-of-sets over handle ordinals 0, 1, ...
class PartitionOracle {
public:
    std::size_t make();
    std::size_t find(std::size_t h) const;
    /// Merges the sets of a and b; the merged representative is b's.
    std::size_t unite(std::size_t a, std::size_t b);

    struct Block {
        std::set<std::size_t> members;
        std::size_t rep = 0;
    };
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t size() const { return count_; }

private:
    std::size_t block_of(std::size_t h) const;
    std::vector<Block> blocks_;
    std::size_t count_ = 0;
};

struct UfScript;

struct Partition {
    struct Block {
        std::set<std::string> members;
        std::string rep;
    };
    std::vector<Block> blocks;
};

/// Plays a script on the explicit partition. ScriptError on bad handles.
Partition partition_oracle(const UfScript& script);

enum class MarkMode { Unmarked, Random, Unit };

struct GenConfig {
    std::size_t node_count = 0;
    /// Probability that an edge slot points at a node.
    double edge_density = 0.5;
    std::uint64_t seed = 0;
    GraphKind kind = GraphKind::Binary;
    /// Every edge target is a node or null.
    bool closed_only = true;
    MarkMode marks = MarkMode::Unmarked;
    /// Unary only: parent pointers toward self-looping roots.
    bool inverted_forest = false;
    /// Nodes split into this many ranges with no edges between them.
    std::size_t components = 1;
    /// General only: maximum adjacency length.
    std::size_t max_degree = 3;
};

/// Node ids: binary 3k, unary k, general 1 + k*(2 + 2*max_degree).
Node gen_node_id(const GenConfig& cfg, std::size_t k);
PartialGraph gen_graph(const GenConfig& cfg);

/// Binary graphs over the universe {3, 6, 9} with children drawn from
/// {0, 3, 6, 9} and marks from `marks`. Visits every such graph once.
void for_each_tiny_binary(MarkSet marks, const std::function<void(const PartialGraph&)>& fn);

/// Random script of up to max_ops operations with handles h0, h1, ...
UfScript gen_uf_script(Rng& rng, std::size_t max_ops);

}  // namespace pgraph
