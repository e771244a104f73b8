#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgraph {

/// Graph node. Doubles as a heap address; 0 is null and never in a graph.
using Node = std::uint64_t;
inline constexpr Node null_node = 0;

using NodeSet = std::set<Node>;

/// Node contents. `Unit` is the single value of the unit type carried by
/// erased graphs and by union-find graphs.
enum class Mark : std::uint8_t { Unit, O, L, R, X };

char mark_char(Mark m);
std::optional<Mark> mark_from_char(char c);

/// Small set of marks, used by filter_marks.
class MarkSet {
public:
    constexpr MarkSet() = default;
    constexpr MarkSet(std::initializer_list<Mark> marks) {
        for (Mark m : marks)
            bits_ |= bit(m);
    }
    constexpr bool contains(Mark m) const { return (bits_ & bit(m)) != 0; }
    constexpr bool disjoint(MarkSet o) const { return (bits_ & o.bits_) == 0; }
    constexpr MarkSet operator|(MarkSet o) const { return from_bits(bits_ | o.bits_); }
    constexpr bool operator==(const MarkSet&) const = default;

private:
    static constexpr std::uint8_t bit(Mark m) { return std::uint8_t(1u << static_cast<unsigned>(m)); }
    static constexpr MarkSet from_bits(std::uint8_t b) {
        MarkSet s;
        s.bits_ = b;
        return s;
    }
    std::uint8_t bits_ = 0;
};

enum class GraphKind : std::uint8_t { General, Binary, Unary };

const char* kind_name(GraphKind k);

struct Entry {
    Mark mark = Mark::Unit;
    std::vector<Node> adj;

    bool operator==(const Entry&) const = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidNode : public GraphError {
public:
    using GraphError::GraphError;
};

class KindMismatch : public GraphError {
public:
    using GraphError::GraphError;
};

class ArityError : public GraphError {
public:
    using GraphError::GraphError;
};

class SetOverlap : public GraphError {
public:
    using GraphError::GraphError;
};

/// Finite partial map from nodes to (mark, adjacency). Edges may dangle:
/// an adjacency entry need not be in the domain. Immutable in the API;
/// every combinator returns a fresh value.
class PartialGraph {
public:
    using Map = std::map<Node, Entry>;

    explicit PartialGraph(GraphKind kind = GraphKind::General) : kind_(kind) {}

    /// Validating constructor: rejects node 0 and arity violations.
    static PartialGraph from_entries(GraphKind kind, Map entries);

    GraphKind kind() const { return kind_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    bool contains(Node x) const { return entries_.count(x) != 0; }

    const Entry* find(Node x) const;
    const Entry& at(Node x) const;
    Mark mark(Node x) const { return at(x).mark; }
    const std::vector<Node>& adj(Node x) const { return at(x).adj; }

    /// Children of a binary node.
    Node left(Node x) const;
    Node right(Node x) const;

    const Map& entries() const { return entries_; }
    Map::const_iterator begin() const { return entries_.begin(); }
    Map::const_iterator end() const { return entries_.end(); }

    /// Copy with x's entry replaced (or added).
    PartialGraph with_entry(Node x, Entry e) const;

    bool operator==(const PartialGraph& o) const {
        return kind_ == o.kind_ && entries_ == o.entries_;
    }

private:
    friend struct GraphAccess;
    GraphKind kind_;
    Map entries_;
};

/// Absent value = the undefined result of an overlapping join.
using JoinResult = std::optional<PartialGraph>;

void check_arity(GraphKind kind, const Entry& e);

PartialGraph singleton(Node x, Mark v, std::vector<Node> adj, GraphKind kind = GraphKind::General);
PartialGraph singleton(Node x, const Entry& e, GraphKind kind = GraphKind::General);

/// Disjoint union. Throws KindMismatch when kinds differ; returns
/// nullopt when the domains overlap.
JoinResult join(const PartialGraph& a, const PartialGraph& b);
/// Undefined-absorbing lift of join.
JoinResult join(const JoinResult& a, const JoinResult& b);
/// Join of all parts; nullopt if any two overlap.
JoinResult join_all(const std::vector<PartialGraph>& parts, GraphKind kind);

PartialGraph remove(const PartialGraph& g, Node x);
PartialGraph remove_all(const PartialGraph& g, const NodeSet& xs);

NodeSet nodes(const PartialGraph& g);
NodeSet nodes0(const PartialGraph& g);
NodeSet sinks(const PartialGraph& g);

PartialGraph filter_nodes(const PartialGraph& g, const NodeSet& s);
PartialGraph filter_marks(const PartialGraph& g, MarkSet vs);
PartialGraph erase(const PartialGraph& g);

using EntryFn = std::function<Entry(Node, const Entry&)>;
/// Replaces every entry x -> e by f(x, e). Binary and unary results are
/// arity-checked (ArityError).
PartialGraph map_graph(const EntryFn& f, const PartialGraph& g);

bool closed(const PartialGraph& g);

/// Nodes reachable from x. Evaluates the remove-then-recurse definition,
/// with each child recursing in the graph left after its earlier siblings
/// (the already-reached nodes are gone, which does not change the union).
NodeSet reach(const PartialGraph& g, Node x);

/// The remove-then-recurse definition evaluated literally; every child
/// recurses in g\x. Exponential in general, for cross-checking only.
NodeSet reach_literal(const PartialGraph& g, Node x);

// Set helpers.
NodeSet disjoint_union(const NodeSet& a, const NodeSet& b);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_minus(const NodeSet& a, const NodeSet& b);
NodeSet set_intersect(const NodeSet& a, const NodeSet& b);
bool subset_of(const NodeSet& a, const NodeSet& b);
bool disjoint(const NodeSet& a, const NodeSet& b);

std::string to_string(const NodeSet& s);
std::string to_string(const PartialGraph& g);

}  // namespace pgraph
