#include "pgraph/graph.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace pgraph {

struct GraphAccess {
    static PartialGraph make(GraphKind kind, PartialGraph::Map&& m) {
        PartialGraph g(kind);
        g.entries_ = std::move(m);
        return g;
    }
    static PartialGraph::Map& map(PartialGraph& g) { return g.entries_; }
};

char mark_char(Mark m) {
    switch (m) {
    case Mark::Unit: return '_';
    case Mark::O: return 'O';
    case Mark::L: return 'L';
    case Mark::R: return 'R';
    case Mark::X: return 'X';
    }
    return '?';
}

std::optional<Mark> mark_from_char(char c) {
    switch (c) {
    case '_': return Mark::Unit;
    case 'O': return Mark::O;
    case 'L': return Mark::L;
    case 'R': return Mark::R;
    case 'X': return Mark::X;
    default: return std::nullopt;
    }
}

const char* kind_name(GraphKind k) {
    switch (k) {
    case GraphKind::General: return "general";
    case GraphKind::Binary: return "binary";
    case GraphKind::Unary: return "unary";
    }
    return "?";
}

void check_arity(GraphKind kind, const Entry& e) {
    std::size_t want = 0;
    switch (kind) {
    case GraphKind::General: return;
    case GraphKind::Binary: want = 2; break;
    case GraphKind::Unary: want = 1; break;
    }
    if (e.adj.size() != want) {
        throw ArityError(std::string(kind_name(kind)) + " node needs " + std::to_string(want) +
                         " children, got " + std::to_string(e.adj.size()));
    }
}

PartialGraph PartialGraph::from_entries(GraphKind kind, Map entries) {
    for (const auto& [x, e] : entries) {
        if (x == null_node)
            throw InvalidNode("graphs are undefined on null");
        check_arity(kind, e);
    }
    return GraphAccess::make(kind, std::move(entries));
}

const Entry* PartialGraph::find(Node x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? nullptr : &it->second;
}

const Entry& PartialGraph::at(Node x) const {
    if (const Entry* e = find(x))
        return *e;
    throw InvalidNode("node " + std::to_string(x) + " not in graph");
}

Node PartialGraph::left(Node x) const {
    const Entry& e = at(x);
    if (e.adj.size() != 2)
        throw ArityError("left child of a non-binary node");
    return e.adj[0];
}

Node PartialGraph::right(Node x) const {
    const Entry& e = at(x);
    if (e.adj.size() != 2)
        throw ArityError("right child of a non-binary node");
    return e.adj[1];
}

PartialGraph PartialGraph::with_entry(Node x, Entry e) const {
    if (x == null_node)
        throw InvalidNode("graphs are undefined on null");
    check_arity(kind_, e);
    PartialGraph g = *this;
    g.entries_[x] = std::move(e);
    return g;
}

PartialGraph singleton(Node x, Mark v, std::vector<Node> adj, GraphKind kind) {
    return singleton(x, Entry{v, std::move(adj)}, kind);
}

PartialGraph singleton(Node x, const Entry& e, GraphKind kind) {
    if (x == null_node)
        throw InvalidNode("singleton on null");
    check_arity(kind, e);
    PartialGraph::Map m;
    m.emplace(x, e);
    return GraphAccess::make(kind, std::move(m));
}

JoinResult join(const PartialGraph& a, const PartialGraph& b) {
    if (a.kind() != b.kind()) {
        throw KindMismatch(std::string("join of ") + kind_name(a.kind()) + " and " +
                           kind_name(b.kind()) + " graphs");
    }
    const PartialGraph& big = a.size() >= b.size() ? a : b;
    const PartialGraph& small = a.size() >= b.size() ? b : a;
    PartialGraph::Map m = big.entries();
    for (const auto& [x, e] : small) {
        if (!m.emplace(x, e).second)
            return std::nullopt;
    }
    return GraphAccess::make(a.kind(), std::move(m));
}

JoinResult join(const JoinResult& a, const JoinResult& b) {
    if (!a || !b)
        return std::nullopt;
    return join(*a, *b);
}

JoinResult join_all(const std::vector<PartialGraph>& parts, GraphKind kind) {
    JoinResult acc = PartialGraph(kind);
    for (const PartialGraph& g : parts) {
        acc = join(*acc, g);
        if (!acc)
            return std::nullopt;
    }
    return acc;
}

PartialGraph remove(const PartialGraph& g, Node x) {
    if (!g.contains(x))
        return g;
    PartialGraph r = g;
    GraphAccess::map(r).erase(x);
    return r;
}

PartialGraph remove_all(const PartialGraph& g, const NodeSet& xs) {
    PartialGraph r = g;
    auto& m = GraphAccess::map(r);
    for (Node x : xs)
        m.erase(x);
    return r;
}

NodeSet nodes(const PartialGraph& g) {
    NodeSet s;
    for (const auto& kv : g)
        s.insert(s.end(), kv.first);
    return s;
}

NodeSet nodes0(const PartialGraph& g) {
    NodeSet s = nodes(g);
    s.insert(null_node);
    return s;
}

NodeSet sinks(const PartialGraph& g) {
    NodeSet s;
    for (const auto& [x, e] : g)
        s.insert(e.adj.begin(), e.adj.end());
    return s;
}

PartialGraph filter_nodes(const PartialGraph& g, const NodeSet& s) {
    PartialGraph::Map m;
    for (const auto& [x, e] : g) {
        if (s.count(x))
            m.emplace_hint(m.end(), x, e);
    }
    return GraphAccess::make(g.kind(), std::move(m));
}

PartialGraph filter_marks(const PartialGraph& g, MarkSet vs) {
    PartialGraph::Map m;
    for (const auto& [x, e] : g) {
        if (vs.contains(e.mark))
            m.emplace_hint(m.end(), x, e);
    }
    return GraphAccess::make(g.kind(), std::move(m));
}

PartialGraph erase(const PartialGraph& g) {
    PartialGraph::Map m;
    for (const auto& [x, e] : g)
        m.emplace_hint(m.end(), x, Entry{Mark::Unit, e.adj});
    return GraphAccess::make(g.kind(), std::move(m));
}

PartialGraph map_graph(const EntryFn& f, const PartialGraph& g) {
    PartialGraph::Map m;
    for (const auto& [x, e] : g) {
        Entry out = f(x, e);
        check_arity(g.kind(), out);
        m.emplace_hint(m.end(), x, std::move(out));
    }
    return GraphAccess::make(g.kind(), std::move(m));
}

bool closed(const PartialGraph& g) {
    for (const auto& [x, e] : g) {
        for (Node y : e.adj) {
            if (y != null_node && !g.contains(y))
                return false;
        }
    }
    return true;
}

namespace {

// `rest` is the graph the current call recurses in; reached nodes are
// removed from it as they are reached, so later siblings see the graph
// without them.
void reach_into(PartialGraph::Map& rest, Node x, NodeSet& out) {
    auto it = rest.find(x);
    if (it == rest.end())
        return;
    std::vector<Node> children = std::move(it->second.adj);
    rest.erase(it);
    out.insert(x);
    for (Node y : children)
        reach_into(rest, y, out);
}

}  // namespace

NodeSet reach(const PartialGraph& g, Node x) {
    PartialGraph::Map rest = g.entries();
    NodeSet out;
    reach_into(rest, x, out);
    return out;
}

NodeSet reach_literal(const PartialGraph& g, Node x) {
    const Entry* e = g.find(x);
    if (!e)
        return {};
    NodeSet out{x};
    const PartialGraph without = remove(g, x);
    for (Node y : e->adj) {
        NodeSet sub = reach_literal(without, y);
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

NodeSet disjoint_union(const NodeSet& a, const NodeSet& b) {
    NodeSet r = a;
    for (Node x : b) {
        if (!r.insert(x).second)
            throw SetOverlap("disjoint union of overlapping sets at " + std::to_string(x));
    }
    return r;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet r = a;
    r.insert(b.begin(), b.end());
    return r;
}

NodeSet set_minus(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

NodeSet set_intersect(const NodeSet& a, const NodeSet& b) {
    NodeSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

bool subset_of(const NodeSet& a, const NodeSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const NodeSet& a, const NodeSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j)
            return false;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return true;
}

std::string to_string(const NodeSet& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (Node x : s) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    os << '}';
    return os.str();
}

std::string to_string(const PartialGraph& g) {
    if (g.empty())
        return "e";
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, e] : g) {
        os << (first ? "" : " + ") << x << " -> (" << mark_char(e.mark) << ",[";
        for (std::size_t i = 0; i < e.adj.size(); ++i)
            os << (i ? "," : "") << e.adj[i];
        os << "])";
        first = false;
    }
    return os.str();
}

}  // namespace pgraph
