#include "pgraph/heap.hpp"

namespace pgraph {

Mark CellValue::as_mark() const {
    if (const Mark* m = std::get_if<Mark>(&v_))
        return *m;
    throw HeapFault("cell holds a pointer, expected a mark");
}

Node CellValue::as_pointer() const {
    if (const Node* n = std::get_if<Node>(&v_))
        return *n;
    throw HeapFault("cell holds a mark, expected a pointer");
}

std::string to_string(const CellValue& v) {
    if (v.is_mark())
        return std::string(1, mark_char(v.as_mark()));
    return std::to_string(v.as_pointer());
}

NodeSet Heap::domain() const {
    NodeSet s;
    for (const auto& kv : cells_)
        s.insert(s.end(), kv.first);
    return s;
}

const CellValue& Heap::read(Address a) const {
    if (a == null_node)
        throw HeapFault("null dereference");
    auto it = cells_.find(a);
    if (it == cells_.end())
        throw HeapFault("read of unallocated address " + std::to_string(a));
    return it->second;
}

Mark Heap::read_mark(Address a) const {
    return read(a).as_mark();
}

Node Heap::read_pointer(Address a) const {
    return read(a).as_pointer();
}

void Heap::write(Address a, CellValue v) {
    if (a == null_node)
        throw HeapFault("null dereference");
    auto it = cells_.find(a);
    if (it == cells_.end())
        throw HeapFault("write to unallocated address " + std::to_string(a));
    it->second = v;
}

Address Heap::alloc(const std::vector<CellValue>& vs) {
    Address base = 1;
    if (!vs.empty()) {
        // Scan gaps between allocated cells in address order.
        for (const auto& kv : cells_) {
            if (kv.first >= base + vs.size())
                break;
            if (kv.first >= base)
                base = kv.first + 1;
        }
    }
    for (std::size_t i = 0; i < vs.size(); ++i)
        cells_.emplace(base + i, vs[i]);
    return base;
}

void Heap::place(Address a, CellValue v) {
    if (a == null_node)
        throw LayoutError("cannot place a cell at null");
    if (!cells_.emplace(a, v).second)
        throw LayoutError("address collision at " + std::to_string(a));
}

Heap Heap::restrict_to(const NodeSet& addrs) const {
    Heap h;
    for (Address a : addrs) {
        auto it = cells_.find(a);
        if (it != cells_.end())
            h.cells_.emplace_hint(h.cells_.end(), *it);
    }
    return h;
}

CellValue h_read(const Heap& h, Address a) {
    return h.read(a);
}

Heap h_write(const Heap& h, Address a, CellValue v) {
    Heap r = h;
    r.write(a, v);
    return r;
}

std::pair<Heap, Address> h_alloc(const Heap& h, const std::vector<CellValue>& vs) {
    Heap r = h;
    Address a = r.alloc(vs);
    return {std::move(r), a};
}

std::optional<Heap> h_try_join(const Heap& a, const Heap& b) {
    Heap r = a;
    for (const auto& [addr, v] : b.cells()) {
        if (r.contains(addr))
            return std::nullopt;
        r.place(addr, v);
    }
    return r;
}

Heap h_join(const Heap& a, const Heap& b) {
    auto r = h_try_join(a, b);
    if (!r)
        throw LayoutError("join of overlapping heaps");
    return std::move(*r);
}

void dump(std::ostream& os, const Heap& h) {
    for (const auto& [a, v] : h.cells())
        os << a << ": " << to_string(v) << '\n';
}

Heap layout_binary(const PartialGraph& g) {
    if (g.kind() != GraphKind::Binary)
        throw LayoutError("layout_binary of a non-binary graph");
    Heap h;
    Node prev = null_node;
    for (const auto& [x, e] : g) {
        if (prev != null_node && x - prev < 3) {
            throw LayoutError("binary nodes " + std::to_string(prev) + " and " + std::to_string(x) +
                              " are closer than 3 cells");
        }
        h.place(x, e.mark);
        h.place(x + 1, CellValue::pointer(e.adj[0]));
        h.place(x + 2, CellValue::pointer(e.adj[1]));
        prev = x;
    }
    return h;
}

namespace {

const CellValue& cell(const Heap& h, Address a, Node owner) {
    auto it = h.cells().find(a);
    if (it == h.cells().end()) {
        throw AbstractionError("node " + std::to_string(owner) + ": missing cell " +
                               std::to_string(a));
    }
    return it->second;
}

Mark mark_cell(const Heap& h, Address a, Node owner) {
    const CellValue& v = cell(h, a, owner);
    if (!v.is_mark())
        throw AbstractionError("node " + std::to_string(owner) + ": cell " + std::to_string(a) +
                               " is not a mark");
    return v.as_mark();
}

Node pointer_cell(const Heap& h, Address a, Node owner) {
    const CellValue& v = cell(h, a, owner);
    if (!v.is_pointer())
        throw AbstractionError("node " + std::to_string(owner) + ": cell " + std::to_string(a) +
                               " is not a pointer");
    return v.as_pointer();
}

void require_nonnull(const NodeSet& ns) {
    if (ns.count(null_node))
        throw AbstractionError("null cannot be a graph node");
}

}  // namespace

PartialGraph abstract_binary(const Heap& h, const NodeSet& ns) {
    require_nonnull(ns);
    PartialGraph::Map m;
    for (Node x : ns) {
        Entry e{mark_cell(h, x, x), {pointer_cell(h, x + 1, x), pointer_cell(h, x + 2, x)}};
        m.emplace_hint(m.end(), x, std::move(e));
    }
    return PartialGraph::from_entries(GraphKind::Binary, std::move(m));
}

Heap layout_unary(const PartialGraph& g) {
    if (g.kind() != GraphKind::Unary)
        throw LayoutError("layout_unary of a non-unary graph");
    Heap h;
    for (const auto& [x, e] : g)
        h.place(x, CellValue::pointer(e.adj[0]));
    return h;
}

PartialGraph abstract_unary(const Heap& h, const NodeSet& ns) {
    require_nonnull(ns);
    PartialGraph::Map m;
    for (Node x : ns)
        m.emplace_hint(m.end(), x, Entry{Mark::Unit, {pointer_cell(h, x, x)}});
    return PartialGraph::from_entries(GraphKind::Unary, std::move(m));
}

std::pair<Heap, Address> layout_list(const std::vector<Node>& values, Address base) {
    Heap h;
    if (values.empty())
        return {h, base};
    if (base == null_node)
        throw LayoutError("non-empty list at null");
    for (std::size_t i = 0; i < values.size(); ++i) {
        Address cellp = base + 2 * i;
        Address next = i + 1 < values.size() ? cellp + 2 : null_node;
        h.place(cellp, CellValue::pointer(values[i]));
        h.place(cellp + 1, CellValue::pointer(next));
    }
    return {std::move(h), null_node};
}

std::vector<Node> walk_list(const Heap& h, Address head, NodeSet* visited) {
    std::vector<Node> out;
    NodeSet seen;
    for (Address p = head; p != null_node;) {
        if (!seen.insert(p).second)
            throw AbstractionError("cyclic list at " + std::to_string(p));
        seen.insert(p + 1);
        out.push_back(pointer_cell(h, p, head));
        p = pointer_cell(h, p + 1, head);
    }
    if (visited)
        visited->insert(seen.begin(), seen.end());
    return out;
}

Heap layout_general(const PartialGraph& g) {
    Heap h;
    for (const auto& [x, e] : g) {
        Heap part;
        part.place(x, e.mark);
        auto [list, terminal] = layout_list(e.adj, x + 2);
        (void)terminal;
        part.place(x + 1, CellValue::pointer(e.adj.empty() ? null_node : x + 2));
        part = h_join(part, list);
        auto joined = h_try_join(h, part);
        if (!joined)
            throw LayoutError("general layout of node " + std::to_string(x) + " collides");
        h = std::move(*joined);
    }
    return h;
}

PartialGraph abstract_general(const Heap& h, const NodeSet& ns) {
    require_nonnull(ns);
    PartialGraph::Map m;
    for (Node x : ns) {
        Mark v = mark_cell(h, x, x);
        Node head = pointer_cell(h, x + 1, x);
        m.emplace_hint(m.end(), x, Entry{v, walk_list(h, head)});
    }
    return PartialGraph::from_entries(GraphKind::General, std::move(m));
}

NodeSet footprint(const PartialGraph& g) {
    NodeSet s;
    for (const auto& [x, e] : g) {
        switch (g.kind()) {
        case GraphKind::Unary: s.insert(x); break;
        case GraphKind::Binary: s.insert({x, x + 1, x + 2}); break;
        case GraphKind::General:
            for (std::size_t i = 0; i < 2 + 2 * e.adj.size(); ++i)
                s.insert(x + i);
            break;
        }
    }
    return s;
}

Heap layout(const PartialGraph& g) {
    switch (g.kind()) {
    case GraphKind::Binary: return layout_binary(g);
    case GraphKind::Unary: return layout_unary(g);
    case GraphKind::General: return layout_general(g);
    }
    return {};
}

PartialGraph abstract(const Heap& h, const NodeSet& ns, GraphKind kind) {
    switch (kind) {
    case GraphKind::Binary: return abstract_binary(h, ns);
    case GraphKind::Unary: return abstract_unary(h, ns);
    case GraphKind::General: return abstract_general(h, ns);
    }
    return PartialGraph(kind);
}

LayoutReport check_layout(const Heap& h, const NodeSet& ns, GraphKind kind) {
    LayoutReport r;
    try {
        PartialGraph g = abstract(h, ns, kind);
        if (kind == GraphKind::General) {
            // List cells are wherever the heads point, not a fixed block.
            for (Node x : ns) {
                r.footprint.insert({x, x + 1});
                walk_list(h, h.read_pointer(x + 1), &r.footprint);
            }
        } else {
            r.footprint = footprint(g);
        }
        r.residual = set_minus(h.domain(), r.footprint);
        r.matched = true;
    } catch (const std::exception& ex) {
        r.failure = ex.what();
        r.residual = h.domain();
    }
    return r;
}

}  // namespace pgraph
