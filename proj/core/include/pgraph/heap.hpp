#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pgraph/graph.hpp"

namespace pgraph {

using Address = Node;

/// Memory-safety violation: access to an unallocated cell, a null
/// dereference, or reading a cell with the wrong tag.
class HeapFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LayoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AbstractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A heap cell holds either a mark or a pointer.
class CellValue {
public:
    CellValue(Mark m) : v_(m) {}  // NOLINT(google-explicit-constructor)
    static CellValue pointer(Node n) { return CellValue(n); }

    bool is_mark() const { return std::holds_alternative<Mark>(v_); }
    bool is_pointer() const { return std::holds_alternative<Node>(v_); }
    Mark as_mark() const;
    Node as_pointer() const;

    bool operator==(const CellValue&) const = default;

private:
    explicit CellValue(Node n) : v_(n) {}
    std::variant<Mark, Node> v_;
};

std::string to_string(const CellValue& v);

/// Finite map from positive addresses to cells. Value type; `write` and
/// `alloc` mutate in place for a single owner, the h_* free functions
/// return new heaps.
class Heap {
public:
    using Cells = std::map<Address, CellValue>;

    Heap() = default;

    bool contains(Address a) const { return cells_.count(a) != 0; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Cells& cells() const { return cells_; }
    NodeSet domain() const;

    const CellValue& read(Address a) const;
    Mark read_mark(Address a) const;
    Node read_pointer(Address a) const;

    void write(Address a, CellValue v);

    /// First-fit: the lowest base >= 1 with |vs| consecutive free cells.
    Address alloc(const std::vector<CellValue>& vs);

    /// Adds a fresh cell at a chosen address; LayoutError if taken or null.
    void place(Address a, CellValue v);

    Heap restrict_to(const NodeSet& addrs) const;

    bool operator==(const Heap&) const = default;

private:
    Cells cells_;
};

CellValue h_read(const Heap& h, Address a);
Heap h_write(const Heap& h, Address a, CellValue v);
std::pair<Heap, Address> h_alloc(const Heap& h, const std::vector<CellValue>& vs);

/// Disjoint union of heaps; nullopt on overlapping addresses.
std::optional<Heap> h_try_join(const Heap& a, const Heap& b);
/// Disjoint union of heaps; throws LayoutError on overlap.
Heap h_join(const Heap& a, const Heap& b);

/// `address: value` lines, ascending.
void dump(std::ostream& os, const Heap& h);

struct LayoutReport {
    bool matched = false;
    NodeSet footprint;
    NodeSet residual;
    std::optional<std::string> failure;
};

// Binary: node x occupies x (mark), x+1 (left), x+2 (right).
Heap layout_binary(const PartialGraph& g);
PartialGraph abstract_binary(const Heap& h, const NodeSet& ns);

// Unary: node x occupies one cell holding its successor.
Heap layout_unary(const PartialGraph& g);
PartialGraph abstract_unary(const Heap& h, const NodeSet& ns);

/// Null-terminated list of (value, next) pairs laid out contiguously from
/// `base`. Returns the heap and the segment's terminal pointer: `base` for
/// the empty list, null otherwise.
std::pair<Heap, Address> layout_list(const std::vector<Node>& values, Address base);

/// Follows a null-terminated list from `head`, collecting values and the
/// cells visited. Throws AbstractionError on a missing cell or a cycle.
std::vector<Node> walk_list(const Heap& h, Address head, NodeSet* visited = nullptr);

// General: node x occupies x (mark), x+1 (list head), and its adjacency
// list from x+2 on; an empty adjacency has head null.
Heap layout_general(const PartialGraph& g);
PartialGraph abstract_general(const Heap& h, const NodeSet& ns);

/// Cells a layout of g would occupy.
NodeSet footprint(const PartialGraph& g);

/// Abstracts h over ns with the layout for `kind` and partitions the
/// domain into footprint and residual.
LayoutReport check_layout(const Heap& h, const NodeSet& ns, GraphKind kind);

Heap layout(const PartialGraph& g);
PartialGraph abstract(const Heap& h, const NodeSet& ns, GraphKind kind);

}  // namespace pgraph
