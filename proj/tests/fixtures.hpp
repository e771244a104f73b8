#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pgraph/graph.hpp"
#include "pgraph/heap.hpp"
#include "pgraph/text_format.hpp"

namespace fixtures {

using namespace pgraph;

inline std::string data_path(const std::string& name) {
    return std::string(PGRAPH_DATA_DIR) + "/" + name;
}

inline std::string read_data(const std::string& name) {
    std::ifstream in(data_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The four-node general graph and its two halves.
namespace composite {
inline constexpr Node a = 1, b = 2, c = 3, d = 4;

inline PartialGraph left() {
    return singleton(a, Mark::X, {a, b, c});
}

inline PartialGraph right() {
    return *join_all({singleton(b, Mark::O, {}), singleton(c, Mark::O, {b, d}), singleton(d, Mark::O, {a})},
                     GraphKind::General);
}

inline PartialGraph whole() {
    return *join(left(), right());
}
}  // namespace composite

// Nine-node binary graph, ids n_k = 3k, and the state reached after
// n3 and n4 are marked with t = n6, p = n5.
namespace nine {
inline constexpr Node n1 = 3, n2 = 6, n3 = 9, n4 = 12, n5 = 15, n6 = 18, n7 = 21, n8 = 24, n9 = 27;

inline PartialGraph start() {
    return parse_graph(read_data("nine_node.graph"));
}

inline PartialGraph midway() {
    PartialGraph::Map m;
    m[n1] = {Mark::L, {null_node, n9}};
    m[n2] = {Mark::R, {n3, n1}};
    m[n3] = {Mark::X, {n4, null_node}};
    m[n4] = {Mark::X, {null_node, n2}};
    m[n5] = {Mark::L, {n2, n8}};
    m[n6] = {Mark::O, {n7, null_node}};
    m[n7] = {Mark::O, {null_node, n5}};
    m[n8] = {Mark::O, {n9, null_node}};
    m[n9] = {Mark::O, {null_node, null_node}};
    return PartialGraph::from_entries(GraphKind::Binary, std::move(m));
}
}  // namespace nine

// Two union-find trees rooted at a and d.
namespace forest {
inline constexpr Node a = 1, b = 2, c = 3, d = 4, e = 5, f = 6, g = 7;

inline PartialGraph before() {
    PartialGraph::Map m;
    m[a] = {Mark::Unit, {a}};
    m[b] = {Mark::Unit, {a}};
    m[c] = {Mark::Unit, {b}};
    m[d] = {Mark::Unit, {d}};
    m[e] = {Mark::Unit, {d}};
    m[f] = {Mark::Unit, {d}};
    m[g] = {Mark::Unit, {e}};
    return PartialGraph::from_entries(GraphKind::Unary, std::move(m));
}

inline PartialGraph after() {
    return before().with_entry(a, {Mark::Unit, {d}});
}
}  // namespace forest

}  // namespace fixtures
