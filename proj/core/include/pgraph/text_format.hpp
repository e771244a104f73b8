#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pgraph/graph.hpp"

namespace pgraph {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A graph plus optional names for its nodes.
///
///     kind binary
///     # symbols: n1=3 n2=6
///     3 O 6 0
///     6 O 0 0
///
/// Body lines: binary `<id> <mark> <left> <right>`, unary `<id> <succ>`,
/// general `<id> <mark>: <succ>*`. `0` is null and `#` starts a comment.
struct GraphFile {
    PartialGraph graph;
    std::map<std::string, Node> symbols;
};

GraphFile parse_graph_file(std::string_view text);
PartialGraph parse_graph(std::string_view text);

std::string format_graph(const PartialGraph& g, const std::map<std::string, Node>& symbols = {});

/// A node given either as a number or as a symbol from the file.
Node resolve_node(const GraphFile& f, const std::string& name);

}  // namespace pgraph
