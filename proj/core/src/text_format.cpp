#include "pgraph/text_format.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace pgraph {

namespace {

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

Node parse_id(const std::string& w, std::size_t line) {
    Node v = 0;
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size())
        throw ParseError(line, "expected a node id, got '" + w + "'");
    return v;
}

Mark parse_mark(const std::string& w, std::size_t line) {
    auto m = w.size() == 1 ? mark_from_char(w[0]) : std::nullopt;
    if (!m)
        throw ParseError(line, "expected a mark (O, L, R, X or _), got '" + w + "'");
    return *m;
}

void parse_symbols(const std::string& rest, std::size_t line, std::map<std::string, Node>& out) {
    for (const std::string& w : split_words(rest)) {
        auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError(line, "bad symbol binding '" + w + "'");
        out[w.substr(0, eq)] = parse_id(w.substr(eq + 1), line);
    }
}

}  // namespace

GraphFile parse_graph_file(std::string_view text) {
    GraphFile f;
    std::optional<GraphKind> kind;
    PartialGraph::Map m;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            auto words = split_words(comment);
            if (!words.empty() && words[0] == "symbols:")
                parse_symbols(comment.substr(comment.find("symbols:") + 8), no, f.symbols);
            line.erase(hash);
        }
        auto words = split_words(line);
        if (words.empty())
            continue;
        if (!kind) {
            if (words.size() != 2 || words[0] != "kind")
                throw ParseError(no, "expected 'kind <binary|unary|general>'");
            if (words[1] == "binary")
                kind = GraphKind::Binary;
            else if (words[1] == "unary")
                kind = GraphKind::Unary;
            else if (words[1] == "general")
                kind = GraphKind::General;
            else
                throw ParseError(no, "unknown kind '" + words[1] + "'");
            continue;
        }
        Node id = parse_id(words[0], no);
        if (id == null_node)
            throw ParseError(no, "node id 0 is null");
        Entry e;
        switch (*kind) {
        case GraphKind::Binary:
            if (words.size() != 4)
                throw ParseError(no, "binary line needs '<id> <mark> <left> <right>'");
            e.mark = parse_mark(words[1], no);
            e.adj = {parse_id(words[2], no), parse_id(words[3], no)};
            break;
        case GraphKind::Unary:
            if (words.size() != 2)
                throw ParseError(no, "unary line needs '<id> <succ>'");
            e.adj = {parse_id(words[1], no)};
            break;
        case GraphKind::General: {
            if (words.size() < 2 || words[1].size() != 2 || words[1][1] != ':')
                throw ParseError(no, "general line needs '<id> <mark>: <succ>*'");
            e.mark = parse_mark(words[1].substr(0, 1), no);
            for (std::size_t i = 2; i < words.size(); ++i)
                e.adj.push_back(parse_id(words[i], no));
            break;
        }
        }
        if (!m.emplace(id, std::move(e)).second)
            throw ParseError(no, "duplicate node " + std::to_string(id));
        if (*kind == GraphKind::Binary) {
            auto it = m.find(id);
            auto close = [&](auto other) {
                Node a = std::min(id, other->first);
                Node b = std::max(id, other->first);
                return b - a < 3;
            };
            if ((it != m.begin() && close(std::prev(it))) || (std::next(it) != m.end() && close(std::next(it))))
                throw ParseError(no, "binary node " + std::to_string(id) + " is within 3 of another node");
        }
    }
    if (!kind)
        throw ParseError(no, "missing 'kind' header");
    f.graph = PartialGraph::from_entries(*kind, std::move(m));
    return f;
}

PartialGraph parse_graph(std::string_view text) {
    return parse_graph_file(text).graph;
}

std::string format_graph(const PartialGraph& g, const std::map<std::string, Node>& symbols) {
    std::ostringstream os;
    os << "kind " << kind_name(g.kind()) << '\n';
    if (!symbols.empty()) {
        os << "# symbols:";
        for (const auto& [name, id] : symbols)
            os << ' ' << name << '=' << id;
        os << '\n';
    }
    for (const auto& [x, e] : g) {
        os << x;
        switch (g.kind()) {
        case GraphKind::Binary: os << ' ' << mark_char(e.mark) << ' ' << e.adj[0] << ' ' << e.adj[1]; break;
        case GraphKind::Unary: os << ' ' << e.adj[0]; break;
        case GraphKind::General:
            os << ' ' << mark_char(e.mark) << ':';
            for (Node y : e.adj)
                os << ' ' << y;
            break;
        }
        os << '\n';
    }
    return os.str();
}

Node resolve_node(const GraphFile& f, const std::string& name) {
    if (auto it = f.symbols.find(name); it != f.symbols.end())
        return it->second;
    Node v = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
    if (ec != std::errc() || ptr != name.data() + name.size())
        throw std::invalid_argument("unknown node '" + name + "'");
    return v;
}

}  // namespace pgraph
