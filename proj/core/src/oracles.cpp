#include "pgraph/oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

#include "pgraph/union_find.hpp"

namespace pgraph {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    return ((next() >> 32) * n) >> 32;
}

double Rng::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

void dfs(const PartialGraph& g, Node x, NodeSet& visited) {
    if (x == null_node || visited.count(x))
        return;
    const Entry* e = g.find(x);
    if (!e)
        return;
    visited.insert(x);
    for (Node y : e->adj)
        dfs(g, y, visited);
}

void extend_paths(const PartialGraph& g, std::vector<Node>& path, NodeSet& out) {
    const Entry& e = g.at(path.back());
    for (Node z : e.adj) {
        bool on_path = std::find(path.begin(), path.end(), z) != path.end();
        if (!g.contains(z) || on_path) {
            out.insert(z);
        } else {
            path.push_back(z);
            extend_paths(g, path, out);
            path.pop_back();
        }
    }
}

}  // namespace

NodeSet dfs_mark(const PartialGraph& g0, Node r) {
    NodeSet visited;
    dfs(g0, r, visited);
    return visited;
}

NodeSet reach_oracle(const PartialGraph& g, Node x) {
    NodeSet seen;
    if (!g.contains(x))
        return seen;
    std::deque<Node> work{x};
    seen.insert(x);
    while (!work.empty()) {
        Node u = work.front();
        work.pop_front();
        for (Node v : g.at(u).adj) {
            if (g.contains(v) && seen.insert(v).second)
                work.push_back(v);
        }
    }
    return seen;
}

NodeSet summit_by_paths(const PartialGraph& g, Node x) {
    if (!g.contains(x))
        return {x};
    NodeSet out;
    std::vector<Node> path{x};
    extend_paths(g, path, out);
    return out;
}

NodeSet summits_oracle(const PartialGraph& g) {
    NodeSet out;
    for (const auto& kv : g) {
        std::vector<Node> path{kv.first};
        extend_paths(g, path, out);
    }
    return out;
}

std::size_t PartitionOracle::make() {
    std::size_t h = count_++;
    blocks_.push_back({{h}, h});
    return h;
}

std::size_t PartitionOracle::block_of(std::size_t h) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i].members.count(h))
            return i;
    }
    throw std::out_of_range("unknown handle ordinal " + std::to_string(h));
}

std::size_t PartitionOracle::find(std::size_t h) const {
    return blocks_[block_of(h)].rep;
}

std::size_t PartitionOracle::unite(std::size_t a, std::size_t b) {
    std::size_t ia = block_of(a);
    std::size_t ib = block_of(b);
    if (ia == ib)
        return blocks_[ib].rep;
    blocks_[ib].members.insert(blocks_[ia].members.begin(), blocks_[ia].members.end());
    std::size_t rep = blocks_[ib].rep;
    blocks_.erase(blocks_.begin() + static_cast<std::ptrdiff_t>(ia));
    return rep;
}

Partition partition_oracle(const UfScript& script) {
    PartitionOracle po;
    std::map<std::string, std::size_t> ordinal;
    std::vector<std::string> names;
    auto resolve = [&](const UfOp& op, const std::string& h) {
        auto it = ordinal.find(h);
        if (it == ordinal.end())
            throw ScriptError(op.line, "unknown handle '" + h + "'");
        return it->second;
    };
    for (const UfOp& op : script.ops) {
        switch (op.kind) {
        case UfOp::Kind::New:
            if (ordinal.count(op.a))
                throw ScriptError(op.line, "handle '" + op.a + "' already bound");
            ordinal[op.a] = po.make();
            names.push_back(op.a);
            break;
        case UfOp::Kind::Find: resolve(op, op.a); break;
        case UfOp::Kind::Union: po.unite(resolve(op, op.a), resolve(op, op.b)); break;
        }
    }
    Partition out;
    for (const auto& b : po.blocks()) {
        Partition::Block pb;
        for (std::size_t h : b.members)
            pb.members.insert(names[h]);
        pb.rep = names[b.rep];
        out.blocks.push_back(std::move(pb));
    }
    return out;
}

Node gen_node_id(const GenConfig& cfg, std::size_t k) {
    switch (cfg.kind) {
    case GraphKind::Binary: return 3 * (k + 1);
    case GraphKind::Unary: return k + 1;
    case GraphKind::General: return 1 + k * (2 + 2 * cfg.max_degree);
    }
    return k + 1;
}

PartialGraph gen_graph(const GenConfig& cfg) {
    Rng rng(cfg.seed);
    const std::size_t n = cfg.node_count;
    const std::size_t parts = std::max<std::size_t>(1, std::min(cfg.components, std::max<std::size_t>(n, 1)));
    std::vector<Node> ids(n);
    for (std::size_t k = 0; k < n; ++k)
        ids[k] = gen_node_id(cfg, k);
    // Targets outside the graph for open graphs.
    const Node outside = gen_node_id(cfg, n);

    auto component = [&](std::size_t k) { return k * parts / std::max<std::size_t>(n, 1); };
    std::vector<std::vector<Node>> members(parts);
    for (std::size_t k = 0; k < n; ++k)
        members[component(k)].push_back(ids[k]);

    auto target = [&](std::size_t k) -> Node {
        if (rng.chance(cfg.edge_density))
            return rng.pick(members[component(k)]);
        if (!cfg.closed_only && rng.chance(0.5))
            return outside + 3 * rng.below(3);
        return null_node;
    };
    auto mark = [&]() {
        static const std::vector<Mark> all{Mark::O, Mark::L, Mark::R, Mark::X};
        switch (cfg.marks) {
        case MarkMode::Unmarked: return Mark::O;
        case MarkMode::Random: return rng.pick(all);
        case MarkMode::Unit: return Mark::Unit;
        }
        return Mark::O;
    };

    PartialGraph::Map m;
    if (cfg.kind == GraphKind::Unary && cfg.inverted_forest) {
        // Attach nodes in random order to an earlier node of their
        // component, or make them roots.
        std::vector<std::size_t> order(n);
        for (std::size_t k = 0; k < n; ++k)
            order[k] = k;
        rng.shuffle(order);
        std::vector<std::vector<Node>> placed(parts);
        for (std::size_t k : order) {
            auto& prior = placed[component(k)];
            Node succ = prior.empty() || !rng.chance(cfg.edge_density) ? ids[k] : rng.pick(prior);
            m.emplace(ids[k], Entry{Mark::Unit, {succ}});
            prior.push_back(ids[k]);
        }
        return PartialGraph::from_entries(cfg.kind, std::move(m));
    }

    for (std::size_t k = 0; k < n; ++k) {
        Entry e;
        e.mark = cfg.kind == GraphKind::Unary ? Mark::Unit : mark();
        std::size_t arity = cfg.kind == GraphKind::Binary ? 2
                            : cfg.kind == GraphKind::Unary ? 1
                                                           : rng.below(cfg.max_degree + 1);
        for (std::size_t i = 0; i < arity; ++i) {
            Node y = target(k);
            // General adjacency lists skip null.
            if (cfg.kind == GraphKind::General && y == null_node)
                y = rng.pick(members[component(k)]);
            e.adj.push_back(y);
        }
        m.emplace(ids[k], std::move(e));
    }
    return PartialGraph::from_entries(cfg.kind, std::move(m));
}

void for_each_tiny_binary(MarkSet marks, const std::function<void(const PartialGraph&)>& fn) {
    const Node universe[3] = {3, 6, 9};
    const Node targets[4] = {0, 3, 6, 9};
    std::vector<Mark> ms;
    for (Mark m : {Mark::O, Mark::L, Mark::R, Mark::X}) {
        if (marks.contains(m))
            ms.push_back(m);
    }
    // Per node: absent, or one of |ms| * 16 entries.
    std::vector<std::optional<Entry>> choices{std::nullopt};
    for (Mark m : ms) {
        for (Node l : targets) {
            for (Node r : targets)
                choices.push_back(Entry{m, {l, r}});
        }
    }
    const std::size_t c = choices.size();
    for (std::size_t i = 0; i < c * c * c; ++i) {
        PartialGraph::Map m;
        std::size_t code = i;
        for (Node x : universe) {
            if (const auto& e = choices[code % c])
                m.emplace(x, *e);
            code /= c;
        }
        fn(PartialGraph::from_entries(GraphKind::Binary, std::move(m)));
    }
}

UfScript gen_uf_script(Rng& rng, std::size_t max_ops) {
    UfScript s;
    std::size_t ops = 1 + rng.below(max_ops);
    std::vector<std::string> live;
    for (std::size_t i = 0; i < ops; ++i) {
        UfOp op;
        op.line = i + 1;
        std::uint64_t roll = rng.below(10);
        if (live.empty() || roll < 3) {
            op.kind = UfOp::Kind::New;
            op.a = "h" + std::to_string(live.size());
            live.push_back(op.a);
        } else if (roll < 6) {
            op.kind = UfOp::Kind::Find;
            op.a = rng.pick(live);
        } else {
            op.kind = UfOp::Kind::Union;
            op.a = rng.pick(live);
            op.b = rng.pick(live);
        }
        s.ops.push_back(std::move(op));
    }
    return s;
}

}  // namespace pgraph
