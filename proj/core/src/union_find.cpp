#include "pgraph/union_find.hpp"

#include <algorithm>
#include <sstream>

#include "pgraph/oracles.hpp"

namespace pgraph {

namespace {

// `gone` holds the nodes removed on the way down; restoring them on the
// way back makes every child recurse in the same graph g\x.
void summit_rec(const PartialGraph& g, NodeSet& gone, Node x, NodeSet& out) {
    const Entry* e = g.find(x);
    if (!e || gone.count(x)) {
        out.insert(x);
        return;
    }
    gone.insert(x);
    for (Node y : e->adj)
        summit_rec(g, gone, y, out);
    gone.erase(x);
}

}  // namespace

NodeSet summit(const PartialGraph& g, Node x) {
    NodeSet gone;
    NodeSet out;
    summit_rec(g, gone, x, out);
    return out;
}

NodeSet summits(const PartialGraph& g) {
    NodeSet out;
    NodeSet gone;
    for (const auto& kv : g)
        summit_rec(g, gone, kv.first, out);
    return out;
}

NodeSet loops(const PartialGraph& g) {
    NodeSet out;
    for (const auto& [x, e] : g) {
        if (std::find(e.adj.begin(), e.adj.end(), x) != e.adj.end())
            out.insert(x);
    }
    return out;
}

NodeSet cycles(const PartialGraph& g) {
    NodeSet out;
    for (const auto& [x, e] : g) {
        for (Node y : e.adj) {
            if (reach(g, y).count(x)) {
                out.insert(x);
                break;
            }
        }
    }
    return out;
}

NodeSet dangls(const PartialGraph& g) {
    return set_minus(sinks(g), nodes(g));
}

bool preacyclic(const PartialGraph& g) {
    return subset_of(cycles(g), loops(g));
}

SetCheck check_set(const Heap& h, const SetWitness& w) {
    SetCheck c;
    PartialGraph g(GraphKind::Unary);
    try {
        g = abstract_unary(h.restrict_to(w.members), w.members);
    } catch (const std::exception& ex) {
        c.diagnostic = ex.what();
        return c;
    }
    const NodeSet rep{w.representative};
    NodeSet s = summits(g);
    NodeSet l = loops(g);
    if (s != rep)
        c.diagnostic = "summits " + to_string(s) + ", expected " + to_string(rep);
    else if (l != rep)
        c.diagnostic = "loops " + to_string(l) + ", expected " + to_string(rep);
    else if (nodes(g) != w.members)
        c.diagnostic = "nodes " + to_string(nodes(g)) + ", expected " + to_string(w.members);
    else
        c.ok = true;
    return c;
}

Node uf_new(Heap& h) {
    Node p = h.alloc({CellValue::pointer(null_node)});
    h.write(p, CellValue::pointer(p));
    return p;
}

Node uf_find(const Heap& h, Node x, const NodeSet* footprint) {
    auto next = [&](Node a) {
        if (footprint && !footprint->count(a))
            throw HeapFault("find left the set at " + std::to_string(a));
        return h.read_pointer(a);
    };
    std::size_t steps = 0;
    Node p = next(x);
    while (p != x) {
        if (++steps > h.size())
            throw HeapFault("find does not reach a root from " + std::to_string(x));
        x = p;
        p = next(x);
    }
    return x;
}

Node uf_union(Heap& h, Node x1, Node x2) {
    h.write(x1, CellValue::pointer(x2));
    return x2;
}

UfScript parse_uf_script(std::string_view text) {
    UfScript s;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;)
            words.push_back(w);
        if (words.empty())
            continue;
        UfOp op;
        op.line = no;
        if (words[0] == "new" && words.size() == 2) {
            op.kind = UfOp::Kind::New;
        } else if (words[0] == "find" && words.size() == 2) {
            op.kind = UfOp::Kind::Find;
        } else if (words[0] == "union" && words.size() == 3) {
            op.kind = UfOp::Kind::Union;
            op.b = words[2];
        } else {
            throw ScriptError(no, "expected 'new h', 'find h' or 'union h h', got '" + line + "'");
        }
        op.a = words[1];
        s.ops.push_back(std::move(op));
    }
    return s;
}

namespace {

std::string op_text(const UfOp& op) {
    switch (op.kind) {
    case UfOp::Kind::New: return "new " + op.a;
    case UfOp::Kind::Find: return "find " + op.a;
    case UfOp::Kind::Union: return "union " + op.a + " " + op.b;
    }
    return {};
}

}  // namespace

std::string format_uf_script(const UfScript& s) {
    std::string out;
    for (const UfOp& op : s.ops)
        out += op_text(op) + "\n";
    return out;
}

UfRun run_uf_script(const UfScript& script, const UfRunOptions& opts) {
    UfRun run;
    PartitionOracle oracle;
    std::map<std::string, std::size_t> ordinal;
    std::vector<std::string> names;
    std::vector<Node> address;
    std::map<Node, std::string> name_at;

    auto resolve = [&](const UfOp& op, const std::string& h) {
        auto it = ordinal.find(h);
        if (it == ordinal.end())
            throw ScriptError(op.line, "unknown handle '" + h + "'");
        return it->second;
    };
    auto fail = [&](const UfOp& op, const std::string& why) {
        run.failure = "line " + std::to_string(op.line) + " (" + op_text(op) + "): " + why;
    };
    auto agree = [&](const UfOp& op, std::size_t h, Node got) {
        if (!opts.compare_oracle)
            return true;
        Node want = address[oracle.find(h)];
        if (got == want)
            return true;
        fail(op, "find gives " + std::to_string(got) + ", partition says " + std::to_string(want));
        return false;
    };

    for (const UfOp& op : script.ops) {
        UfStep step;
        step.text = op_text(op);
        try {
            switch (op.kind) {
            case UfOp::Kind::New: {
                if (ordinal.count(op.a))
                    throw ScriptError(op.line, "handle '" + op.a + "' already bound");
                Node p = uf_new(run.heap);
                ordinal[op.a] = oracle.make();
                names.push_back(op.a);
                address.push_back(p);
                name_at[p] = op.a;
                run.handles[op.a] = p;
                step.address = p;
                break;
            }
            case UfOp::Kind::Find: {
                std::size_t h = resolve(op, op.a);
                step.address = uf_find(run.heap, address[h]);
                if (!agree(op, h, step.address))
                    return run;
                break;
            }
            case UfOp::Kind::Union: {
                std::size_t ha = resolve(op, op.a);
                std::size_t hb = resolve(op, op.b);
                Node ra = uf_find(run.heap, address[ha]);
                Node rb = uf_find(run.heap, address[hb]);
                if (!agree(op, ha, ra) || !agree(op, hb, rb))
                    return run;
                step.address = ra == rb ? rb : uf_union(run.heap, ra, rb);
                oracle.unite(ha, hb);
                break;
            }
            }
        } catch (const HeapFault& ex) {
            fail(op, ex.what());
            return run;
        }
        step.result = name_at[step.address];

        if (opts.check_sets) {
            for (const auto& b : oracle.blocks()) {
                SetWitness w;
                for (std::size_t h : b.members)
                    w.members.insert(address[h]);
                w.representative = address[b.rep];
                SetCheck c = check_set(run.heap, w);
                ++run.set_checks;
                if (!c.ok) {
                    fail(op, "set " + to_string(w.members) + ": " + c.diagnostic);
                    return run;
                }
            }
        }
        run.steps.push_back(std::move(step));
    }
    return run;
}

}  // namespace pgraph
