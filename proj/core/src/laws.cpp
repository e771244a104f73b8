#include "pgraph/laws.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include "pgraph/heap.hpp"
#include "pgraph/schorr_waite.hpp"
#include "pgraph/union_find.hpp"

namespace pgraph {

namespace {

using Outcome = LawOutcome;

const Outcome pass = std::nullopt;

std::string show(const PartialGraph& g) {
    return to_string(g);
}

std::string show(const JoinResult& g) {
    return g ? to_string(*g) : "undefined";
}

// The description is built only on failure.
template <class Describe>
Outcome expect(bool ok, Describe&& describe) {
    if (ok)
        return pass;
    return std::string(describe());
}

// ---- random inputs ------------------------------------------------------

PartialGraph rand_graph(Rng& rng, GraphKind kind, std::size_t max_nodes, MarkMode marks, bool closed_only) {
    GenConfig cfg;
    cfg.kind = kind;
    cfg.node_count = rng.below(max_nodes + 1);
    cfg.edge_density = rng.unit();
    cfg.seed = rng.next();
    cfg.closed_only = closed_only;
    cfg.marks = kind == GraphKind::Unary ? MarkMode::Unit : marks;
    return gen_graph(cfg);
}

PartialGraph any_graph(Rng& rng, GraphKind kind, std::size_t max_nodes) {
    return rand_graph(rng, kind, max_nodes, MarkMode::Random, rng.chance(0.5));
}

GraphKind rand_kind(Rng& rng) {
    static const std::vector<GraphKind> kinds{GraphKind::Binary, GraphKind::General, GraphKind::Unary};
    return rng.pick(kinds);
}

// Built from the entries directly, so splitting does not lean on the
// filters under test.
PartialGraph keep_if(const PartialGraph& g, const std::function<bool(Node)>& keep) {
    PartialGraph::Map m;
    for (const auto& [x, e] : g) {
        if (keep(x))
            m.emplace(x, e);
    }
    return PartialGraph::from_entries(g.kind(), std::move(m));
}

std::pair<PartialGraph, PartialGraph> split(const PartialGraph& g, Rng& rng) {
    NodeSet left;
    for (const auto& kv : g) {
        if (rng.chance(0.5))
            left.insert(kv.first);
    }
    return {keep_if(g, [&](Node x) { return left.count(x) != 0; }),
            keep_if(g, [&](Node x) { return left.count(x) == 0; })};
}

NodeSet rand_subset(const NodeSet& from, Rng& rng) {
    NodeSet s;
    for (Node x : from) {
        if (rng.chance(0.5))
            s.insert(x);
    }
    return s;
}

// Ids the generators may use for a graph of up to max_nodes nodes, plus
// a few beyond.
NodeSet id_space(GraphKind kind, std::size_t max_nodes) {
    GenConfig cfg;
    cfg.kind = kind;
    NodeSet s;
    for (std::size_t k = 0; k < max_nodes + 2; ++k)
        s.insert(gen_node_id(cfg, k));
    return s;
}

// A node of g, null, or an id outside g.
Node rand_probe(const PartialGraph& g, Rng& rng) {
    NodeSet ids = nodes0(g);
    std::vector<Node> xs(ids.begin(), ids.end());
    xs.push_back(1000003);
    if (!g.empty() && rng.chance(0.7)) {
        auto it = g.begin();
        std::advance(it, static_cast<long>(rng.below(g.size())));
        return it->first;
    }
    return rng.pick(xs);
}

const std::vector<Mark> all_marks{Mark::O, Mark::L, Mark::R, Mark::X};

MarkSet marks_from_bits(unsigned bits) {
    MarkSet s;
    for (std::size_t i = 0; i < all_marks.size(); ++i) {
        if (bits & (1u << i))
            s = s | MarkSet{all_marks[i]};
    }
    return s;
}

Mark flip(Mark m) {
    switch (m) {
    case Mark::O: return Mark::X;
    case Mark::X: return Mark::O;
    default: return m;
    }
}

// A random entry function, keyed on the node and its contents. Arity is
// preserved so it applies to every kind.
struct RandomFn {
    std::uint64_t salt;
    std::vector<Node> targets;

    Entry operator()(Node x, const Entry& e) const {
        std::uint64_t h = (x * 0x9e3779b97f4a7c15ULL) ^ salt ^ static_cast<std::uint64_t>(e.mark);
        Entry out;
        out.mark = e.mark == Mark::Unit ? Mark::Unit : all_marks[(h >> 7) % all_marks.size()];
        for (std::size_t i = 0; i < e.adj.size(); ++i) {
            std::uint64_t k = (h >> (11 + 5 * i)) & 31;
            out.adj.push_back(k < 16 ? e.adj[i] : targets[k % targets.size()]);
        }
        return out;
    }
};

RandomFn rand_fn(Rng& rng, const PartialGraph& g) {
    NodeSet ids = nodes0(g);
    std::vector<Node> t(ids.begin(), ids.end());
    t.push_back(1000003);
    return {rng.next(), t};
}

// ---- law bodies shared by random and exhaustive drivers ------------------

Outcome commutative(const PartialGraph& a, const PartialGraph& b) {
    JoinResult ab = join(a, b);
    JoinResult ba = join(b, a);
    return expect(ab == ba, [&] { return "g1 = " + show(a) + "; g2 = " + show(b) + "; g1+g2 = " + show(ab) +
                                "; g2+g1 = " + show(ba); });
}

Outcome associative(const JoinResult& a, const JoinResult& b, const JoinResult& c) {
    JoinResult l = join(join(a, b), c);
    JoinResult r = join(a, join(b, c));
    return expect(l == r, [&] { return "g1 = " + show(a) + "; g2 = " + show(b) + "; g3 = " + show(c) + "; (g1+g2)+g3 = " +
                              show(l) + "; g1+(g2+g3) = " + show(r); });
}

Outcome unit_law(const PartialGraph& g) {
    PartialGraph e(g.kind());
    return expect(join(e, g) == JoinResult(g) && join(g, e) == JoinResult(g), [&] { return "g = " + show(g); });
}

Outcome expand_at(const PartialGraph& g, Node x) {
    if (!g.contains(x))
        return pass;
    JoinResult back = join(singleton(x, g.at(x), g.kind()), remove(g, x));
    return expect(back == JoinResult(g), [&] { return "g = " + show(g) + "; x = " + std::to_string(x); });
}

Outcome big_join(const PartialGraph& g) {
    std::vector<PartialGraph> parts;
    for (const auto& [x, e] : g)
        parts.push_back(singleton(x, e, g.kind()));
    return expect(join_all(parts, g.kind()) == JoinResult(g), [&] { return "g = " + show(g); });
}

// Every morphism on one disjoint split, with filter parameters s and vs.
Outcome morphisms(const PartialGraph& g1, const PartialGraph& g2, const NodeSet& s, MarkSet vs,
                  const EntryFn& f) {
    JoinResult j = join(g1, g2);
    auto ctx = [&] { return std::string("g1 = " + show(g1) + "; g2 = " + show(g2)); };
    if (!j)
        return "split parts overlap: " + ctx();
    const PartialGraph& g = *j;
    PartialGraph e(g.kind());
    try {
        if (nodes(g) != disjoint_union(nodes(g1), nodes(g2)))
            return "nodes: " + ctx();
    } catch (const SetOverlap&) {
        return "nodes overlap: " + ctx();
    }
    if (JoinResult(filter_nodes(g, s)) != join(filter_nodes(g1, s), filter_nodes(g2, s)))
        return "filter_nodes " + to_string(s) + ": " + ctx();
    if (JoinResult(filter_marks(g, vs)) != join(filter_marks(g1, vs), filter_marks(g2, vs)))
        return "filter_marks: " + ctx();
    if (JoinResult(erase(g)) != join(erase(g1), erase(g2)))
        return "erase: " + ctx();
    if (JoinResult(map_graph(f, g)) != join(map_graph(f, g1), map_graph(f, g2)))
        return "map: " + ctx();
    if (sinks(g) != set_union(sinks(g1), sinks(g2)))
        return "sinks: " + ctx();
    if (!nodes(e).empty() || !(filter_nodes(e, s) == e) || !(filter_marks(e, vs) == e) || !(erase(e) == e) ||
        !(map_graph(f, e) == e) || !sinks(e).empty())
        return "unit not preserved";
    return pass;
}

Outcome filter_split_nodes(const PartialGraph& g, const NodeSet& s1, const NodeSet& s2) {
    NodeSet both = set_union(s1, s2);
    return expect(JoinResult(filter_nodes(g, both)) == join(filter_nodes(g, s1), filter_nodes(g, s2)), [&] { return "g = " + show(g) + "; S1 = " + to_string(s1) + "; S2 = " + to_string(s2); });
}

Outcome filter_intersection(const PartialGraph& g, const NodeSet& s1, const NodeSet& s2) {
    return expect(filter_nodes(g, set_intersect(s1, s2)) == filter_nodes(filter_nodes(g, s1), s2), [&] { return "g = " + show(g) + "; S1 = " + to_string(s1) + "; S2 = " + to_string(s2); });
}

// Mark sets as bit masks over O, L, R, X.
Outcome filter_marks_laws(const PartialGraph& g, unsigned v, unsigned w) {
    auto ctx = [&] { return std::string("g = " + show(g) + "; V = " + std::to_string(v) + "; W = " + std::to_string(w)); };
    MarkSet mv = marks_from_bits(v);
    MarkSet mw = marks_from_bits(w);
    if (filter_marks(g, marks_from_bits(v & w)) != filter_marks(filter_marks(g, mv), mw))
        return "intersection: " + ctx();
    if ((v & w) == 0) {
        if (JoinResult(filter_marks(g, marks_from_bits(v | w))) != join(filter_marks(g, mv), filter_marks(g, mw)))
            return "disjoint split: " + ctx();
        if (!filter_marks(filter_marks(g, mv), mw).empty())
            return "disjoint double filter: " + ctx();
    }
    return pass;
}

Outcome map_extensional(const PartialGraph& g, const EntryFn& f1, const EntryFn& f2) {
    bool agree = std::all_of(g.begin(), g.end(), [&](const auto& kv) {
        return f1(kv.first, kv.second) == f2(kv.first, kv.second);
    });
    bool same = map_graph(f1, g) == map_graph(f2, g);
    return expect(agree == same, [&] { return "g = " + show(g) + (agree ? "; functions agree" : "; functions differ"); });
}

Outcome reach_laws(const PartialGraph& g, Node x, Node y) {
    auto ctx = [&] { return std::string("g = " + show(g) + "; x = " + std::to_string(x) + "; y = " + std::to_string(y)); };
    NodeSet rx = reach(g, x);
    if (rx != reach(erase(g), x))
        return "erasure changes reach: " + ctx();
    NodeSet without = reach(remove(g, y), x);
    if (!rx.count(y) && rx != without)
        return "removing an unreached node changes reach: " + ctx();
    if (rx.count(y) && rx != set_union(without, reach(g, y)))
        return "removing a reached node: " + ctx();
    return pass;
}

Outcome reach_agrees(const PartialGraph& g, Node x, bool literal) {
    NodeSet r = reach(g, x);
    if (r != reach_oracle(g, x))
        return "reach " + to_string(r) + " vs breadth-first " + to_string(reach_oracle(g, x)) + ": g = " + show(g) +
               "; x = " + std::to_string(x);
    if (literal && r != reach_literal(g, x))
        return "reach vs literal recursion: g = " + show(g) + "; x = " + std::to_string(x);
    return pass;
}

Outcome reach_closed_parts(const PartialGraph& g, Node x) {
    if (!closed(g) || !g.contains(x))
        return pass;
    auto ctx = [&] { return std::string("g = " + show(g) + "; x = " + std::to_string(x)); };
    NodeSet rx = reach(g, x);
    PartialGraph g1 = keep_if(g, [&](Node n) { return rx.count(n) != 0; });
    if (!closed(filter_nodes(g, rx)))
        return "reachable part not closed: " + ctx();
    if (!closed(g1) || !g1.contains(x) || nodes(g1) != reach(g1, x))
        return "decomposition at the reachable part: " + ctx();
    return pass;
}

Outcome redirect_closed(const PartialGraph& g, Node x, std::size_t side, Node y) {
    if (!closed(g) || !g.contains(x) || !nodes0(g).count(y))
        return pass;
    Entry e = g.at(x);
    e.adj[side] = y;
    return expect(closed(g.with_entry(x, e)), [&] { return "g = " + show(g) + "; x = " + std::to_string(x) + "; side = " +
                                                  std::to_string(side) + "; y = " + std::to_string(y); });
}

Outcome layout_laws(const PartialGraph& g1, const PartialGraph& g2) {
    auto ctx = [&] { return std::string("g1 = " + show(g1) + "; g2 = " + show(g2)); };
    JoinResult g = join(g1, g2);
    if (!g)
        return pass;
    try {
        Heap h = layout(*g);
        if (!(abstract(h, nodes(*g), g->kind()) == *g))
            return "round trip: " + ctx();
        std::optional<Heap> parts = h_try_join(layout(g1), layout(g2));
        if (!parts || !(*parts == h))
            return "layout does not distribute: " + ctx();
        LayoutReport rep = check_layout(h, nodes(*g), g->kind());
        if (!rep.matched || !rep.residual.empty() || rep.footprint != h.domain() || rep.footprint != footprint(*g))
            return "footprint not tight: " + ctx();
        if (!layout(PartialGraph(g->kind())).empty())
            return "empty graph lays out to a non-empty heap";
    } catch (const std::exception& ex) {
        return std::string(ex.what()) + ": " + ctx();
    }
    return pass;
}

// ---- exhaustive sweep helpers --------------------------------------------

std::vector<Node> tiny_nodes(const PartialGraph& g) {
    std::vector<Node> out;
    for (const auto& kv : g)
        out.push_back(kv.first);
    return out;
}

// All ways to give each node of g one of `parts` labels.
template <class Fn>
Outcome for_each_split(const PartialGraph& g, std::size_t parts, Fn fn) {
    std::vector<Node> ns = tiny_nodes(g);
    std::size_t total = 1;
    for (std::size_t i = 0; i < ns.size(); ++i)
        total *= parts;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<PartialGraph::Map> maps(parts);
        std::size_t c = code;
        for (Node x : ns) {
            maps[c % parts].emplace(x, g.at(x));
            c /= parts;
        }
        std::vector<PartialGraph> gs;
        for (auto& m : maps)
            gs.push_back(PartialGraph::from_entries(g.kind(), std::move(m)));
        if (Outcome o = fn(gs, code))
            return o;
    }
    return pass;
}

NodeSet subset_by_bits(unsigned bits) {
    NodeSet s;
    const Node universe[3] = {3, 6, 9};
    for (unsigned i = 0; i < 3; ++i) {
        if (bits & (1u << i))
            s.insert(universe[i]);
    }
    return s;
}

EntryFn tiny_fn(std::size_t which) {
    switch (which % 3) {
    case 0:
        return [](Node, const Entry& e) {
            Entry out{flip(e.mark), e.adj};
            std::reverse(out.adj.begin(), out.adj.end());
            return out;
        };
    case 1:
        return [](Node x, const Entry& e) { return Entry{e.mark, {x, e.adj[0]}}; };
    default: return [](Node, const Entry&) { return Entry{Mark::X, {0, 9}}; };
    }
}

// ---- union-find helpers --------------------------------------------------

PartialGraph unary_graph(Rng& rng, std::size_t max_nodes) {
    return rand_graph(rng, GraphKind::Unary, max_nodes, MarkMode::Unit, rng.chance(0.3));
}

PartialGraph forest(Rng& rng, std::size_t max_nodes) {
    GenConfig cfg;
    cfg.kind = GraphKind::Unary;
    cfg.node_count = rng.below(max_nodes + 1);
    cfg.edge_density = rng.unit();
    cfg.seed = rng.next();
    cfg.inverted_forest = true;
    return gen_graph(cfg);
}

// Two disjoint unary graphs with equal summits. Each part is a forest
// hanging off its own loops and off the common target set, which
// contains the other part's loops and some outside nodes.
std::pair<PartialGraph, PartialGraph> equal_summit_pair(Rng& rng, std::size_t max_nodes) {
    std::size_t n = 2 + rng.below(std::max<std::size_t>(max_nodes, 2) - 1);
    std::vector<Node> ids;
    for (Node k = 1; k <= n; ++k)
        ids.push_back(k);
    rng.shuffle(ids);
    std::size_t cut = 1 + rng.below(n - 1);
    std::vector<Node> part[2] = {{ids.begin(), ids.begin() + static_cast<long>(cut)},
                                 {ids.begin() + static_cast<long>(cut), ids.end()}};
    NodeSet loopset[2];
    for (int i = 0; i < 2; ++i) {
        for (Node x : part[i]) {
            if (rng.chance(0.3))
                loopset[i].insert(x);
        }
    }
    NodeSet outside;
    for (Node z : {Node{0}, Node{n + 1}, Node{n + 2}}) {
        if (rng.chance(0.4))
            outside.insert(z);
    }
    PartialGraph out[2] = {PartialGraph(GraphKind::Unary), PartialGraph(GraphKind::Unary)};
    for (int i = 0; i < 2; ++i) {
        NodeSet required = set_union(outside, loopset[1 - i]);
        std::vector<Node> free;
        PartialGraph::Map m;
        for (Node x : part[i]) {
            if (loopset[i].count(x))
                m.emplace(x, Entry{Mark::Unit, {x}});
            else
                free.push_back(x);
        }
        // One dedicated edge per required target, the rest attach to
        // earlier nodes, own loops or required targets.
        std::vector<Node> anchors(required.begin(), required.end());
        anchors.insert(anchors.end(), loopset[i].begin(), loopset[i].end());
        auto req = required.begin();
        std::vector<Node> placed;
        for (Node x : free) {
            Node succ;
            if (req != required.end()) {
                succ = *req++;
            } else if (!placed.empty() && (anchors.empty() || rng.chance(0.5))) {
                succ = rng.pick(placed);
            } else if (!anchors.empty()) {
                succ = rng.pick(anchors);
            } else {
                succ = x;
            }
            m.emplace(x, Entry{Mark::Unit, {succ}});
            placed.push_back(x);
        }
        out[i] = PartialGraph::from_entries(GraphKind::Unary, std::move(m));
    }
    return {out[0], out[1]};
}

std::vector<Law> build_registry() {
    std::vector<Law> laws;
    auto add = [&](std::string name, std::string group, std::function<Outcome(Rng&, std::size_t)> rnd,
                   std::function<Outcome(const PartialGraph&)> tiny = nullptr, bool probe = false) {
        laws.push_back({std::move(name), std::move(group), std::move(rnd), std::move(tiny), probe});
    };

    // -- partial graphs: the monoid --
    add(
        "join_commutative", "partial_graph",
        [](Rng& rng, std::size_t n) {
            GraphKind k = rand_kind(rng);
            PartialGraph a = any_graph(rng, k, n);
            PartialGraph b = any_graph(rng, k, n);
            return commutative(split(a, rng).first, split(b, rng).first);
        },
        [](const PartialGraph& g) {
            if (Outcome o = commutative(g, filter_nodes(g, subset_by_bits(5))))
                return o;
            return for_each_split(g, 2, [](const std::vector<PartialGraph>& p, std::size_t) {
                return commutative(p[0], p[1]);
            });
        });
    add(
        "join_associative", "partial_graph",
        [](Rng& rng, std::size_t n) {
            GraphKind k = rand_kind(rng);
            JoinResult parts[3];
            for (auto& p : parts) {
                if (rng.chance(0.1))
                    p = std::nullopt;
                else
                    p = split(any_graph(rng, k, n), rng).first;
            }
            return associative(parts[0], parts[1], parts[2]);
        },
        [](const PartialGraph& g) {
            // Join never looks at contents, so the unmarked slice of the
            // universe covers every shape.
            if (!std::all_of(g.begin(), g.end(), [](const auto& kv) { return kv.second.mark == Mark::O; }))
                return pass;
            return for_each_split(g, 3, [](const std::vector<PartialGraph>& p, std::size_t) {
                return associative(p[0], p[1], p[2]);
            });
        });
    add(
        "join_unit", "partial_graph", [](Rng& rng, std::size_t n) { return unit_law(any_graph(rng, rand_kind(rng), n)); },
        unit_law);
    add(
        "expand_at_node", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = any_graph(rng, rand_kind(rng), n);
            return expand_at(g, rand_probe(g, rng));
        },
        [](const PartialGraph& g) {
            for (Node x : nodes(g)) {
                if (Outcome o = expand_at(g, x))
                    return o;
            }
            return pass;
        });
    add(
        "join_of_singletons", "partial_graph",
        [](Rng& rng, std::size_t n) { return big_join(any_graph(rng, rand_kind(rng), n)); }, big_join);

    // -- morphisms --
    add(
        "morphisms_distribute", "partial_graph",
        [](Rng& rng, std::size_t n) {
            GraphKind k = rand_kind(rng);
            PartialGraph g = any_graph(rng, k, n);
            auto [g1, g2] = split(g, rng);
            NodeSet s = rand_subset(id_space(k, n), rng);
            MarkSet vs = marks_from_bits(static_cast<unsigned>(rng.below(16)));
            RandomFn f = rand_fn(rng, g);
            return morphisms(g1, g2, s, vs, f);
        },
        [](const PartialGraph& g) {
            // Marked graphs get two mixed splits; the unmarked ones get all of them.
            bool marked = std::any_of(g.begin(), g.end(), [](const auto& kv) { return kv.second.mark != Mark::O; });
            return for_each_split(g, 2, [marked](const std::vector<PartialGraph>& p, std::size_t code) {
                if (marked && code != 1 && code != 2)
                    return pass;
                return morphisms(p[0], p[1], subset_by_bits(static_cast<unsigned>(code * 3 + 1) % 8),
                                 marks_from_bits(static_cast<unsigned>(code * 5 + 3) % 16), tiny_fn(code));
            });
        });

    // -- filtering --
    add(
        "filter_nodes_laws", "partial_graph",
        [](Rng& rng, std::size_t n) {
            GraphKind k = rand_kind(rng);
            PartialGraph g = any_graph(rng, k, n);
            NodeSet space = id_space(k, n);
            NodeSet s1 = rand_subset(space, rng);
            NodeSet s2 = rand_subset(space, rng);
            if (Outcome o = filter_intersection(g, s1, s2))
                return o;
            return filter_split_nodes(g, s1, set_minus(s2, s1));
        },
        [](const PartialGraph& g) {
            if (!std::all_of(g.begin(), g.end(), [](const auto& kv) { return kv.second.mark == Mark::O; }))
                return pass;
            for (unsigned a = 0; a < 8; ++a) {
                for (unsigned b : {~a & 7u, (a * 3 + 1) & 7u}) {
                    if (Outcome o = filter_intersection(g, subset_by_bits(a), subset_by_bits(b)))
                        return o;
                    if ((a & b) == 0) {
                        if (Outcome o = filter_split_nodes(g, subset_by_bits(a), subset_by_bits(b)))
                            return o;
                    }
                }
            }
            return pass;
        });
    add(
        "filter_marks_laws", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = any_graph(rng, rand_kind(rng), n);
            unsigned v = static_cast<unsigned>(rng.below(16));
            unsigned w = static_cast<unsigned>(rng.below(16));
            if (rng.chance(0.5))
                w &= ~v;
            return filter_marks_laws(g, v, w);
        },
        [](const PartialGraph& g) {
            for (unsigned v = 0; v < 16; ++v) {
                for (unsigned w : {~v & 15u, (v * 5 + 3) & 15u}) {
                    if (Outcome o = filter_marks_laws(g, v, w))
                        return o;
                }
            }
            return pass;
        });
    add(
        "map_extensional", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = any_graph(rng, rand_kind(rng), n);
            RandomFn f1 = rand_fn(rng, g);
            Node z = rand_probe(g, rng);
            bool change = rng.chance(0.7);
            RandomFn other = rand_fn(rng, g);
            EntryFn f2 = [=](Node x, const Entry& e) { return change && x == z ? other(x, e) : f1(x, e); };
            return map_extensional(g, f1, f2);
        },
        [](const PartialGraph& g) {
            EntryFn base = tiny_fn(0);
            for (Node z : {Node{3}, Node{6}, Node{9}, Node{12}}) {
                for (std::size_t which = 1; which < 3; ++which) {
                    EntryFn alt = tiny_fn(which);
                    EntryFn f2 = [=](Node x, const Entry& e) { return x == z ? alt(x, e) : base(x, e); };
                    if (Outcome o = map_extensional(g, base, f2))
                        return o;
                }
            }
            return pass;
        });

    // -- reachability --
    add(
        "reach_content_and_removal", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = any_graph(rng, rand_kind(rng), n);
            return reach_laws(g, rand_probe(g, rng), rand_probe(g, rng));
        },
        [](const PartialGraph& g) {
            for (Node x : {0, 3, 6, 9}) {
                for (Node y : {3, 6, 9}) {
                    if (Outcome o = reach_laws(g, x, y))
                        return o;
                }
            }
            return pass;
        });
    add(
        "reach_matches_oracles", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = any_graph(rng, rand_kind(rng), n);
            return reach_agrees(g, rand_probe(g, rng), true);
        },
        [](const PartialGraph& g) {
            for (Node x : {0, 3, 6, 9}) {
                if (Outcome o = reach_agrees(g, x, true))
                    return o;
            }
            return pass;
        });
    add(
        "reach_closed_subgraph", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = rand_graph(rng, rand_kind(rng), n, MarkMode::Random, true);
            return reach_closed_parts(g, rand_probe(g, rng));
        },
        [](const PartialGraph& g) {
            for (Node x : {3, 6, 9}) {
                if (Outcome o = reach_closed_parts(g, x))
                    return o;
            }
            return pass;
        });
    add(
        "redirect_child_keeps_closed", "partial_graph",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = rand_graph(rng, GraphKind::Binary, n, MarkMode::Random, true);
            return redirect_closed(g, rand_probe(g, rng), rng.below(2), rand_probe(g, rng));
        },
        [](const PartialGraph& g) {
            if (!closed(g))
                return pass;
            for (Node x : {3, 6, 9}) {
                for (std::size_t side = 0; side < 2; ++side) {
                    for (Node y : {0, 3, 6, 9}) {
                        if (Outcome o = redirect_closed(g, x, side, y))
                            return o;
                    }
                }
            }
            return pass;
        });

    // -- heap layouts --
    add(
        "heap_join_monoid", "heap_model",
        [](Rng& rng, std::size_t) {
            Heap hs[3];
            for (auto& h : hs) {
                std::size_t k = rng.below(6);
                for (std::size_t i = 0; i < k; ++i) {
                    Address a = 1 + rng.below(12);
                    if (!h.contains(a))
                        h.place(a, CellValue::pointer(rng.below(12)));
                }
            }
            auto lift = [](const std::optional<Heap>& a, const std::optional<Heap>& b) -> std::optional<Heap> {
                if (!a || !b)
                    return std::nullopt;
                return h_try_join(*a, *b);
            };
            if (h_try_join(hs[0], hs[1]) != h_try_join(hs[1], hs[0]))
                return Outcome("heap join not commutative");
            if (lift(lift(hs[0], hs[1]), hs[2]) != lift(hs[0], lift(hs[1], hs[2])))
                return Outcome("heap join not associative");
            if (h_try_join(hs[0], Heap{}) != std::optional<Heap>(hs[0]))
                return Outcome("empty heap is not a unit");
            return pass;
        });
    for (GraphKind k : {GraphKind::Binary, GraphKind::Unary, GraphKind::General}) {
        add(
            std::string("layout_") + kind_name(k), "heap_model",
            [k](Rng& rng, std::size_t n) {
                PartialGraph g = any_graph(rng, k, std::max<std::size_t>(n, 32));
                auto [g1, g2] = split(g, rng);
                return layout_laws(g1, g2);
            },
            k == GraphKind::Binary ? std::function<Outcome(const PartialGraph&)>([](const PartialGraph& g) {
                // Split off the smallest node.
                if (g.empty())
                    return layout_laws(g, g);
                Node first = g.begin()->first;
                return layout_laws(keep_if(g, [&](Node x) { return x == first; }),
                                   keep_if(g, [&](Node x) { return x != first; }));
            })
                                   : nullptr);
    }

    // -- Schorr-Waite stack encoding --
    add("if_mark_without_partial_nodes", "schorr_waite", [](Rng& rng, std::size_t n) {
        PartialGraph g = rand_graph(rng, GraphKind::Binary, n, MarkMode::Random, rng.chance(0.5));
        g = map_graph(
            [](Node, const Entry& e) {
                Entry out = e;
                if (out.mark == Mark::L)
                    out.mark = Mark::O;
                if (out.mark == Mark::R)
                    out.mark = Mark::X;
                return out;
            },
            g);
        Stack alpha;
        for (std::size_t i = rng.below(4); i > 0; --i)
            alpha.push_back(rand_probe(g, rng));
        Node t = rand_probe(g, rng);
        RandomFn f = rand_fn(rng, g);
        PartialGraph erased = erase(g);
        return expect(inset(alpha, g) == erased && restore(t, alpha, g) == erased &&
                          map_if_mark([&](Node x) { return f(x, Entry{}).mark == Mark::O ? x : t; }, g) == erased, [&] { return "g = " + show(g); });
    });
    add("if_mark_agreeing_functions", "schorr_waite", [](Rng& rng, std::size_t n) {
        PartialGraph g = rand_graph(rng, GraphKind::Binary, n, MarkMode::Random, rng.chance(0.5));
        NodeSet partial = nodes(filter_marks(g, {Mark::L, Mark::R}));
        std::uint64_t s1 = rng.next();
        std::uint64_t s2 = rng.next();
        NodeFn f1 = [=](Node x) { return (x * 7 + s1) % 40; };
        NodeFn f2 = [=](Node x) { return partial.count(x) ? f1(x) : (x * 11 + s2) % 40; };
        return expect(map_if_mark(f1, g) == map_if_mark(f2, g), [&] { return "g = " + show(g); });
    });
    add("stack_push_top", "schorr_waite", [](Rng& rng, std::size_t n) {
        PartialGraph g = rand_graph(rng, GraphKind::Binary, n, MarkMode::Random, rng.chance(0.5));
        NodeSet partial = nodes(filter_marks(g, {Mark::L, Mark::R}));
        NodeSet extra = rand_subset(nodes(g), rng);
        NodeSet members = set_union(partial, extra);
        Stack alpha(members.begin(), members.end());
        rng.shuffle(alpha);
        if (!alpha.empty() && rng.chance(0.2))
            alpha.push_back(rng.pick(alpha));
        Node p = rand_probe(g, rng);
        Node t = rand_probe(g, rng);
        Stack pushed = alpha;
        pushed.push_back(p);
        auto ctx = [&] { return std::string("g = " + show(g) + "; p = " + std::to_string(p) + "; t = " + std::to_string(t)); };
        if (!(inset(pushed, g) == inset(alpha, g)))
            return Outcome("inset: " + ctx());
        if (!(restore(t, pushed, g) == restore(p, alpha, g)))
            return Outcome("restore: " + ctx());
        return pass;
    });
    add("inv_holds_initially", "schorr_waite", [](Rng& rng, std::size_t n) {
        PartialGraph g = rand_graph(rng, GraphKind::Binary, std::max<std::size_t>(n, 1), MarkMode::Unmarked, true);
        if (g.empty())
            return pass;
        Node r = rand_probe(g, rng);
        if (!g.contains(r))
            r = g.begin()->first;
        // The starting state needs every node reachable from the root.
        g = filter_nodes(g, reach(g, r));
        InvariantReport rep = check_inv(g, g, r, null_node);
        return expect(rep.ok(), [&] { return "g = " + show(g) + "; r = " + std::to_string(r) + "; " + rep.summary(); });
    });

    // -- union-find abstractions --
    add("dangls_laws", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = any_graph(rng, rng.chance(0.7) ? GraphKind::Unary : GraphKind::General, n);
        auto [g1, g2] = split(g, rng);
        auto ctx = [&] { return std::string("g1 = " + show(g1) + "; g2 = " + show(g2)); };
        NodeSet want = set_union(set_minus(dangls(g1), nodes(g2)), set_minus(dangls(g2), nodes(g1)));
        if (dangls(g) != want)
            return Outcome("dangls do not distribute: " + ctx());
        if (!subset_of(loops(g), cycles(g)) || !subset_of(cycles(g), nodes(g)))
            return Outcome("loops, cycles, nodes not nested: " + ctx());
        if (!disjoint(dangls(g), nodes(g)))
            return Outcome("dangls meet nodes: " + ctx());
        return pass;
    });
    add("summit_matches_paths", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.8) ? unary_graph(rng, n) : any_graph(rng, GraphKind::General, n);
        for (Node x : nodes(g)) {
            if (summit(g, x) != summit_by_paths(g, x))
                return Outcome("summit at " + std::to_string(x) + ": g = " + show(g));
        }
        if (summits(g) != summits_oracle(g))
            return Outcome("summits: g = " + show(g));
        Node out = 1000003;
        return expect(summit(g, out) == NodeSet{out}, [&] { return "summit outside the graph"; });
    });
    add("summits_are_cycles_and_dangls", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.8) ? unary_graph(rng, n) : any_graph(rng, GraphKind::General, n);
        try {
            return expect(summits(g) == disjoint_union(cycles(g), dangls(g)), [&] { return "g = " + show(g); });
        } catch (const SetOverlap&) {
            return Outcome("cycles meet dangls: g = " + show(g));
        }
    });
    add("summits_of_equal_parts", "union_find", [](Rng& rng, std::size_t n) {
        // The generator cannot always cover every target; redraw until the
        // premise holds by the path oracle.
        auto [g1, g2] = equal_summit_pair(rng, n);
        for (int tries = 0; tries < 50 && summits_oracle(g1) != summits_oracle(g2); ++tries)
            std::tie(g1, g2) = equal_summit_pair(rng, n);
        if (summits_oracle(g1) != summits_oracle(g2))
            return pass;
        JoinResult g = join(g1, g2);
        return expect(g && summits(*g) == summits(g1), [&] { return "g1 = " + show(g1) + "; g2 = " + show(g2); });
    });
    add("summits_without_loop", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.5) ? unary_graph(rng, n) : forest(rng, n);
        NodeSet ls = loops(g);
        if (ls.empty())
            return pass;
        Node x = *std::next(ls.begin(), static_cast<long>(rng.below(ls.size())));
        return expect(subset_of(summits(remove(g, x)), summits(g)), [&] { return "g = " + show(g) + "; x = " + std::to_string(x); });
    });
    add("inverted_forest", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.8) ? forest(rng, n) : unary_graph(rng, n);
        if (!subset_of(summits(g), loops(g)))
            return pass;
        auto ctx = [&] { return std::string("g = " + show(g)); };
        if (!closed(g))
            return Outcome("not closed: " + ctx());
        if (!preacyclic(g))
            return Outcome("not preacyclic: " + ctx());
        auto [g1, g2] = split(g, rng);
        try {
            NodeSet want = disjoint_union(set_minus(summits(g1), nodes(g2)), set_minus(summits(g2), nodes(g1)));
            if (summits(g) != want)
                return Outcome("summits do not distribute: g1 = " + show(g1) + "; g2 = " + show(g2));
        } catch (const SetOverlap&) {
            return Outcome("distributed summits overlap: g1 = " + show(g1) + "; g2 = " + show(g2));
        }
        for (const auto& [x, e] : g) {
            if (summit(g, x) != summit(g, e.adj[0]))
                return Outcome("summit changes along the edge from " + std::to_string(x) + ": " + ctx());
        }
        return pass;
    });
    add("summits_distribute_preacyclic", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.5) ? forest(rng, n) : unary_graph(rng, n);
        if (rng.chance(0.5) && !g.empty()) {
            // Open the forest up: point some nodes outside.
            g = map_graph(
                [&](Node x, const Entry& e) {
                    return rng.chance(0.2) ? Entry{Mark::Unit, {x + 1000}} : e;
                },
                g);
        }
        if (!preacyclic(g))
            return pass;
        auto [g1, g2] = split(g, rng);
        NodeSet want = set_union(set_minus(summits(g1), nodes(g2)), set_minus(summits(g2), nodes(g1)));
        return expect(summits(g) == want, [&] { return "g1 = " + show(g1) + "; g2 = " + show(g2); });
    });
    add(
        "summits_distribute_part_preacyclic", "union_find",
        [](Rng& rng, std::size_t n) {
            PartialGraph g = unary_graph(rng, n);
            auto [g1, g2] = split(g, rng);
            if (!preacyclic(g1) || !preacyclic(g2))
                return pass;
            NodeSet want = set_union(set_minus(summits(g1), nodes(g2)), set_minus(summits(g2), nodes(g1)));
            return expect(summits(g) == want, [&] { return "g1 = " + show(g1) + "; g2 = " + show(g2); });
        },
        nullptr, true);
    add("preacyclic_redirect_outside", "union_find", [](Rng& rng, std::size_t n) {
        PartialGraph g = rng.chance(0.5) ? forest(rng, n) : unary_graph(rng, n);
        if (g.empty() || !preacyclic(g))
            return pass;
        Node x = std::next(g.begin(), static_cast<long>(rng.below(g.size())))->first;
        Node y = rng.chance(0.3) ? null_node : 1000 + rng.below(5);
        PartialGraph h = g.with_entry(x, Entry{Mark::Unit, {y}});
        return expect(preacyclic(h), [&] { return "g = " + show(g) + "; x = " + std::to_string(x) + "; y = " + std::to_string(y); });
    });
    return laws;
}

}  // namespace

const std::vector<Law>& law_registry() {
    static const std::vector<Law> laws = build_registry();
    return laws;
}

std::vector<LawStats> run_laws(const LawOptions& opts) {
    using clock = std::chrono::steady_clock;
    std::vector<LawStats> out;
    const auto& laws = law_registry();
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < laws.size(); ++i) {
        if (laws[i].name.find(opts.filter) != std::string::npos)
            picked.push_back(i);
    }
    for (std::size_t i : picked) {
        const Law& law = laws[i];
        LawStats st;
        st.name = law.name;
        st.group = law.group;
        st.probe = law.probe;
        auto record = [&](const Outcome& o) {
            if (!o)
                return;
            ++st.failures;
            if (st.counterexamples.size() < opts.keep)
                st.counterexamples.push_back(*o);
        };
        auto run_one = [&](auto&& body) {
            try {
                record(body());
            } catch (const std::exception& ex) {
                record(std::string("exception: ") + ex.what());
            }
        };
        auto start = clock::now();
        // Each law gets its own stream so filtering does not shift inputs.
        Rng rng(opts.seed ^ (0x632be59bd9b4e019ULL * (i + 1)));
        for (std::size_t c = 0; c < opts.cases; ++c) {
            run_one([&] { return law.random_case(rng, opts.max_nodes); });
            ++st.random_cases;
        }
        st.seconds = std::chrono::duration<double>(clock::now() - start).count();
        out.push_back(std::move(st));
    }
    if (opts.exhaustive_tiny) {
        std::vector<std::pair<std::size_t, std::size_t>> tiny;  // (law index, stats index)
        for (std::size_t k = 0; k < picked.size(); ++k) {
            if (laws[picked[k]].tiny_case)
                tiny.emplace_back(picked[k], k);
        }
        std::vector<double> secs(tiny.size(), 0);
        for_each_tiny_binary({Mark::O, Mark::L, Mark::R, Mark::X}, [&](const PartialGraph& g) {
            for (std::size_t j = 0; j < tiny.size(); ++j) {
                auto [li, si] = tiny[j];
                LawStats& st = out[si];
                auto start = clock::now();
                try {
                    if (Outcome o = laws[li].tiny_case(g)) {
                        ++st.failures;
                        if (st.counterexamples.size() < opts.keep)
                            st.counterexamples.push_back(*o);
                    }
                } catch (const std::exception& ex) {
                    ++st.failures;
                    if (st.counterexamples.size() < opts.keep)
                        st.counterexamples.push_back(std::string("exception: ") + ex.what());
                }
                secs[j] += std::chrono::duration<double>(clock::now() - start).count();
                ++st.tiny_cases;
            }
        });
        for (std::size_t j = 0; j < tiny.size(); ++j)
            out[tiny[j].second].seconds += secs[j];
    }
    return out;
}

bool laws_pass(const std::vector<LawStats>& stats) {
    return std::all_of(stats.begin(), stats.end(), [](const LawStats& s) { return s.probe || s.failures == 0; });
}

}  // namespace pgraph
