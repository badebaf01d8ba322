// Phylogenetic tree construction: turn a verified reduction into the Dollo-1
// tree it encodes, where every character is gained on exactly one edge and
// lost on at most one, and each species sits at the node whose root path
// accumulates exactly its character set.
//
// The construction replays the reduction while maintaining a cursor per
// graph vertex: the tree node under which that vertex's connected component
// is currently growing.  All vertices of one component always share their
// cursor -- components never merge during a reduction, and every event
// (a gain c+ or a forced loss c-) moves its whole pre-event component to the
// event's new node.  A species is placed on the node created by the event
// that isolated it; when a component splits, the halves simply keep their
// (now diverging) cursors, which is exactly where the tree branches.
//
// Rows and columns merged away as duplicates re-enter here: duplicate
// characters ride along as co-located gain/loss labels on the same edges,
// duplicate species become leaf children of their representative's node, and
// all-zero species (no characters at all) hang directly under the root.

#ifndef DOLLO_TREE_HPP
#define DOLLO_TREE_HPP

#include "realize.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dollo {

struct PhyloTree {
    struct Node {
        std::string id;
        std::optional<std::string> species;
        bool operator==(const Node&) const = default;
    };
    struct Edge {
        std::string parent;
        std::string child;
        std::vector<std::string> events;  // "A+" / "A-" labels, in event order
        bool operator==(const Edge&) const = default;
    };
    std::string root;
    std::vector<Node> nodes;   // creation order; nodes[0] is the root
    std::vector<Edge> edges;
    bool operator==(const PhyloTree&) const = default;
};

namespace detail {

struct TreeBuilder : RealizeObserver {
    const RedBlackGraph& g;
    PhyloTree tree;
    std::vector<std::size_t> cursor_species;
    std::vector<std::size_t> cursor_chars;
    // species isolated by the event that created each node (for labeling)
    std::map<std::size_t, std::vector<std::size_t>> isolated_at;

    explicit TreeBuilder(const RedBlackGraph& graph) : g(graph) {
        tree.root = "n0";
        tree.nodes.push_back({"n0", std::nullopt});
        cursor_species.assign(g.n(), 0);
        cursor_chars.assign(g.m(), 0);
    }

    std::size_t new_node(std::size_t parent, std::vector<std::string> events) {
        std::size_t id = tree.nodes.size();
        tree.nodes.push_back({"n" + std::to_string(id), std::nullopt});
        tree.edges.push_back({tree.nodes[parent].id, tree.nodes[id].id,
                              std::move(events)});
        return id;
    }

    // The event labels of character c, with merged duplicates co-located.
    std::vector<std::string> event_labels(std::size_t c, char sign) const {
        std::vector<std::string> out{g.char_labels[c] + sign};
        for (const std::string& dup : g.char_merged[c]) out.push_back(dup + sign);
        return out;
    }

    void advance(const RedBlackGraph::Component& comp, std::size_t node) {
        for (std::size_t s = comp.species.find_first(); s != Bitset::npos;
             s = comp.species.find_next(s))
            cursor_species[s] = node;
        for (std::size_t c = comp.chars.find_first(); c != Bitset::npos;
             c = comp.chars.find_next(c))
            cursor_chars[c] = node;
    }

    void pre_gain(const RedBlackGraph&, std::size_t c,
                  const RedBlackGraph::Component& comp) override {
        std::size_t node = new_node(cursor_chars[c], event_labels(c, '+'));
        advance(comp, node);
    }

    void pre_loss(const RedBlackGraph&, std::size_t c,
                  const RedBlackGraph::Component& comp) override {
        std::size_t node = new_node(cursor_chars[c], event_labels(c, '-'));
        advance(comp, node);
    }

    // Called after each realization: species the event isolated now sit at
    // their final cursors.
    void place(const RealizationEvent& ev) {
        for (std::size_t s : ev.species_isolated)
            isolated_at[cursor_species[s]].push_back(s);
    }

    void finish() {
        // A node dissolving exactly one species carries its label; several at
        // one node (possible only in degenerate constructions) become sibling
        // leaves beneath it.
        for (auto& [node, species] : isolated_at) {
            if (species.size() == 1) {
                tree.nodes[node].species = g.species_labels[species.front()];
            } else {
                for (std::size_t s : species) {
                    std::size_t leaf = new_node(node, {});
                    tree.nodes[leaf].species = g.species_labels[s];
                }
            }
        }
        // Species with no characters were never part of any component: they
        // are the root genotype and hang directly under the root.
        for (std::size_t s = 0; s < g.n(); ++s) {
            if (g.sblack[s].none() && g.sred[s].none() && !g.present.test(s)) {
                std::size_t leaf = new_node(0, {});
                tree.nodes[leaf].species = g.species_labels[s];
            }
        }
        // Duplicate species re-attach as leaf children of their
        // representative's node.
        std::size_t original_count = tree.nodes.size();
        for (std::size_t s = 0; s < g.n(); ++s) {
            if (g.species_merged[s].empty()) continue;
            std::size_t host = original_count;
            for (std::size_t i = 0; i < original_count; ++i)
                if (tree.nodes[i].species == g.species_labels[s]) host = i;
            if (host == original_count)
                throw std::logic_error("tree: merged species representative "
                                       "missing from the tree");
            for (const std::string& dup : g.species_merged[s]) {
                std::size_t leaf = new_node(host, {});
                tree.nodes[leaf].species = dup;
            }
        }
    }
};

}  // namespace detail

// Builds the phylogeny encoded by `order`, which must be a verified reduction
// of the graph of `input` (checked; a failing order is rejected).
inline PhyloTree build_tree(const BinaryMatrix& input,
                            const std::vector<std::size_t>& order) {
    RedBlackGraph g = build_graph(input);
    VerificationResult check = verify_reduction(g, order);
    if (!check.ok)
        throw std::invalid_argument("build_tree: order is not a reduction: "
                                    + check.reason);
    detail::TreeBuilder builder(g);
    RedBlackGraph work = g;  // builder needs the pristine graph for labels
    for (std::size_t c : order) {
        RealizationEvent ev = realize_character(work, c, &builder);
        builder.place(ev);
    }
    builder.finish();
    return builder.tree;
}

// ---------------------------------------------------------------------------
// Validation: the Dollo-1 conditions plus bit-exact row reconstruction.

struct TreeCheck {
    bool ok = false;
    std::string reason;
};

inline TreeCheck check_tree(const BinaryMatrix& input, const PhyloTree& t) {
    TreeCheck res;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (index.count(t.nodes[i].id)) {
            res.reason = "duplicate node id " + t.nodes[i].id;
            return res;
        }
        index[t.nodes[i].id] = i;
    }
    if (!index.count(t.root)) {
        res.reason = "root id missing from nodes";
        return res;
    }
    std::vector<std::size_t> parent(t.nodes.size(), t.nodes.size());
    std::vector<const PhyloTree::Edge*> parent_edge(t.nodes.size(), nullptr);
    for (const PhyloTree::Edge& e : t.edges) {
        if (!index.count(e.parent) || !index.count(e.child)) {
            res.reason = "edge references unknown node";
            return res;
        }
        std::size_t child = index[e.child];
        if (parent[child] != t.nodes.size()) {
            res.reason = "node " + e.child + " has two parents";
            return res;
        }
        parent[child] = index[e.parent];
        parent_edge[child] = &e;
    }
    std::size_t root = index[t.root];
    if (parent[root] != t.nodes.size()) {
        res.reason = "root has a parent";
        return res;
    }
    // connectivity + acyclicity: every node walks up to the root
    std::vector<std::size_t> depth(t.nodes.size(), 0);
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
        std::size_t u = v, steps = 0;
        while (u != root) {
            if (parent[u] == t.nodes.size() || steps++ > t.nodes.size()) {
                res.reason = "node " + t.nodes[v].id + " is not connected to the root";
                return res;
            }
            u = parent[u];
        }
        u = v;
        while (u != root) {
            ++depth[v];
            u = parent[u];
        }
    }

    // Dollo-1: each character gained once, lost at most once, loss below gain.
    std::map<std::string, std::size_t> gain_node, loss_node;  // event -> child node
    for (const PhyloTree::Edge& e : t.edges) {
        for (const std::string& ev : e.events) {
            if (ev.size() < 2) {
                res.reason = "malformed event label '" + ev + "'";
                return res;
            }
            std::string name = ev.substr(0, ev.size() - 1);
            char sign = ev.back();
            auto& book = sign == '+' ? gain_node : loss_node;
            if (sign != '+' && sign != '-') {
                res.reason = "event label '" + ev + "' has no +/- sign";
                return res;
            }
            if (book.count(name)) {
                res.reason = "character " + name + std::string(1, sign)
                             + " appears on two edges";
                return res;
            }
            book[name] = index[e.child];
        }
    }
    auto is_ancestor_or_self = [&](std::size_t a, std::size_t b) {
        while (true) {
            if (a == b) return true;
            if (b == root) return false;
            b = parent[b];
        }
    };
    for (const auto& [name, lnode] : loss_node) {
        if (!gain_node.count(name)) {
            res.reason = "character " + name + " lost but never gained";
            return res;
        }
        std::size_t gnode = gain_node[name];
        if (gnode == lnode || !is_ancestor_or_self(gnode, lnode)) {
            res.reason = "loss of " + name + " is not strictly below its gain";
            return res;
        }
    }

    // Each input species labels exactly one node, and its root path
    // reconstructs its matrix row exactly.
    std::map<std::string, std::size_t> species_node;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (!t.nodes[i].species) continue;
        if (species_node.count(*t.nodes[i].species)) {
            res.reason = "species " + *t.nodes[i].species + " labels two nodes";
            return res;
        }
        species_node[*t.nodes[i].species] = i;
    }
    for (std::size_t si = 0; si < input.n(); ++si) {
        auto it = species_node.find(input.species[si]);
        if (it == species_node.end()) {
            res.reason = "species " + input.species[si] + " missing from the tree";
            return res;
        }
        // Walking upward visits events deepest-first, and the event nearest
        // the species decides its bit: a later (shallower) event on the same
        // character must not overwrite it.
        Bitset row(input.m());
        Bitset decided(input.m());
        for (std::size_t v = it->second; v != root; v = parent[v]) {
            for (const std::string& ev : parent_edge[v]->events) {
                std::string name = ev.substr(0, ev.size() - 1);
                for (std::size_t c = 0; c < input.m(); ++c) {
                    if (input.characters[c] != name || decided.test(c)) continue;
                    decided.set(c);
                    if (ev.back() == '+') row.set(c);
                }
            }
        }
        if (row != input.rows[si]) {
            res.reason = "root path of " + input.species[si]
                         + " does not reproduce its matrix row";
            return res;
        }
    }

    // All gains lie on a single root path: their child nodes are totally
    // ordered by ancestry.
    std::vector<std::size_t> gains;
    for (const auto& [name, node] : gain_node) gains.push_back(node);
    std::sort(gains.begin(), gains.end(),
              [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
    for (std::size_t i = 0; i + 1 < gains.size(); ++i) {
        if (!is_ancestor_or_self(gains[i], gains[i + 1])) {
            res.reason = "character gains do not lie on a single root path";
            return res;
        }
    }

    res.ok = true;
    return res;
}

// Graphviz export; node numbering and edge order follow creation order, so
// the output is deterministic.
inline std::string export_dot(const PhyloTree& t) {
    std::string out = "digraph phylogeny {\n";
    for (const PhyloTree::Node& n : t.nodes) {
        out += "  " + n.id + " [label=\"" + (n.species ? *n.species : "") + "\"];\n";
    }
    for (const PhyloTree::Edge& e : t.edges) {
        std::string label;
        for (std::size_t i = 0; i < e.events.size(); ++i) {
            if (i) label += ",";
            label += e.events[i];
        }
        out += "  " + e.parent + " -> " + e.child + " [label=\"" + label + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace dollo

#endif  // DOLLO_TREE_HPP
