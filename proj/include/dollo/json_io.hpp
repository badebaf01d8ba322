// JSON serialization for the library's public value types.  All ids are
// emitted as human labels (never internal indices); set-valued fields become
// arrays ordered by ascending internal index, sequence-valued fields keep
// their sequence order.  Key order follows the documented schemas.

#ifndef DOLLO_JSON_IO_HPP
#define DOLLO_JSON_IO_HPP

#include "recognize.hpp"
#include "tree.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dollo {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json labels_of(const std::vector<std::string>& labels,
                              const Bitset& members) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = members.find_first(); i != Bitset::npos;
         i = members.find_next(i))
        arr.push_back(labels[i]);
    return arr;
}

inline ordered_json labels_of(const std::vector<std::string>& labels,
                              const std::vector<std::size_t>& ids) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i : ids) arr.push_back(labels[i]);
    return arr;
}

}  // namespace detail

inline ordered_json reduction_to_json(const RedBlackGraph& g,
                                      const std::vector<std::size_t>& order,
                                      const std::vector<RealizationEvent>& events) {
    ordered_json out;
    out["order"] = detail::labels_of(g.char_labels, order);
    ordered_json steps = ordered_json::array();
    for (const RealizationEvent& ev : events) {
        ordered_json step;
        step["realized"] = g.char_labels[ev.realized];
        ordered_json red = ordered_json::array();
        for (auto [c, s] : ev.red_added)
            red.push_back(ordered_json::array({g.char_labels[c], g.species_labels[s]}));
        step["red_added"] = std::move(red);
        ordered_json black = ordered_json::array();
        for (auto [c, s] : ev.black_removed)
            black.push_back(ordered_json::array({g.char_labels[c], g.species_labels[s]}));
        step["black_removed"] = std::move(black);
        step["chars_isolated"] = detail::labels_of(g.char_labels, ev.chars_isolated);
        step["species_isolated"] =
            detail::labels_of(g.species_labels, ev.species_isolated);
        steps.push_back(std::move(step));
    }
    out["steps"] = std::move(steps);
    return out;
}

inline ordered_json trace_to_json(const RedBlackGraph& g,
                                  const std::vector<TraceStep>& trace) {
    ordered_json arr = ordered_json::array();
    for (const TraceStep& ts : trace) {
        ordered_json e;
        e["step"] = ts.step;
        e["S_B"] = detail::labels_of(g.species_labels, ts.parts.S_B);
        e["S_R"] = detail::labels_of(g.species_labels, ts.parts.S_R);
        e["C_R"] = detail::labels_of(g.char_labels, ts.parts.C_R);
        e["C_C"] = detail::labels_of(g.char_labels, ts.parts.C_C);
        e["C_I"] = detail::labels_of(g.char_labels, ts.parts.C_I);
        e["C_U"] = detail::labels_of(g.char_labels, ts.parts.C_U);
        e["c_m"] = ts.c_m ? ordered_json(g.char_labels[*ts.c_m])
                          : ordered_json(nullptr);
        e["pi_U"] = detail::labels_of(g.char_labels, ts.pi_U);
        arr.push_back(std::move(e));
    }
    return arr;
}

inline ordered_json refutation_to_json(const RedBlackGraph& g,
                                       const Refutation& r) {
    ordered_json out;
    switch (r.kind) {
        case RefutationKind::RedSigma: out["kind"] = "red_sigma"; break;
        case RefutationKind::EmptyCandidates: out["kind"] = "empty_s7m"; break;
        case RefutationKind::NoChain: out["kind"] = "no_chain"; break;
    }
    out["prefix"] = detail::labels_of(g.char_labels, r.prefix);
    out["step"] = r.step;
    if (r.sigma) {
        ordered_json w;
        w["s1"] = g.species_labels[r.sigma->s1];
        w["c1"] = g.char_labels[r.sigma->c1];
        w["s2"] = g.species_labels[r.sigma->s2];
        w["c2"] = g.char_labels[r.sigma->c2];
        w["s3"] = g.species_labels[r.sigma->s3];
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    if (r.chain_pair) {
        out["pair"] = ordered_json::array({g.char_labels[r.chain_pair->first],
                                           g.char_labels[r.chain_pair->second]});
    } else {
        out["pair"] = nullptr;
    }
    out["in_pi_u"] = r.chain_in_pi_u;
    return out;
}

inline ordered_json outcome_to_json(const RedBlackGraph& g,
                                    const RecognitionOutcome& o) {
    ordered_json out;
    out["verdict"] = o.reducible ? "reducible" : "not_reducible";
    out["reduction"] = o.reducible ? reduction_to_json(g, o.reduction, o.events)
                                   : ordered_json(nullptr);
    out["refutation"] = o.refutation ? refutation_to_json(g, *o.refutation)
                                     : ordered_json(nullptr);
    out["trace"] = trace_to_json(g, o.trace);
    out["branch_log"] = detail::labels_of(g.species_labels, o.branch_log);
    return out;
}

inline ordered_json tree_to_json(const PhyloTree& t) {
    ordered_json out;
    out["root"] = t.root;
    ordered_json nodes = ordered_json::array();
    for (const PhyloTree::Node& n : t.nodes) {
        ordered_json node;
        node["id"] = n.id;
        node["species"] = n.species ? ordered_json(*n.species)
                                    : ordered_json(nullptr);
        nodes.push_back(std::move(node));
    }
    out["nodes"] = std::move(nodes);
    ordered_json edges = ordered_json::array();
    for (const PhyloTree::Edge& e : t.edges) {
        ordered_json edge;
        edge["parent"] = e.parent;
        edge["child"] = e.child;
        edge["events"] = e.events;
        edges.push_back(std::move(edge));
    }
    out["edges"] = std::move(edges);
    return out;
}

// Inverse of tree_to_json; throws nlohmann::json::exception on malformed
// documents.  parse_tree_json(tree_to_json(t).dump()) == t.
inline PhyloTree parse_tree_json(const std::string& text) {
    ordered_json doc = ordered_json::parse(text);
    PhyloTree t;
    t.root = doc.at("root").get<std::string>();
    for (const ordered_json& n : doc.at("nodes")) {
        PhyloTree::Node node;
        node.id = n.at("id").get<std::string>();
        if (!n.at("species").is_null())
            node.species = n.at("species").get<std::string>();
        t.nodes.push_back(std::move(node));
    }
    for (const ordered_json& e : doc.at("edges")) {
        PhyloTree::Edge edge;
        edge.parent = e.at("parent").get<std::string>();
        edge.child = e.at("child").get<std::string>();
        edge.events = e.at("events").get<std::vector<std::string>>();
        t.edges.push_back(std::move(edge));
    }
    return t;
}

}  // namespace dollo

#endif  // DOLLO_JSON_IO_HPP
