// The red-black graph: the working state of a persistent-phylogeny reduction.
//
// Vertices are species and characters (bipartite).  A black edge (c, s) means
// species s possesses character c and the gain of c is still pending; a red
// edge means c was gained below the split from s and must eventually be lost
// for s.  Characters move through three states:
//
//   Inactive  -- not yet realized; carries only black edges
//   Active    -- realized (gained); carries only red edges
//   Isolated  -- finished: either lost, or gained with nothing left to lose
//
// Species are "present" while they have at least one incident edge; a species
// whose last edge disappears is isolated and never returns.  Duplicate rows
// and duplicate columns of the input matrix are merged up front (they are
// indistinguishable to the reduction) and the merged labels are kept so tree
// construction can re-attach them.

#ifndef DOLLO_GRAPH_HPP
#define DOLLO_GRAPH_HPP

#include "matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dollo {

enum class CharState : std::uint8_t { Inactive = 0, Active = 1, Isolated = 2 };

// Raised when an operation is applied to a graph state that cannot accept it
// (realizing an already-active character, removing a missing edge, ...).
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RedBlackGraph {
    // --- immutable identity -------------------------------------------------
    std::vector<std::string> species_labels;
    std::vector<std::string> char_labels;
    // Labels merged away during construction; entry i lists the duplicates
    // collapsed into representative i (empty for most vertices).
    std::vector<std::vector<std::string>> species_merged;
    std::vector<std::vector<std::string>> char_merged;

    // --- mutable state ------------------------------------------------------
    std::vector<Bitset> black;   // black[c] = species with a black edge to c
    std::vector<Bitset> red;     // red[c]   = species with a red edge to c
    std::vector<Bitset> sblack;  // sblack[s] = characters with a black edge to s
    std::vector<Bitset> sred;    // sred[s]   = characters with a red edge to s
    std::vector<CharState> state;
    Bitset present;  // species with >= 1 incident edge

    std::size_t n() const { return species_labels.size(); }
    std::size_t m() const { return char_labels.size(); }

    std::size_t char_degree(std::size_t c) const {
        return black[c].count() + red[c].count();
    }
    std::size_t species_degree(std::size_t s) const {
        return sblack[s].count() + sred[s].count();
    }
    bool is_edgeless() const {
        for (std::size_t c = 0; c < m(); ++c)
            if (black[c].any() || red[c].any()) return false;
        return true;
    }
    std::size_t species_index(std::string_view label) const {
        for (std::size_t s = 0; s < n(); ++s)
            if (species_labels[s] == label) return s;
        throw std::invalid_argument("unknown species label '" + std::string(label) + "'");
    }
    std::size_t char_index(std::string_view label) const {
        for (std::size_t c = 0; c < m(); ++c)
            if (char_labels[c] == label) return c;
        throw std::invalid_argument("unknown character label '" + std::string(label) + "'");
    }

    // --- edge primitives (both directions kept in tandem) -------------------
    void add_red_edge(std::size_t c, std::size_t s) {
        if (red[c].test(s)) throw StateError("red edge already present");
        red[c].set(s);
        sred[s].set(c);
    }
    void remove_black_edge(std::size_t c, std::size_t s) {
        if (!black[c].test(s)) throw StateError("black edge not present");
        black[c].reset(s);
        sblack[s].reset(c);
    }
    void remove_red_edge(std::size_t c, std::size_t s) {
        if (!red[c].test(s)) throw StateError("red edge not present");
        red[c].reset(s);
        sred[s].reset(c);
    }

    // --- connectivity --------------------------------------------------------
    // Species and characters reachable from the given seed over current edges
    // (black and red alike).  Isolated vertices are never part of any
    // component.
    struct Component {
        Bitset species;  // size n
        Bitset chars;    // size m
    };

    Component component_of_char(std::size_t c0) const {
        Component comp{Bitset(n()), Bitset(m())};
        if (char_degree(c0) == 0) {
            comp.chars.set(c0);  // degenerate: the vertex alone
            return comp;
        }
        std::vector<std::size_t> char_queue{c0};
        comp.chars.set(c0);
        std::vector<std::size_t> species_queue;
        while (!char_queue.empty() || !species_queue.empty()) {
            if (!char_queue.empty()) {
                std::size_t c = char_queue.back();
                char_queue.pop_back();
                Bitset nb = black[c] | red[c];
                for (std::size_t s = nb.find_first(); s != Bitset::npos;
                     s = nb.find_next(s)) {
                    if (!comp.species.test(s)) {
                        comp.species.set(s);
                        species_queue.push_back(s);
                    }
                }
            } else {
                std::size_t s = species_queue.back();
                species_queue.pop_back();
                Bitset nb = sblack[s] | sred[s];
                for (std::size_t c = nb.find_first(); c != Bitset::npos;
                     c = nb.find_next(c)) {
                    if (!comp.chars.test(c)) {
                        comp.chars.set(c);
                        char_queue.push_back(c);
                    }
                }
            }
        }
        return comp;
    }

    Component component_of_species(std::size_t s0) const {
        Component comp{Bitset(n()), Bitset(m())};
        Bitset nb = sblack[s0] | sred[s0];
        std::size_t c0 = nb.find_first();
        if (c0 == Bitset::npos) {
            comp.species.set(s0);
            return comp;
        }
        comp = component_of_char(c0);
        return comp;
    }

    // All components containing at least one edge (isolated vertices are
    // skipped), ordered by their smallest vertex where species precede
    // characters in the global numbering: species s has id s, character c has
    // id n + c.
    std::vector<Component> components() const {
        std::vector<Component> out;
        Bitset seen_species(n());
        Bitset seen_chars(m());
        for (std::size_t s = 0; s < n(); ++s) {
            if (seen_species.test(s) || species_degree(s) == 0) continue;
            Component comp = component_of_species(s);
            seen_species |= comp.species;
            seen_chars |= comp.chars;
            out.push_back(std::move(comp));
        }
        for (std::size_t c = 0; c < m(); ++c) {
            if (seen_chars.test(c) || char_degree(c) == 0) continue;
            Component comp = component_of_char(c);
            seen_species |= comp.species;
            seen_chars |= comp.chars;
            out.push_back(std::move(comp));
        }
        return out;
    }

    // --- snapshots ------------------------------------------------------------
    // Compact state fingerprint for memoization.  Black neighborhoods are
    // fully determined by the character states (an inactive character keeps
    // its original black edges; an active or isolated one has none), and
    // species presence is determined by the edges, so states + red sets
    // identify the graph state exactly.
    std::string state_key() const {
        std::string key;
        key.reserve(m() * (1 + (n() + 7) / 8));
        for (std::size_t c = 0; c < m(); ++c) {
            key.push_back(static_cast<char>('0' + static_cast<int>(state[c])));
            std::vector<Bitset::block_type> blocks(red[c].num_blocks());
            boost::to_block_range(red[c], blocks.begin());
            key.append(reinterpret_cast<const char*>(blocks.data()),
                       blocks.size() * sizeof(Bitset::block_type));
        }
        return key;
    }
};

// Cross-checks every structural invariant of a graph state; returns a
// description of the first violation, or nothing when the state is sound.
// Inactive characters carry only black edges, active only red, isolated none;
// presence mirrors positive degree; the two adjacency directions agree.
inline std::optional<std::string> consistency_violation(const RedBlackGraph& g) {
    for (std::size_t c = 0; c < g.m(); ++c) {
        switch (g.state[c]) {
            case CharState::Inactive:
                if (g.red[c].any()) return "inactive character with red edges";
                break;
            case CharState::Active:
                if (g.black[c].any()) return "active character with black edges";
                if (g.red[c].none()) return "active character with no edges";
                break;
            case CharState::Isolated:
                if (g.black[c].any() || g.red[c].any())
                    return "isolated character with edges";
                break;
        }
        for (std::size_t s = 0; s < g.n(); ++s) {
            if (g.black[c].test(s) != g.sblack[s].test(c))
                return "black adjacency directions disagree";
            if (g.red[c].test(s) != g.sred[s].test(c))
                return "red adjacency directions disagree";
        }
    }
    for (std::size_t s = 0; s < g.n(); ++s)
        if (g.present.test(s) != (g.species_degree(s) > 0))
            return "species presence does not match its degree";
    return std::nullopt;
}

// Builds the working graph from a matrix: every 1-cell becomes a black edge,
// duplicate rows/columns are merged (keeping the first occurrence), and
// vertices born without edges are marked isolated immediately.
inline RedBlackGraph build_graph(const BinaryMatrix& input) {
    // Merge duplicate rows.  Removing a duplicate row cannot create duplicate
    // columns (two distinct columns differ in some surviving row: if they
    // differed only in dropped rows, the dropped rows would not have been
    // duplicates), and vice versa, so one pass per side suffices.
    std::vector<std::size_t> keep_rows;
    std::vector<std::vector<std::string>> row_merged;
    for (std::size_t i = 0; i < input.n(); ++i) {
        bool dup = false;
        for (std::size_t k = 0; k < keep_rows.size(); ++k) {
            if (input.rows[keep_rows[k]] == input.rows[i]) {
                row_merged[k].push_back(input.species[i]);
                dup = true;
                break;
            }
        }
        if (!dup) {
            keep_rows.push_back(i);
            row_merged.emplace_back();
        }
    }

    // Column bitsets over the kept rows.
    std::vector<Bitset> cols(input.m(), Bitset(keep_rows.size()));
    for (std::size_t j = 0; j < input.m(); ++j)
        for (std::size_t i = 0; i < keep_rows.size(); ++i)
            if (input.rows[keep_rows[i]].test(j)) cols[j].set(i);

    std::vector<std::size_t> keep_cols;
    std::vector<std::vector<std::string>> col_merged;
    for (std::size_t j = 0; j < input.m(); ++j) {
        bool dup = false;
        for (std::size_t k = 0; k < keep_cols.size(); ++k) {
            if (cols[keep_cols[k]] == cols[j]) {
                col_merged[k].push_back(input.characters[j]);
                dup = true;
                break;
            }
        }
        if (!dup) {
            keep_cols.push_back(j);
            col_merged.emplace_back();
        }
    }

    RedBlackGraph g;
    for (std::size_t i : keep_rows) g.species_labels.push_back(input.species[i]);
    for (std::size_t j : keep_cols) g.char_labels.push_back(input.characters[j]);
    g.species_merged = std::move(row_merged);
    g.char_merged = std::move(col_merged);

    std::size_t n = g.n(), m = g.m();
    g.black.assign(m, Bitset(n));
    g.red.assign(m, Bitset(n));
    g.sblack.assign(n, Bitset(m));
    g.sred.assign(n, Bitset(m));
    g.state.assign(m, CharState::Inactive);
    g.present = Bitset(n);

    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t s = 0; s < n; ++s) {
            if (input.rows[keep_rows[s]].test(keep_cols[c])) {
                g.black[c].set(s);
                g.sblack[s].set(c);
            }
        }
    }
    for (std::size_t s = 0; s < n; ++s)
        if (g.sblack[s].any()) g.present.set(s);
    // A character born with no species has nothing to gain: it is finished
    // before it starts and never participates in the reduction.
    for (std::size_t c = 0; c < m; ++c)
        if (g.black[c].none()) g.state[c] = CharState::Isolated;
    return g;
}

// Structural report on a freshly built graph.  Maximality demands that no
// character's species set is a proper subset of another character's (equal
// sets have already been merged); recognition is only guaranteed sound on
// maximal inputs.
struct ValidationReport {
    bool is_maximal = true;
    // pairs (c_sub, c_super) with N(c_sub) properly contained in N(c_super)
    std::vector<std::pair<std::string, std::string>> containment_violations;
    bool is_connected = true;  // at most one component among edged vertices
    std::size_t component_count = 0;
    std::vector<std::vector<std::string>> merged_species_groups;  // kept label first
    std::vector<std::vector<std::string>> merged_char_groups;
};

inline ValidationReport validate(const RedBlackGraph& g) {
    ValidationReport rep;
    for (std::size_t a = 0; a < g.m(); ++a) {
        for (std::size_t b = 0; b < g.m(); ++b) {
            if (a == b) continue;
            if (g.black[a].any() && g.black[a].is_proper_subset_of(g.black[b])) {
                rep.is_maximal = false;
                rep.containment_violations.emplace_back(g.char_labels[a],
                                                        g.char_labels[b]);
            }
        }
    }
    rep.component_count = g.components().size();
    rep.is_connected = rep.component_count <= 1;
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (!g.species_merged[s].empty()) {
            std::vector<std::string> grp{g.species_labels[s]};
            grp.insert(grp.end(), g.species_merged[s].begin(), g.species_merged[s].end());
            rep.merged_species_groups.push_back(std::move(grp));
        }
    }
    for (std::size_t c = 0; c < g.m(); ++c) {
        if (!g.char_merged[c].empty()) {
            std::vector<std::string> grp{g.char_labels[c]};
            grp.insert(grp.end(), g.char_merged[c].begin(), g.char_merged[c].end());
            rep.merged_char_groups.push_back(std::move(grp));
        }
    }
    return rep;
}

// Extracts the induced subgraph on the given vertex masks, renumbering
// vertices in ascending order of their old indices.  `species_map[new]` and
// `char_map[new]` give the old indices.  Only edges with both endpoints
// inside the masks survive; states and presence flags are recomputed for the
// restricted edge set when `recompute_status` is set (used for the all-black
// auxiliary graphs of the recognizer), otherwise copied verbatim (used to
// split a disconnected input into components, where no edge crosses the cut).
struct Subgraph {
    RedBlackGraph g;
    std::vector<std::size_t> species_map;
    std::vector<std::size_t> char_map;
};

inline Subgraph induced_subgraph(const RedBlackGraph& g, const Bitset& species_mask,
                                 const Bitset& char_mask, bool recompute_status) {
    Subgraph out;
    for (std::size_t s = species_mask.find_first(); s != Bitset::npos;
         s = species_mask.find_next(s))
        out.species_map.push_back(s);
    for (std::size_t c = char_mask.find_first(); c != Bitset::npos;
         c = char_mask.find_next(c))
        out.char_map.push_back(c);

    RedBlackGraph& h = out.g;
    std::size_t n = out.species_map.size(), m = out.char_map.size();
    for (std::size_t s : out.species_map) {
        h.species_labels.push_back(g.species_labels[s]);
        h.species_merged.push_back(g.species_merged[s]);
    }
    for (std::size_t c : out.char_map) {
        h.char_labels.push_back(g.char_labels[c]);
        h.char_merged.push_back(g.char_merged[c]);
    }
    h.black.assign(m, Bitset(n));
    h.red.assign(m, Bitset(n));
    h.sblack.assign(n, Bitset(m));
    h.sred.assign(n, Bitset(m));
    h.state.assign(m, CharState::Inactive);
    h.present = Bitset(n);

    for (std::size_t cj = 0; cj < m; ++cj) {
        std::size_t c = out.char_map[cj];
        for (std::size_t sj = 0; sj < n; ++sj) {
            std::size_t s = out.species_map[sj];
            if (g.black[c].test(s)) {
                h.black[cj].set(sj);
                h.sblack[sj].set(cj);
            }
            if (g.red[c].test(s)) {
                h.red[cj].set(sj);
                h.sred[sj].set(cj);
            }
        }
    }
    if (recompute_status) {
        for (std::size_t cj = 0; cj < m; ++cj)
            h.state[cj] = (h.black[cj].none() && h.red[cj].none())
                              ? CharState::Isolated
                              : (h.red[cj].any() ? CharState::Active : CharState::Inactive);
        for (std::size_t sj = 0; sj < n; ++sj)
            if (h.sblack[sj].any() || h.sred[sj].any()) h.present.set(sj);
    } else {
        for (std::size_t cj = 0; cj < m; ++cj) h.state[cj] = g.state[out.char_map[cj]];
        for (std::size_t sj = 0; sj < n; ++sj)
            if (g.present.test(out.species_map[sj])) h.present.set(sj);
    }
    return out;
}

}  // namespace dollo

#endif  // DOLLO_GRAPH_HPP
