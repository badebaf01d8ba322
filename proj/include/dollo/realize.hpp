// Character realization: the single state-transition of the reduction.
//
// Realizing an inactive character c in its connected component D:
//   1. every present species of D not adjacent to c gains a red edge to c
//      (those species branched off before c was gained, so c must be lost
//      for them);
//   2. all black edges of c are removed -- c is now active.  A species whose
//      last edge vanishes here is isolated on the spot.  If c acquired no
//      red edges at all (it was adjacent to its whole component) it is
//      finished immediately, without any loss event.
//   3. sweep: while some active character is red-adjacent to every present
//      species of its component, the lowest-indexed such character is lost
//      (all its red edges removed, the character isolated); species that run
//      out of edges are isolated as part of that loss.  The scan restarts
//      from the lowest character index after every isolation.
//
// A reduction is an ordering of all inactive characters whose realization
// sequence reaches the edgeless graph without ever creating an induced red
// sigma-graph: a chordless red path s1 - c1 - s2 - c2 - s3.  Such a path is
// a hard obstruction -- c1 can only be lost once s3's red edge to c2 is gone,
// which needs c2 lost, which needs s1's red edge to c1 gone first -- so a
// state containing one can never reach the edgeless graph.

#ifndef DOLLO_REALIZE_HPP
#define DOLLO_REALIZE_HPP

#include "graph.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dollo {

// Everything that happened during one realization, in the order it happened.
// The loss-level detail (which loss isolated which species) drives tree
// construction; the flat lists mirror the serialized step records.
struct RealizationEvent {
    std::size_t realized = 0;
    std::vector<std::pair<std::size_t, std::size_t>> red_added;      // (char, species)
    std::vector<std::pair<std::size_t, std::size_t>> black_removed;  // (char, species)
    std::vector<std::size_t> chars_isolated;   // in sweep order (realized char first
                                               // if it finished without a loss)
    std::vector<std::size_t> species_isolated; // gain-phase first, then per loss

    std::vector<std::size_t> gain_isolated_species;       // isolated by step 2
    std::vector<std::vector<std::size_t>> loss_isolated_species;  // parallel to
                                                                  // chars_isolated
    bool realized_without_loss = false;  // c finished at its own gain
};

// Optional hook into the realization: fires just before the gain rewires the
// component and just before each forced loss removes a character's red edges,
// each time with the component the event is about to dissolve.  Tree
// construction rides on these moments; everyone else passes nullptr.
struct RealizeObserver {
    virtual void pre_gain(const RedBlackGraph& g, std::size_t c,
                          const RedBlackGraph::Component& comp) = 0;
    virtual void pre_loss(const RedBlackGraph& g, std::size_t c,
                          const RedBlackGraph::Component& comp) = 0;
    virtual ~RealizeObserver() = default;
};

namespace detail {

// Isolates active character c (removes all its red edges); species that lose
// their last edge are isolated and reported in ascending order.
inline std::vector<std::size_t> lose_character(RedBlackGraph& g, std::size_t c) {
    std::vector<std::size_t> isolated;
    Bitset targets = g.red[c];
    for (std::size_t s = targets.find_first(); s != Bitset::npos;
         s = targets.find_next(s)) {
        g.remove_red_edge(c, s);
        if (g.species_degree(s) == 0) {
            g.present.reset(s);
            isolated.push_back(s);
        }
    }
    g.state[c] = CharState::Isolated;
    return isolated;
}

// One full sweep: repeatedly lose the lowest-indexed active character that is
// red-adjacent to every present species of its own component, restarting the
// scan after each isolation.
inline void sweep(RedBlackGraph& g, RealizationEvent& ev, RealizeObserver* obs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < g.m(); ++c) {
            if (g.state[c] != CharState::Active) continue;
            RedBlackGraph::Component comp = g.component_of_char(c);
            if (comp.species.is_subset_of(g.red[c])) {
                if (obs) obs->pre_loss(g, c, comp);
                std::vector<std::size_t> isolated = lose_character(g, c);
                ev.chars_isolated.push_back(c);
                ev.species_isolated.insert(ev.species_isolated.end(), isolated.begin(),
                                           isolated.end());
                ev.loss_isolated_species.push_back(std::move(isolated));
                changed = true;
                break;
            }
        }
    }
}

}  // namespace detail

// Realizes inactive character c, mutating g and reporting every consequence.
inline RealizationEvent realize_character(RedBlackGraph& g, std::size_t c,
                                          RealizeObserver* obs = nullptr) {
    if (c >= g.m()) throw StateError("character index out of range");
    if (g.state[c] != CharState::Inactive)
        throw StateError("character '" + g.char_labels[c] + "' is not inactive");

    RealizationEvent ev;
    ev.realized = c;

    // 1. red edges to the non-adjacent present species of c's component
    RedBlackGraph::Component comp = g.component_of_char(c);
    if (obs) obs->pre_gain(g, c, comp);
    Bitset red_targets = comp.species - g.black[c];
    for (std::size_t s = red_targets.find_first(); s != Bitset::npos;
         s = red_targets.find_next(s)) {
        g.add_red_edge(c, s);
        ev.red_added.emplace_back(c, s);
    }

    // 2. drop the black edges; c is active (or already finished)
    Bitset gained = g.black[c];
    for (std::size_t s = gained.find_first(); s != Bitset::npos;
         s = gained.find_next(s)) {
        g.remove_black_edge(c, s);
        if (g.species_degree(s) == 0) {
            g.present.reset(s);
            ev.species_isolated.push_back(s);
            ev.gain_isolated_species.push_back(s);
        }
        ev.black_removed.emplace_back(c, s);
    }
    if (g.red[c].none()) {
        g.state[c] = CharState::Isolated;
        ev.realized_without_loss = true;
        ev.chars_isolated.push_back(c);
        ev.loss_isolated_species.emplace_back();  // no loss: nothing attributed
    } else {
        g.state[c] = CharState::Active;
    }

    // 3. cascade of forced losses
    detail::sweep(g, ev, obs);
    return ev;
}

// A chordless red path s1 - c1 - s2 - c2 - s3; see the header comment.
struct RedSigmaWitness {
    std::size_t s1, c1, s2, c2, s3;
};

// Finds the lexicographically least red sigma-graph (by c1, then c2, then the
// species choices), or nothing if the state is sigma-free.  The path is
// direction-symmetric, so c1 < c2 loses no witnesses.
inline std::optional<RedSigmaWitness> find_red_sigma(const RedBlackGraph& g) {
    for (std::size_t c1 = 0; c1 < g.m(); ++c1) {
        if (g.red[c1].none()) continue;
        for (std::size_t c2 = c1 + 1; c2 < g.m(); ++c2) {
            if (g.red[c2].none()) continue;
            Bitset shared = g.red[c1] & g.red[c2];
            if (shared.none()) continue;
            Bitset only1 = g.red[c1] - g.red[c2];
            if (only1.none()) continue;
            Bitset only2 = g.red[c2] - g.red[c1];
            if (only2.none()) continue;
            return RedSigmaWitness{only1.find_first(), c1, shared.find_first(), c2,
                                   only2.find_first()};
        }
    }
    return std::nullopt;
}

// Result of replaying a realization sequence.
struct ApplyResult {
    std::vector<RealizationEvent> events;
    // Set when sigma-checking is on and a step produced a red sigma-graph:
    // index into `events` of the offending step, plus the witness.
    std::optional<std::size_t> sigma_step;
    std::optional<RedSigmaWitness> sigma;
};

// Realizes the characters of `order` in sequence.  With `check_sigma`, stops
// right after the first step whose resulting state contains a red
// sigma-graph (that step's event is still included).
inline ApplyResult apply_sequence(RedBlackGraph& g,
                                  const std::vector<std::size_t>& order,
                                  bool check_sigma = true) {
    ApplyResult res;
    for (std::size_t c : order) {
        res.events.push_back(realize_character(g, c));
        if (check_sigma) {
            if (std::optional<RedSigmaWitness> w = find_red_sigma(g)) {
                res.sigma_step = res.events.size() - 1;
                res.sigma = w;
                return res;
            }
        }
    }
    return res;
}

// Outcome of checking a claimed reduction against a starting state.
struct VerificationResult {
    bool ok = false;
    std::string reason;                    // empty when ok
    std::optional<std::size_t> failed_step;
    std::optional<RedSigmaWitness> sigma;
};

// Checks that `order` is a genuine reduction of g: a permutation of g's
// inactive characters whose replay stays sigma-free and ends edgeless.
// g itself is not modified.  An order that is not even a candidate (wrong
// length, repeats, or characters that are not inactive) is an argument error,
// not a verification failure.
inline VerificationResult verify_reduction(const RedBlackGraph& g,
                                           const std::vector<std::size_t>& order) {
    VerificationResult res;
    std::size_t inactive = 0;
    for (std::size_t c = 0; c < g.m(); ++c)
        if (g.state[c] == CharState::Inactive) ++inactive;
    if (order.size() != inactive)
        throw std::invalid_argument(
            "verify_reduction: order lists " + std::to_string(order.size())
            + " characters, expected " + std::to_string(inactive));
    std::vector<bool> seen(g.m(), false);
    for (std::size_t c : order) {
        if (c >= g.m() || g.state[c] != CharState::Inactive)
            throw std::invalid_argument(
                "verify_reduction: order contains a character that is not inactive");
        if (seen[c])
            throw std::invalid_argument("verify_reduction: order realizes '"
                                        + g.char_labels[c] + "' twice");
        seen[c] = true;
    }

    RedBlackGraph work = g;
    ApplyResult replay = apply_sequence(work, order, /*check_sigma=*/true);
    if (replay.sigma_step) {
        res.failed_step = replay.sigma_step;
        res.sigma = replay.sigma;
        res.reason = "realizing '" + g.char_labels[order[*replay.sigma_step]]
                     + "' (step " + std::to_string(*replay.sigma_step)
                     + ") creates a red sigma-graph";
        return res;
    }
    if (!work.is_edgeless()) {
        res.reason = "replay finished but the graph still has edges";
        return res;
    }
    res.ok = true;
    return res;
}

}  // namespace dollo

#endif  // DOLLO_REALIZE_HPP
