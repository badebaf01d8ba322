// The polynomial-time recognizer: decide whether a maximal red-black graph
// admits a reduction, returning either a certified character ordering or a
// compact, independently checkable refutation.
//
// Each iteration inspects the current partitions and realizes provably safe
// characters:
//   (a) no intersecting and no universal characters: every contained
//       character is safe -- realize all of C_C in ascending order;
//   (b) intersecting characters exist: the chains pi_I and pi_U must hold
//       (their failure refutes the instance) and the maximal element of pi_U
//       is safe -- realize it and re-analyze;
//   (c) only universal characters remain beside active ones: the instance is
//       reducible iff the all-black subgraph induced by S_B and C_U is, so
//       the analysis restarts there while realizations execute on the full
//       graph;
//   (d) no active characters (in particular the initial state): a reduction
//       must start by dissolving a minimum-degree species whose characters
//       avoid all induced-P7 centers; branch over those candidates.
// Cases (c) and (d) share their machinery: both consult the candidate start
// species of an all-black graph (the full graph is its own induced subgraph
// when nothing is active).
//
// Refutations come in three kinds, each replayable from the input matrix:
// a red sigma-graph created by a safe realization, an empty candidate start
// set, or a containment-chain violation.

#ifndef DOLLO_RECOGNIZE_HPP
#define DOLLO_RECOGNIZE_HPP

#include "partitions.hpp"
#include "realize.hpp"

#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dollo {

// Raised by find_reduction when the input graph is not maximal.
struct ValidationError : std::runtime_error {
    ValidationReport report;
    ValidationError(std::string msg, ValidationReport rep)
        : std::runtime_error(std::move(msg)), report(std::move(rep)) {}
};

enum class RefutationKind { RedSigma, EmptyCandidates, NoChain };

struct Refutation {
    RefutationKind kind = RefutationKind::RedSigma;
    // Characters realized before the obstruction was hit, in order.  For
    // RedSigma the last entry is the realization that created the witness
    // (step = prefix length - 1); for the other kinds the obstruction is a
    // property of the state after the whole prefix (step = prefix length).
    std::vector<std::size_t> prefix;
    std::size_t step = 0;
    std::optional<RedSigmaWitness> sigma;                         // RedSigma
    std::optional<std::pair<std::size_t, std::size_t>> chain_pair;  // NoChain
    bool chain_in_pi_u = false;  // NoChain: violation in pi_U (else pi_I)
};

// One recognizer decision: the partitions it saw and what it chose to do.
struct TraceStep {
    std::size_t step = 0;             // decision index within the outcome
    std::size_t realized_before = 0;  // characters realized before this decision
    Partitions parts;
    std::vector<std::size_t> s7m;      // cases (c)/(d): candidate start species
    std::optional<std::size_t> c_m;    // case (b)
    std::vector<std::size_t> pi_U;     // case (b)
    std::vector<std::size_t> realized; // characters this decision realized
    char case_tag = '?';               // 'a'..'d'
};

struct RecognitionOutcome {
    bool reducible = false;
    std::vector<std::size_t> reduction;     // full ordering when reducible
    std::vector<RealizationEvent> events;   // aligned with `reduction`
    std::optional<Refutation> refutation;   // set when not reducible
    std::vector<TraceStep> trace;
    std::vector<std::size_t> branch_log;    // start species attempted, in order
    std::size_t initial_candidates = 0;     // |S_7^m| at the first branch point
};

namespace detail {

struct Recognizer {
    std::vector<std::size_t> branch_log;
    std::size_t initial_candidates = 0;
    bool initial_branch_seen = false;
    std::optional<Refutation> refutation;   // first failure in search order
    std::vector<TraceStep> failure_trace;

    struct State {
        RedBlackGraph g;
        std::vector<std::size_t> order;
        std::vector<RealizationEvent> events;
        std::vector<TraceStep> trace;
    };

    void record_failure(Refutation r, const State& st) {
        if (!refutation) {
            refutation = std::move(r);
            failure_trace = st.trace;
        }
    }

    // Realizes c, records the event, and refutes on a fresh red sigma-graph.
    bool step_realize(State& st, std::size_t c) {
        st.events.push_back(realize_character(st.g, c));
        st.order.push_back(c);
        if (std::optional<RedSigmaWitness> w = find_red_sigma(st.g)) {
            Refutation r;
            r.kind = RefutationKind::RedSigma;
            r.prefix = st.order;
            r.step = st.order.size() - 1;
            r.sigma = w;
            record_failure(std::move(r), st);
            return false;
        }
        return true;
    }

    bool solve(State& st) {
        while (true) {
            if (st.g.is_edgeless()) return true;

            bool any_inactive = false;
            for (std::size_t c = 0; c < st.g.m(); ++c)
                if (st.g.state[c] == CharState::Inactive) {
                    any_inactive = true;
                    break;
                }
            if (!any_inactive) {
                // Every character realized yet edges remain: active characters
                // that never became red-universal.  A red sigma-graph amongst
                // them would have been caught right after the realization that
                // created it, so reaching this point is an implementation bug.
                throw std::logic_error(
                    "recognizer: stuck state with no inactive characters and no "
                    "red sigma-graph");
            }

            Partitions p = compute_partitions(st.g);
            TraceStep ts;
            ts.step = st.trace.size();
            ts.realized_before = st.order.size();

            if (p.C_I.any()) {
                // --- case (b): follow the containment chains ---------------
                ts.case_tag = 'b';
                ContainmentOrder pi_I = order_pi_I(st.g, p);
                if (!pi_I.is_chain) {
                    ts.parts = p;
                    st.trace.push_back(std::move(ts));
                    Refutation r;
                    r.kind = RefutationKind::NoChain;
                    r.prefix = st.order;
                    r.step = st.order.size();
                    r.chain_pair = pi_I.bad_pair;
                    r.chain_in_pi_u = false;
                    record_failure(std::move(r), st);
                    return false;
                }
                derive_restriction(st.g, p, pi_I);
                ContainmentOrder pi_U = order_pi_U(st.g, p);
                ts.parts = p;
                if (!pi_U.is_chain) {
                    st.trace.push_back(std::move(ts));
                    Refutation r;
                    r.kind = RefutationKind::NoChain;
                    r.prefix = st.order;
                    r.step = st.order.size();
                    r.chain_pair = pi_U.bad_pair;
                    r.chain_in_pi_u = true;
                    record_failure(std::move(r), st);
                    return false;
                }
                ts.c_m = p.c_m;
                ts.pi_U = pi_U.order;
                std::size_t c = pi_U.order.front();
                ts.realized = {c};
                st.trace.push_back(std::move(ts));
                if (!step_realize(st, c)) return false;
                continue;
            }

            ts.parts = p;
            if (p.C_U.none()) {
                // --- case (a): every contained character is safe -----------
                ts.case_tag = 'a';
                for (std::size_t c = p.C_C.find_first(); c != Bitset::npos;
                     c = p.C_C.find_next(c))
                    ts.realized.push_back(c);
                std::vector<std::size_t> batch = ts.realized;
                st.trace.push_back(std::move(ts));
                for (std::size_t c : batch)
                    if (!step_realize(st, c)) return false;
                continue;
            }

            // --- cases (c)/(d): restart from an all-black subgraph ---------
            ts.case_tag = p.C_R.any() ? 'c' : 'd';
            Subgraph h = induced_subgraph(st.g, p.S_B, p.C_U, /*recompute_status=*/true);
            std::vector<std::size_t> cands = candidate_start_species(h.g);
            for (std::size_t s : cands) ts.s7m.push_back(h.species_map[s]);
            if (!initial_branch_seen) {
                initial_branch_seen = true;
                initial_candidates = cands.size();
            }
            if (cands.empty()) {
                st.trace.push_back(std::move(ts));
                Refutation r;
                r.kind = RefutationKind::EmptyCandidates;
                r.prefix = st.order;
                r.step = st.order.size();
                record_failure(std::move(r), st);
                return false;
            }

            // Branch over the candidates, skipping ones whose character set
            // was already attempted (distinct species can look identical
            // inside the subgraph).  First success wins; the search is
            // depth-first in ascending species order.
            std::set<std::vector<std::size_t>> tried;
            for (std::size_t s0 : cands) {
                std::vector<std::size_t> batch;
                for (std::size_t hc = h.g.sblack[s0].find_first(); hc != Bitset::npos;
                     hc = h.g.sblack[s0].find_next(hc))
                    batch.push_back(h.char_map[hc]);
                if (!tried.insert(batch).second) continue;
                branch_log.push_back(h.species_map[s0]);

                State branch = st;
                TraceStep bts = ts;
                bts.realized = batch;
                branch.trace.push_back(std::move(bts));
                bool alive = true;
                for (std::size_t c : batch)
                    if (!step_realize(branch, c)) {
                        alive = false;
                        break;
                    }
                if (alive && solve(branch)) {
                    st = std::move(branch);
                    return true;
                }
            }
            return false;  // refutation already recorded by the first failure
        }
    }
};

// Rebuilds index-space data from a component subgraph into the global graph.
inline Bitset remap_bits(const Bitset& bits, const std::vector<std::size_t>& map,
                         std::size_t global_size) {
    Bitset out(global_size);
    for (std::size_t i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i))
        out.set(map[i]);
    return out;
}

inline std::vector<std::size_t> remap_ids(const std::vector<std::size_t>& ids,
                                          const std::vector<std::size_t>& map) {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (std::size_t i : ids) out.push_back(map[i]);
    return out;
}

inline void remap_event(RealizationEvent& ev, const std::vector<std::size_t>& smap,
                        const std::vector<std::size_t>& cmap) {
    ev.realized = cmap[ev.realized];
    for (auto& [c, s] : ev.red_added) c = cmap[c], s = smap[s];
    for (auto& [c, s] : ev.black_removed) c = cmap[c], s = smap[s];
    ev.chars_isolated = remap_ids(ev.chars_isolated, cmap);
    ev.species_isolated = remap_ids(ev.species_isolated, smap);
    ev.gain_isolated_species = remap_ids(ev.gain_isolated_species, smap);
    for (auto& v : ev.loss_isolated_species) v = remap_ids(v, smap);
}

inline void remap_trace_step(TraceStep& ts, const std::vector<std::size_t>& smap,
                             const std::vector<std::size_t>& cmap, std::size_t n,
                             std::size_t m) {
    Partitions& p = ts.parts;
    p.S_B = remap_bits(p.S_B, smap, n);
    p.S_R = remap_bits(p.S_R, smap, n);
    p.C_R = remap_bits(p.C_R, cmap, m);
    p.C_C = remap_bits(p.C_C, cmap, m);
    p.C_I = remap_bits(p.C_I, cmap, m);
    p.C_U = remap_bits(p.C_U, cmap, m);
    p.S_B_m = remap_bits(p.S_B_m, smap, n);
    p.C_B_m = remap_bits(p.C_B_m, cmap, m);
    if (p.c_m) p.c_m = cmap[*p.c_m];
    if (ts.c_m) ts.c_m = cmap[*ts.c_m];
    ts.s7m = remap_ids(ts.s7m, smap);
    ts.pi_U = remap_ids(ts.pi_U, cmap);
    ts.realized = remap_ids(ts.realized, cmap);
}

inline void remap_refutation(Refutation& r, const std::vector<std::size_t>& smap,
                             const std::vector<std::size_t>& cmap) {
    r.prefix = remap_ids(r.prefix, cmap);
    if (r.sigma)
        r.sigma = RedSigmaWitness{smap[r.sigma->s1], cmap[r.sigma->c1],
                                  smap[r.sigma->s2], cmap[r.sigma->c2],
                                  smap[r.sigma->s3]};
    if (r.chain_pair)
        r.chain_pair = std::make_pair(cmap[r.chain_pair->first],
                                      cmap[r.chain_pair->second]);
}

// Runs the recognizer on one connected component (given as its own graph)
// and enforces the accepted-run guards.
inline RecognitionOutcome recognize_component(const RedBlackGraph& g) {
    Recognizer rec;
    Recognizer::State st{g, {}, {}, {}};
    RecognitionOutcome out;
    if (rec.solve(st)) {
        out.reducible = true;
        out.reduction = std::move(st.order);
        out.events = std::move(st.events);
        out.trace = std::move(st.trace);
        // With several candidate start species, acceptance implies at most
        // one universal character in every later state; a violation means
        // the implementation diverged from the theory, not a bad input.
        if (rec.initial_candidates > 1)
            for (const TraceStep& ts : out.trace)
                if (ts.realized_before >= 1 && ts.parts.C_U.count() > 1)
                    throw std::logic_error(
                        "recognizer: multiple universal characters after a "
                        "multi-candidate start branch");
    } else {
        out.reducible = false;
        out.refutation = std::move(rec.refutation);
        out.trace = std::move(rec.failure_trace);
        if (!out.refutation)
            throw std::logic_error("recognizer: failed without a refutation");
    }
    out.branch_log = std::move(rec.branch_log);
    out.initial_candidates = rec.initial_candidates;
    return out;
}

}  // namespace detail

// Decides reducibility of the graph built from M.  Rejects non-maximal
// inputs (recognition is only proven correct on maximal graphs).  Connected
// components are solved independently; their reductions concatenate in
// component order.  An accepted outcome is re-verified by replay before it
// is returned.
inline RecognitionOutcome find_reduction(const BinaryMatrix& input) {
    RedBlackGraph g = build_graph(input);
    ValidationReport rep = validate(g);
    if (!rep.is_maximal) {
        std::string msg = "input is not maximal:";
        for (const auto& [sub, sup] : rep.containment_violations)
            msg += " N(" + sub + ") is contained in N(" + sup + ");";
        throw ValidationError(std::move(msg), std::move(rep));
    }

    std::vector<RedBlackGraph::Component> comps = g.components();
    RecognitionOutcome out;
    if (comps.size() <= 1) {
        out = detail::recognize_component(g);
    } else {
        out.reducible = true;
        for (const RedBlackGraph::Component& comp : comps) {
            Subgraph sub = induced_subgraph(g, comp.species, comp.chars,
                                            /*recompute_status=*/false);
            RecognitionOutcome part = detail::recognize_component(sub.g);
            for (RealizationEvent& ev : part.events)
                detail::remap_event(ev, sub.species_map, sub.char_map);
            for (TraceStep& ts : part.trace) {
                detail::remap_trace_step(ts, sub.species_map, sub.char_map, g.n(),
                                         g.m());
                ts.step = out.trace.size();
                out.trace.push_back(std::move(ts));
            }
            for (std::size_t s : part.branch_log)
                out.branch_log.push_back(sub.species_map[s]);
            if (out.reducible && out.initial_candidates == 0)
                out.initial_candidates = part.initial_candidates;
            if (!part.reducible) {
                out.reducible = false;
                detail::remap_refutation(*part.refutation, sub.species_map,
                                         sub.char_map);
                out.refutation = std::move(part.refutation);
                out.reduction.clear();
                out.events.clear();
                break;
            }
            std::vector<std::size_t> order =
                detail::remap_ids(part.reduction, sub.char_map);
            out.reduction.insert(out.reduction.end(), order.begin(), order.end());
            out.events.insert(out.events.end(),
                              std::make_move_iterator(part.events.begin()),
                              std::make_move_iterator(part.events.end()));
        }
    }

    if (out.reducible) {
        VerificationResult check = verify_reduction(g, out.reduction);
        if (!check.ok)
            throw std::logic_error("recognizer: accepted ordering failed replay: "
                                   + check.reason);
    }
    return out;
}

// Independently checks a refutation against the input matrix by replaying
// its prefix and confirming the claimed obstruction in the resulting state.
struct RefutationCheck {
    bool ok = false;
    std::string reason;
};

inline RefutationCheck check_refutation(const BinaryMatrix& input,
                                        const Refutation& r) {
    RefutationCheck res;
    RedBlackGraph g = build_graph(input);
    for (std::size_t c : r.prefix) {
        if (c >= g.m() || g.state[c] != CharState::Inactive) {
            res.reason = "prefix realizes a character that is not inactive";
            return res;
        }
        realize_character(g, c);
    }
    switch (r.kind) {
        case RefutationKind::RedSigma: {
            if (!r.sigma) {
                res.reason = "red-sigma refutation carries no witness";
                return res;
            }
            const RedSigmaWitness& w = *r.sigma;
            if (r.step + 1 != r.prefix.size()) {
                res.reason = "red-sigma step index does not point at the last "
                             "prefix element";
                return res;
            }
            bool present = g.red[w.c1].test(w.s1) && g.red[w.c1].test(w.s2)
                           && g.red[w.c2].test(w.s2) && g.red[w.c2].test(w.s3);
            bool absent = !g.red[w.c2].test(w.s1) && !g.red[w.c1].test(w.s3)
                          && !g.black[w.c2].test(w.s1) && !g.black[w.c1].test(w.s3);
            bool distinct = w.s1 != w.s2 && w.s2 != w.s3 && w.s1 != w.s3
                            && w.c1 != w.c2;
            if (!present || !absent || !distinct) {
                res.reason = "claimed red sigma-graph is not induced in the "
                             "replayed state";
                return res;
            }
            break;
        }
        case RefutationKind::EmptyCandidates: {
            // The obstruction is a property of one connected component of the
            // replayed state: some component sits in the branching case with
            // no legal start species.  Non-reducibility of a component
            // refutes the whole instance.
            bool found = false;
            for (const RedBlackGraph::Component& comp : g.components()) {
                Subgraph sub = induced_subgraph(g, comp.species, comp.chars,
                                                /*recompute_status=*/false);
                Partitions p = compute_partitions(sub.g);
                if (p.C_I.any() || p.C_U.none()) continue;
                Subgraph h = induced_subgraph(sub.g, p.S_B, p.C_U, true);
                if (candidate_start_species(h.g).empty()) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                res.reason = "no component of the replayed state is in the "
                             "branching case with empty candidates";
                return res;
            }
            break;
        }
        case RefutationKind::NoChain: {
            if (!r.chain_pair) {
                res.reason = "chain refutation carries no violating pair";
                return res;
            }
            // Locate the component holding the pair; the chains are defined
            // per component.
            RedBlackGraph::Component comp = g.component_of_char(r.chain_pair->first);
            if (!comp.chars.test(r.chain_pair->second)) {
                res.reason = "chain pair spans two components";
                return res;
            }
            Subgraph sub = induced_subgraph(g, comp.species, comp.chars,
                                            /*recompute_status=*/false);
            std::size_t a = sub.g.m(), b = sub.g.m();
            for (std::size_t c = 0; c < sub.g.m(); ++c) {
                if (sub.char_map[c] == r.chain_pair->first) a = c;
                if (sub.char_map[c] == r.chain_pair->second) b = c;
            }
            Partitions p = compute_partitions(sub.g);
            Bitset restriction;
            if (!r.chain_in_pi_u) {
                restriction = p.S_B;
                if (!p.C_I.test(a) || !p.C_I.test(b)) {
                    res.reason = "chain pair is not inside C_I";
                    return res;
                }
            } else {
                ContainmentOrder pi_I = order_pi_I(sub.g, p);
                if (!pi_I.is_chain) {
                    res.reason = "pi_I already fails; pi_U violation not derivable";
                    return res;
                }
                derive_restriction(sub.g, p, pi_I);
                restriction = p.S_B_m;
                if (!p.C_B_m.test(a) || !p.C_B_m.test(b)) {
                    res.reason = "chain pair is not inside C_B_m";
                    return res;
                }
            }
            Bitset na = sub.g.black[a] & restriction;
            Bitset nb = sub.g.black[b] & restriction;
            if (na.is_subset_of(nb) || nb.is_subset_of(na)) {
                res.reason = "claimed pair is comparable; chain not violated";
                return res;
            }
            break;
        }
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------
// Human-readable report: the execution trace in the layout of the worked
// example's table, followed by the verdict.  Consecutive decisions that walk
// down one pi_U chain collapse into a single row (the chain's head row).

namespace detail {

inline std::string label_set(const RedBlackGraph& g, const Bitset& bits,
                             bool species) {
    if (bits.none()) return "-";
    std::string out = "{";
    for (std::size_t i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) {
        if (out.size() > 1) out += ",";
        out += species ? g.species_labels[i] : g.char_labels[i];
    }
    return out + "}";
}

inline std::string label_list(const RedBlackGraph& g,
                              const std::vector<std::size_t>& ids, bool species,
                              const char* open = "", const char* close = "") {
    if (ids.empty()) return "-";
    std::string out = open;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ",";
        out += species ? g.species_labels[ids[i]] : g.char_labels[ids[i]];
    }
    return out + close;
}

}  // namespace detail

inline std::string explain(const BinaryMatrix& input, const RecognitionOutcome& out) {
    RedBlackGraph g = build_graph(input);
    std::ostringstream os;
    if (out.trace.empty() && out.reducible && out.reduction.empty()) {
        os << "nothing to do: the graph has no characters to realize\n";
        if (out.reducible) os << "verdict: reducible (empty reduction)\n";
        return os.str();
    }

    struct Row {
        const TraceStep* head;
        std::vector<std::size_t> realized;
    };
    std::vector<Row> rows;
    std::vector<std::size_t> pending;
    for (const TraceStep& ts : out.trace) {
        bool continues = !rows.empty() && !pending.empty()
                         && ts.realized.size() <= pending.size()
                         && std::equal(ts.realized.begin(), ts.realized.end(),
                                       pending.begin());
        if (continues) {
            rows.back().realized.insert(rows.back().realized.end(),
                                        ts.realized.begin(), ts.realized.end());
            pending.erase(pending.begin(),
                          pending.begin()
                              + static_cast<std::ptrdiff_t>(ts.realized.size()));
        } else {
            rows.push_back({&ts, ts.realized});
            pending.clear();
            if (!ts.pi_U.empty() && ts.realized.size() <= ts.pi_U.size()
                && std::equal(ts.realized.begin(), ts.realized.end(),
                              ts.pi_U.begin()))
                pending.assign(ts.pi_U.begin() + static_cast<std::ptrdiff_t>(
                                                     ts.realized.size()),
                               ts.pi_U.end());
        }
    }

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Iteration", "Partial reduction", "S_7^m", "C_I", "C_U", "C_C",
                     "c_m", "pi_U", "Realization"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const TraceStep& ts = *rows[i].head;
        cells.push_back(
            {std::to_string(i), "G^" + std::to_string(ts.realized_before),
             ts.s7m.empty() ? "-" : detail::label_list(g, ts.s7m, true, "{", "}"),
             detail::label_set(g, ts.parts.C_I, false),
             detail::label_set(g, ts.parts.C_U, false),
             detail::label_set(g, ts.parts.C_C, false),
             ts.c_m ? g.char_labels[*ts.c_m] : "-",
             detail::label_list(g, ts.pi_U, false, "<", ">"),
             detail::label_list(g, rows[i].realized, false)});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            os << row[j] << std::string(width[j] - row[j].size(), ' ');
            os << (j + 1 < row.size() ? "  " : "");
        }
        os << "\n";
    }

    if (!out.branch_log.empty())
        os << "start species attempted: "
           << detail::label_list(g, out.branch_log, true) << "\n";
    if (out.reducible) {
        os << "verdict: reducible\n";
        os << "reduction: " << detail::label_list(g, out.reduction, false) << "\n";
    } else {
        os << "verdict: not reducible\n";
        const Refutation& r = *out.refutation;
        switch (r.kind) {
            case RefutationKind::RedSigma:
                os << "refutation: realizing "
                   << detail::label_list(g, r.prefix, false)
                   << " creates the red sigma-graph ("
                   << g.species_labels[r.sigma->s1] << ","
                   << g.char_labels[r.sigma->c1] << ","
                   << g.species_labels[r.sigma->s2] << ","
                   << g.char_labels[r.sigma->c2] << ","
                   << g.species_labels[r.sigma->s3] << ")\n";
                break;
            case RefutationKind::EmptyCandidates:
                os << "refutation: after realizing "
                   << detail::label_list(g, r.prefix, false)
                   << " no minimum-degree species avoids the induced-P7 centers\n";
                break;
            case RefutationKind::NoChain:
                os << "refutation: after realizing "
                   << detail::label_list(g, r.prefix, false) << " characters "
                   << g.char_labels[r.chain_pair->first] << " and "
                   << g.char_labels[r.chain_pair->second]
                   << " have incomparable neighborhoods in "
                   << (r.chain_in_pi_u ? "pi_U" : "pi_I") << "\n";
                break;
        }
    }
    return os.str();
}

}  // namespace dollo

#endif  // DOLLO_RECOGNIZE_HPP
