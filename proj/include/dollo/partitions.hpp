// Structural analysis of a red-black graph state: the species and character
// partitions, the containment orderings that pick the next safe character,
// induced-P7 centers, and the legal starting species of a reduction.
//
// Species split into S_B (touched only by black edges) and S_R (at least one
// red edge).  Inactive characters split against S_R:
//   C_C  -- contained:    every neighbor is in S_R
//   C_U  -- universal:    adjacent to all of S_R, with a neighbor in S_B
//   C_I  -- intersecting: everything else (a neighbor in S_B and a
//                         non-neighbor in S_R)
// Before any realization S_R is empty; every character is then vacuously
// universal, which keeps the recognizer's case analysis total.
//
// When C_I is nonempty its members, ordered by shrinking S_B-neighborhood,
// must form a containment chain (pi_I); its last element c_m induces the
// restriction set S_B^m = S_B minus N(c_m), over which the extended family
// C_B^m = C_I plus the universal characters with a neighbor in S_B^m must
// again form a chain (pi_U).  A reducible graph always admits both chains,
// so a violation is hard evidence of non-reducibility.

#ifndef DOLLO_PARTITIONS_HPP
#define DOLLO_PARTITIONS_HPP

#include "graph.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dollo {

struct Partitions {
    Bitset S_B, S_R;            // over species (disjoint, union = present)
    Bitset C_R;                 // active characters
    Bitset C_C, C_I, C_U;       // inactive characters, pairwise disjoint
    std::optional<std::size_t> c_m;  // last element of pi_I, when C_I != {} and
                                     // pi_I is a chain
    Bitset S_B_m;               // S_B minus N(c_m); meaningful iff c_m set
    Bitset C_B_m;               // C_I + universals with a neighbor in S_B_m
};

inline Partitions compute_partitions(const RedBlackGraph& g) {
    Partitions p;
    p.S_B = Bitset(g.n());
    p.S_R = Bitset(g.n());
    p.C_R = Bitset(g.m());
    p.C_C = Bitset(g.m());
    p.C_I = Bitset(g.m());
    p.C_U = Bitset(g.m());
    p.S_B_m = Bitset(g.n());
    p.C_B_m = Bitset(g.m());

    for (std::size_t s = 0; s < g.n(); ++s) {
        if (!g.present.test(s)) continue;
        if (g.sred[s].any())
            p.S_R.set(s);
        else
            p.S_B.set(s);
    }
    for (std::size_t c = 0; c < g.m(); ++c) {
        if (g.state[c] == CharState::Active) {
            p.C_R.set(c);
        } else if (g.state[c] == CharState::Inactive) {
            const Bitset& nb = g.black[c];  // inactive: black edges only
            if (nb.is_subset_of(p.S_R))
                p.C_C.set(c);
            else if (p.S_R.is_subset_of(nb))
                p.C_U.set(c);  // universal over S_R; the non-S_R neighbor is in S_B
            else
                p.C_I.set(c);
        }
    }
    return p;
}

// A containment ordering: characters sorted by shrinking restricted
// neighborhood.  When two consecutive entries are incomparable as sets the
// family is not laminar -- no chain exists -- and `bad_pair` names the
// violation (earlier, later).
struct ContainmentOrder {
    std::vector<std::size_t> order;
    bool is_chain = true;
    std::pair<std::size_t, std::size_t> bad_pair{0, 0};
};

namespace detail {

// Sorts `chars` by descending |N(c) & restriction| under `tie_less` for equal
// sizes, then verifies the consecutive containment N(later) & restriction
// subset-of N(earlier) & restriction.
template <typename TieLess>
ContainmentOrder containment_order(const RedBlackGraph& g, const Bitset& members,
                                   const Bitset& restriction, TieLess tie_less) {
    ContainmentOrder out;
    for (std::size_t c = members.find_first(); c != Bitset::npos;
         c = members.find_next(c))
        out.order.push_back(c);
    std::vector<std::size_t> size(g.m(), 0);
    for (std::size_t c : out.order) size[c] = (g.black[c] & restriction).count();
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t a, std::size_t b) {
                         if (size[a] != size[b]) return size[a] > size[b];
                         return tie_less(a, b);
                     });
    for (std::size_t i = 0; i + 1 < out.order.size(); ++i) {
        Bitset later = g.black[out.order[i + 1]] & restriction;
        Bitset earlier = g.black[out.order[i]] & restriction;
        if (!later.is_subset_of(earlier)) {
            out.is_chain = false;
            out.bad_pair = {out.order[i], out.order[i + 1]};
            return out;
        }
    }
    return out;
}

}  // namespace detail

// pi_I: the intersecting characters ordered by shrinking S_B-neighborhood;
// ties (equal restricted neighborhoods) by ascending index.
inline ContainmentOrder order_pi_I(const RedBlackGraph& g, const Partitions& p) {
    return detail::containment_order(g, p.C_I, p.S_B,
                                     [](std::size_t a, std::size_t b) { return a < b; });
}

// Fills c_m / S_B_m / C_B_m from a chained pi_I.
inline void derive_restriction(const RedBlackGraph& g, Partitions& p,
                               const ContainmentOrder& pi_I) {
    p.c_m = pi_I.order.back();
    p.S_B_m = p.S_B - g.black[*p.c_m];
    p.C_B_m = p.C_I;
    for (std::size_t u = p.C_U.find_first(); u != Bitset::npos;
         u = p.C_U.find_next(u))
        if ((g.black[u] & p.S_B_m).any()) p.C_B_m.set(u);
}

// pi_U: C_B^m ordered by shrinking S_B^m-neighborhood.  Ties are broken by
// class -- intersecting characters (in their pi_I relative order, which the
// shared comparator reproduces) ahead of universal ones -- then ascending
// index.  With S_B_m empty this degenerates to C_I in ascending index order,
// since all pi_I neighborhoods then coincide.
inline ContainmentOrder order_pi_U(const RedBlackGraph& g, const Partitions& p) {
    std::vector<std::size_t> sb_size(g.m(), 0);
    for (std::size_t c = p.C_I.find_first(); c != Bitset::npos; c = p.C_I.find_next(c))
        sb_size[c] = (g.black[c] & p.S_B).count();
    auto tie_less = [&](std::size_t a, std::size_t b) {
        bool a_int = p.C_I.test(a), b_int = p.C_I.test(b);
        if (a_int != b_int) return a_int;  // intersecting before universal
        if (a_int && sb_size[a] != sb_size[b]) return sb_size[a] > sb_size[b];
        return a < b;
    };
    return detail::containment_order(g, p.C_B_m, p.S_B_m, tie_less);
}

// Characters that sit at the center of an induced 7-vertex path
// s1 c1 s2 c2 s3 c3 s4 of an all-black graph: exactly the characters that can
// never be realized first.  The path is found by scanning character triples
// with bitset arithmetic; the two endpoint characters play symmetric roles.
inline Bitset p7_centers(const RedBlackGraph& g) {
    Bitset centers(g.m());
    for (std::size_t c2 = 0; c2 < g.m(); ++c2) {
        if (g.black[c2].none()) continue;
        bool found = false;
        for (std::size_t c1 = 0; c1 < g.m() && !found; ++c1) {
            if (c1 == c2 || g.black[c1].none()) continue;
            if (!(g.black[c1] & g.black[c2]).any()) continue;
            for (std::size_t c3 = c1 + 1; c3 < g.m() && !found; ++c3) {
                if (c3 == c2 || g.black[c3].none()) continue;
                const Bitset &n1 = g.black[c1], &n2 = g.black[c2], &n3 = g.black[c3];
                // s2 adjacent to c1,c2 only; s3 to c2,c3 only;
                // s1 to c1 only; s4 to c3 only (within the triple)
                if (((n1 & n2) - n3).any() && ((n2 & n3) - n1).any()
                    && (n1 - (n2 | n3)).any() && (n3 - (n1 | n2)).any()) {
                    centers.set(c2);
                    found = true;
                }
            }
        }
    }
    return centers;
}

// The legal starting species of a reduction: among species of minimum degree
// (degree-0 species do not count), those whose characters avoid every P7
// center.  Empty result = no reduction can exist.  Ascending index order.
inline std::vector<std::size_t> candidate_start_species(const RedBlackGraph& g) {
    std::size_t min_deg = 0;
    bool any = false;
    for (std::size_t s = 0; s < g.n(); ++s) {
        std::size_t d = g.sblack[s].count();
        if (d == 0) continue;
        if (!any || d < min_deg) {
            min_deg = d;
            any = true;
        }
    }
    std::vector<std::size_t> out;
    if (!any) return out;
    Bitset centers = p7_centers(g);
    for (std::size_t s = 0; s < g.n(); ++s)
        if (g.sblack[s].count() == min_deg && !(g.sblack[s] & centers).any())
            out.push_back(s);
    return out;
}

}  // namespace dollo

#endif  // DOLLO_PARTITIONS_HPP
