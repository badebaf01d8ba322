// Ground-truth machinery: an exhaustive reduction search plus instance
// generators for cross-checking the polynomial recognizer.
//
// The oracle tries every ordering of the inactive characters by depth-first
// search over graph states.  Two sound optimizations keep it honest but
// usable: states containing a red sigma-graph are pruned (such a state can
// never reach the edgeless graph -- see realize.hpp), and states proven
// fruitless are memoized by their exact fingerprint.  Both can be switched
// off to validate the optimizations against the plain search.

#ifndef DOLLO_ORACLE_HPP
#define DOLLO_ORACLE_HPP

#include "realize.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace dollo {

struct OracleResult {
    enum class Verdict { Reducible, NotReducible, BudgetExceeded };
    Verdict verdict = Verdict::NotReducible;
    std::vector<std::size_t> order;  // a witnessing reduction, iff Reducible
    std::uint64_t nodes = 0;         // realizations performed
};

namespace detail {

struct OracleSearch {
    std::uint64_t budget = 0;
    bool sigma_prune = true;
    bool memoize = true;
    std::uint64_t nodes = 0;
    bool out_of_budget = false;
    std::unordered_set<std::string> dead;
    std::vector<std::size_t> path;

    bool dfs(const RedBlackGraph& g) {
        if (g.is_edgeless()) return true;
        std::string key;
        if (memoize) {
            key = g.state_key();
            if (dead.count(key)) return false;
        }
        for (std::size_t c = 0; c < g.m(); ++c) {
            if (g.state[c] != CharState::Inactive) continue;
            if (nodes >= budget) {
                out_of_budget = true;
                return false;
            }
            ++nodes;
            RedBlackGraph next = g;
            realize_character(next, c);
            if (sigma_prune && find_red_sigma(next)) continue;
            path.push_back(c);
            if (dfs(next)) return true;
            path.pop_back();
            if (out_of_budget) return false;
        }
        if (memoize && !out_of_budget) dead.insert(std::move(key));
        return false;
    }
};

}  // namespace detail

// Exhaustively searches for a reduction of g.  Deterministic: children are
// explored in ascending character order, so the returned order is the
// lexicographically least reduction (under that exploration).
inline OracleResult brute_force_reduction(const RedBlackGraph& g,
                                          std::uint64_t budget = 10'000'000,
                                          bool sigma_prune = true,
                                          bool memoize = true) {
    detail::OracleSearch search;
    search.budget = budget;
    search.sigma_prune = sigma_prune;
    search.memoize = memoize;
    OracleResult res;
    bool found = search.dfs(g);
    res.nodes = search.nodes;
    if (found) {
        res.verdict = OracleResult::Verdict::Reducible;
        res.order = search.path;
    } else if (search.out_of_budget) {
        res.verdict = OracleResult::Verdict::BudgetExceeded;
    } else {
        res.verdict = OracleResult::Verdict::NotReducible;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Instance generation.  Matrices are handled as row bitmasks (column j is
// bit j) -- cheap to enumerate and to filter.

namespace detail {

inline bool rows_distinct(const std::vector<std::uint32_t>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = i + 1; k < rows.size(); ++k)
            if (rows[i] == rows[k]) return false;
    return true;
}

inline std::uint32_t column_mask(const std::vector<std::uint32_t>& rows,
                                 std::size_t j) {
    std::uint32_t col = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] >> j & 1u) col |= 1u << i;
    return col;
}

inline bool cols_distinct(const std::vector<std::uint32_t>& rows, std::size_t m) {
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (column_mask(rows, a) == column_mask(rows, b)) return false;
    return true;
}

// No column's species set may be a proper subset of another's.
inline bool is_maximal(const std::vector<std::uint32_t>& rows, std::size_t m) {
    for (std::size_t a = 0; a < m; ++a) {
        std::uint32_t ca = column_mask(rows, a);
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            std::uint32_t cb = column_mask(rows, b);
            if (ca != cb && (ca & cb) == ca) return false;
        }
    }
    return true;
}

// Connectivity of the bipartite graph, ignoring vertices without edges.
inline bool is_connected(const std::vector<std::uint32_t>& rows, std::size_t m) {
    std::size_t n = rows.size();
    std::vector<std::size_t> parent(n + m);
    for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (rows[i] >> j & 1u) parent[find(i)] = find(n + j);
    std::size_t root = parent.size();  // sentinel: none seen yet
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i] == 0) continue;
        std::size_t r = find(i);
        if (root == parent.size())
            root = r;
        else if (r != root)
            return false;
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (column_mask(rows, j) == 0) continue;
        std::size_t r = find(n + j);
        if (root == parent.size())
            root = r;
        else if (r != root)
            return false;
    }
    return true;
}

inline bool passes_filters(const std::vector<std::uint32_t>& rows, std::size_t m) {
    return rows_distinct(rows) && cols_distinct(rows, m) && is_maximal(rows, m)
           && is_connected(rows, m);
}

// Self-canonicality under row and column permutation: the rows (already
// strictly decreasing by construction) must equal the minimum over all
// column permutations of the row multiset sorted descending.
inline bool is_canonical(const std::vector<std::uint32_t>& rows, std::size_t m) {
    std::vector<std::size_t> perm(m);
    for (std::size_t j = 0; j < m; ++j) perm[j] = j;
    std::vector<std::uint32_t> permuted(rows.size());
    while (std::next_permutation(perm.begin(), perm.end())) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint32_t v = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (rows[i] >> perm[j] & 1u) v |= 1u << j;
            permuted[i] = v;
        }
        std::sort(permuted.rbegin(), permuted.rend());
        if (std::lexicographical_compare(permuted.begin(), permuted.end(),
                                         rows.begin(), rows.end()))
            return false;
    }
    return true;
}

}  // namespace detail

inline BinaryMatrix matrix_from_masks(const std::vector<std::uint32_t>& rows,
                                      std::size_t m) {
    std::vector<std::string> bit_rows;
    for (std::uint32_t r : rows) {
        std::string s(m, '0');
        for (std::size_t j = 0; j < m; ++j)
            if (r >> j & 1u) s[j] = '1';
        bit_rows.push_back(std::move(s));
    }
    return make_matrix(bit_rows);
}

// Visits one representative per isomorphism class (row + column relabeling)
// of n x m matrices with distinct rows/columns that are maximal and
// connected.  Rows are generated strictly decreasing, then checked for
// self-canonicality under column permutations.
inline void enumerate_exhaustive(
    std::size_t n, std::size_t m,
    const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
    if (m > 20) throw std::invalid_argument("exhaustive enumeration supports m <= 20");
    std::vector<std::uint32_t> rows;
    std::uint32_t limit = 1u << m;
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t below) {
        if (rows.size() == n) {
            if (detail::cols_distinct(rows, m) && detail::is_maximal(rows, m)
                && detail::is_connected(rows, m) && detail::is_canonical(rows, m))
                visit(rows);
            return;
        }
        // strictly decreasing rows: the next row is smaller than the last
        for (std::uint32_t v = below; v-- > 0;) {
            rows.push_back(v);
            rec(v);
            rows.pop_back();
        }
    };
    rec(limit);
}

// Draws one random instance: n and m uniform in their ranges, each cell an
// independent Bernoulli(density) draw, rejection-sampled until the instance
// is distinct, maximal, and connected.
inline BinaryMatrix random_instance(std::mt19937_64& rng, std::size_t n_min,
                                    std::size_t n_max, std::size_t m_min,
                                    std::size_t m_max, double density,
                                    std::uint64_t max_attempts = 1'000'000) {
    std::uniform_int_distribution<std::size_t> pick_n(n_min, n_max);
    std::uniform_int_distribution<std::size_t> pick_m(m_min, m_max);
    std::bernoulli_distribution cell(density);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::size_t n = pick_n(rng), m = pick_m(rng);
        std::vector<std::uint32_t> rows(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (cell(rng)) rows[i] |= 1u << j;
        if (detail::passes_filters(rows, m)) return matrix_from_masks(rows, m);
    }
    throw std::runtime_error("random_instance: rejection sampling exhausted");
}

}  // namespace dollo

#endif  // DOLLO_ORACLE_HPP
