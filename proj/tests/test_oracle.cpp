// Exhaustive-search oracle and instance generators.

#include <catch2/catch_amalgamated.hpp>

#include <dollo/oracle.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"

using namespace dollo;

TEST_CASE("oracle solves the worked example") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    OracleResult res = brute_force_reduction(g);
    REQUIRE(res.verdict == OracleResult::Verdict::Reducible);
    // the search explores characters in ascending order, so this is the
    // lexicographically least reduction
    CHECK(testutil::char_names(g, res.order)
          == std::vector<std::string>{"A", "B", "C", "D", "F", "E"});
    CHECK(res.nodes == 7);  // six on the success path plus one pruned try of E
    VerificationResult v = verify_reduction(g, res.order);
    INFO(v.reason);
    CHECK(v.ok);
}

TEST_CASE("pruning and memoization do not change the worked-example answer") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    OracleResult base = brute_force_reduction(g, 10'000'000, false, false);
    REQUIRE(base.verdict == OracleResult::Verdict::Reducible);
    CHECK(testutil::char_names(g, base.order)
          == std::vector<std::string>{"A", "B", "C", "D", "F", "E"});
    for (bool prune : {false, true}) {
        for (bool memo : {false, true}) {
            OracleResult res = brute_force_reduction(g, 10'000'000, prune, memo);
            CHECK(res.verdict == base.verdict);
            CHECK(res.order == base.order);
        }
    }
}

TEST_CASE("oracle is deterministic") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    OracleResult a = brute_force_reduction(g);
    OracleResult b = brute_force_reduction(g);
    CHECK(a.verdict == b.verdict);
    CHECK(a.order == b.order);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("a tiny budget reports an inconclusive verdict") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    OracleResult res = brute_force_reduction(g, 2);
    CHECK(res.verdict == OracleResult::Verdict::BudgetExceeded);
    CHECK(res.order.empty());
    CHECK(res.nodes <= 2);
}

TEST_CASE("exhaustive enumeration counts are stable") {
    // one row per n in 2..5, one column per m in 2..4
    const std::size_t expected_total[4][3] = {
        {0, 0, 0}, {1, 1, 0}, {1, 5, 4}, {0, 9, 32}};
    const std::size_t expected_reducible[4][3] = {
        {0, 0, 0}, {1, 1, 0}, {1, 5, 3}, {0, 9, 23}};
    std::size_t grand_total = 0;
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t m = 2; m <= 4; ++m) {
            std::size_t total = 0, reducible = 0;
            enumerate_exhaustive(n, m, [&](const std::vector<std::uint32_t>& rows) {
                ++total;
                BinaryMatrix mat = matrix_from_masks(rows, m);
                REQUIRE(mat.n() == n);
                REQUIRE(mat.m() == m);
                RedBlackGraph g = build_graph(mat);
                ValidationReport rep = validate(g);
                REQUIRE(rep.is_maximal);
                REQUIRE(rep.is_connected);
                REQUIRE(rep.merged_species_groups.empty());
                REQUIRE(rep.merged_char_groups.empty());
                OracleResult res = brute_force_reduction(g);
                REQUIRE(res.verdict != OracleResult::Verdict::BudgetExceeded);
                if (res.verdict == OracleResult::Verdict::Reducible) ++reducible;
            });
            INFO("n=" << n << " m=" << m);
            CHECK(total == expected_total[n - 2][m - 2]);
            CHECK(reducible == expected_reducible[n - 2][m - 2]);
            grand_total += total;
        }
    }
    CHECK(grand_total == 53);
}

TEST_CASE("the single canonical 3x2 instance is the triangle-free path") {
    std::vector<std::vector<std::uint32_t>> found;
    enumerate_exhaustive(3, 2, [&](const std::vector<std::uint32_t>& rows) {
        found.push_back(rows);
    });
    REQUIRE(found.size() == 1);  // pinned regression constant
    CHECK(found[0] == std::vector<std::uint32_t>{3, 2, 1});
}

TEST_CASE("exhaustive enumeration rejects oversized column counts") {
    CHECK_THROWS_AS(enumerate_exhaustive(1, 21, [](const auto&) {}),
                    std::invalid_argument);
}

TEST_CASE("matrix_from_masks lays bit j of row i out as cell (i, j)") {
    BinaryMatrix mat = matrix_from_masks({0b01u, 0b10u}, 2);
    REQUIRE(mat.n() == 2);
    REQUIRE(mat.m() == 2);
    CHECK(mat.species == std::vector<std::string>{"s1", "s2"});
    CHECK(mat.characters == std::vector<std::string>{"c1", "c2"});
    CHECK(mat.cell(0, 0) == 1);
    CHECK(mat.cell(0, 1) == 0);
    CHECK(mat.cell(1, 0) == 0);
    CHECK(mat.cell(1, 1) == 1);
}

TEST_CASE("pruning and memoization are sound on random instances") {
    std::mt19937_64 rng(777);
    const double densities[3] = {0.3, 0.5, 0.7};
    std::size_t reducible = 0, not_reducible = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        BinaryMatrix mat = random_instance(rng, 3, 7, 2, 5, densities[i % 3]);
        RedBlackGraph g = build_graph(mat);
        OracleResult plain = brute_force_reduction(g, 10'000'000, false, false);
        REQUIRE(plain.verdict != OracleResult::Verdict::BudgetExceeded);
        for (bool prune : {false, true}) {
            for (bool memo : {false, true}) {
                OracleResult res =
                    brute_force_reduction(g, 10'000'000, prune, memo);
                REQUIRE(res.verdict == plain.verdict);
                REQUIRE(res.order == plain.order);
            }
        }
        if (plain.verdict == OracleResult::Verdict::Reducible) {
            VerificationResult v = verify_reduction(g, plain.order);
            REQUIRE(v.ok);
            ++reducible;
        } else {
            ++not_reducible;
        }
    }
    // the sample must exercise both outcomes to mean anything
    CHECK(reducible > 50);
    CHECK(not_reducible > 50);
}

TEST_CASE("random_instance is deterministic and respects its filters") {
    std::mt19937_64 rng_a(42), rng_b(42);
    for (std::size_t i = 0; i < 20; ++i) {
        BinaryMatrix a = random_instance(rng_a, 3, 9, 2, 7, 0.5);
        BinaryMatrix b = random_instance(rng_b, 3, 9, 2, 7, 0.5);
        CHECK(to_csv(a) == to_csv(b));
        CHECK(a.n() >= 3);
        CHECK(a.n() <= 9);
        CHECK(a.m() >= 2);
        CHECK(a.m() <= 7);
        ValidationReport rep = validate(build_graph(a));
        CHECK(rep.is_maximal);
        CHECK(rep.is_connected);
        CHECK(rep.merged_species_groups.empty());
        CHECK(rep.merged_char_groups.empty());
    }
}
