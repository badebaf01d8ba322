#include "helpers.hpp"

#include <dollo/oracle.hpp>
#include <dollo/partitions.hpp>
#include <dollo/realize.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace dollo;

namespace {

// Reference P7-center finder: enumerate every candidate path directly.
Bitset naive_centers(const RedBlackGraph& g) {
    Bitset centers(g.m());
    auto b = [&](std::size_t c, std::size_t s) { return g.black[c].test(s); };
    for (std::size_t c2 = 0; c2 < g.m(); ++c2)
        for (std::size_t c1 = 0; c1 < g.m(); ++c1)
            for (std::size_t c3 = 0; c3 < g.m(); ++c3) {
                if (c1 == c2 || c2 == c3 || c1 == c3) continue;
                for (std::size_t s1 = 0; s1 < g.n() && !centers.test(c2); ++s1)
                    for (std::size_t s2 = 0; s2 < g.n(); ++s2)
                        for (std::size_t s3 = 0; s3 < g.n(); ++s3)
                            for (std::size_t s4 = 0; s4 < g.n(); ++s4) {
                                if (s1 == s2 || s1 == s3 || s1 == s4 || s2 == s3
                                    || s2 == s4 || s3 == s4)
                                    continue;
                                if (b(c1, s1) && b(c1, s2) && b(c2, s2)
                                    && b(c2, s3) && b(c3, s3) && b(c3, s4)
                                    && !b(c2, s1) && !b(c3, s1) && !b(c3, s2)
                                    && !b(c1, s3) && !b(c1, s4) && !b(c2, s4)) {
                                    centers.set(c2);
                                }
                            }
            }
    return centers;
}

RedBlackGraph after(const std::vector<std::string>& order) {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    for (const std::string& c : order) realize_character(g, g.char_index(c));
    return g;
}

}  // namespace

TEST_CASE("initially everything is universal by convention") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    Partitions p = compute_partitions(g);
    CHECK(p.S_B.count() == 9);
    CHECK(p.S_R.none());
    CHECK(p.C_R.none());
    CHECK(p.C_C.none());
    CHECK(p.C_I.none());
    CHECK(p.C_U.count() == 6);  // S_R is empty, so S_R is a subset of every N(c)
}

TEST_CASE("partitions along the example's reduction") {
    SECTION("after A") {
        RedBlackGraph g = after({"A"});
        Partitions p = compute_partitions(g);
        CHECK(testutil::species_names(g, p.S_B) == std::vector<std::string>{"s2"});
        CHECK(p.S_R.count() == 7);
        CHECK(testutil::char_names(g, p.C_R) == std::vector<std::string>{"A"});
        CHECK(testutil::char_names(g, p.C_I) == std::vector<std::string>{"B"});
        CHECK(testutil::char_names(g, p.C_C)
              == std::vector<std::string>{"C", "D", "E", "F"});
        CHECK(p.C_U.none());

        ContainmentOrder pi_I = order_pi_I(g, p);
        REQUIRE(pi_I.is_chain);
        CHECK(testutil::char_names(g, pi_I.order) == std::vector<std::string>{"B"});
        derive_restriction(g, p, pi_I);
        CHECK(g.char_labels[*p.c_m] == "B");
        CHECK(p.S_B_m.none());
        ContainmentOrder pi_U = order_pi_U(g, p);
        REQUIRE(pi_U.is_chain);
        CHECK(testutil::char_names(g, pi_U.order) == std::vector<std::string>{"B"});
    }
    SECTION("after A,B") {
        RedBlackGraph g = after({"A", "B"});
        Partitions p = compute_partitions(g);
        CHECK(testutil::species_names(g, p.S_B) == std::vector<std::string>{"s4"});
        CHECK(testutil::char_names(g, p.C_R) == std::vector<std::string>{"B"});
        CHECK(testutil::char_names(g, p.C_I) == std::vector<std::string>{"C"});
        CHECK(testutil::char_names(g, p.C_C)
              == std::vector<std::string>{"D", "E", "F"});
    }
    SECTION("after A,B,C: the pi_U chain interleaves both classes") {
        RedBlackGraph g = after({"A", "B", "C"});
        Partitions p = compute_partitions(g);
        CHECK(testutil::species_names(g, p.S_B)
              == std::vector<std::string>{"s6", "s9"});
        CHECK(testutil::species_names(g, p.S_R)
              == std::vector<std::string>{"s7", "s8"});
        CHECK(testutil::char_names(g, p.C_I) == std::vector<std::string>{"E", "F"});
        CHECK(testutil::char_names(g, p.C_U) == std::vector<std::string>{"D"});
        CHECK(p.C_C.none());

        ContainmentOrder pi_I = order_pi_I(g, p);
        REQUIRE(pi_I.is_chain);
        CHECK(testutil::char_names(g, pi_I.order)
              == std::vector<std::string>{"F", "E"});
        derive_restriction(g, p, pi_I);
        CHECK(g.char_labels[*p.c_m] == "E");
        CHECK(testutil::species_names(g, p.S_B_m) == std::vector<std::string>{"s6"});
        CHECK(testutil::char_names(g, p.C_B_m)
              == std::vector<std::string>{"D", "E", "F"});
        ContainmentOrder pi_U = order_pi_U(g, p);
        REQUIRE(pi_U.is_chain);
        CHECK(testutil::char_names(g, pi_U.order)
              == std::vector<std::string>{"F", "D", "E"});
    }
}

TEST_CASE("partition classes tile the graph") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        BinaryMatrix mat = random_instance(rng, 3, 8, 2, 6, 0.5);
        RedBlackGraph g = build_graph(mat);
        for (std::size_t k = rng() % (g.m() + 1); k-- > 0;) {
            std::vector<std::size_t> inactive;
            for (std::size_t c = 0; c < g.m(); ++c)
                if (g.state[c] == CharState::Inactive) inactive.push_back(c);
            if (inactive.empty()) break;
            realize_character(g, inactive[rng() % inactive.size()]);
        }
        Partitions p = compute_partitions(g);
        CHECK((p.S_B & p.S_R).none());
        CHECK((p.S_B | p.S_R) == g.present);
        CHECK((p.C_C & p.C_I).none());
        CHECK((p.C_C & p.C_U).none());
        CHECK((p.C_I & p.C_U).none());
        Bitset inactive(g.m());
        for (std::size_t c = 0; c < g.m(); ++c)
            if (g.state[c] == CharState::Inactive) inactive.set(c);
        CHECK((p.C_C | p.C_I | p.C_U) == inactive);
        for (std::size_t c = 0; c < g.m(); ++c)
            CHECK(p.C_R.test(c) == (g.state[c] == CharState::Active));
    }
}

TEST_CASE("the example's P7 centers are B and C") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    Bitset centers = p7_centers(g);
    // witnesses: s1-A-s2-B-s4-C-s9 centers B; s7-E-s9-C-s4-B-s2 centers C
    CHECK(centers.test(g.char_index("B")));
    CHECK(centers.test(g.char_index("C")));
    CHECK_FALSE(centers.test(g.char_index("A")));
    CHECK(centers == naive_centers(g));
}

TEST_CASE("P7 centers agree with direct path enumeration") {
    std::mt19937_64 rng(90125);
    std::size_t nonempty = 0;
    for (int trial = 0; trial < 120; ++trial) {
        BinaryMatrix mat = random_instance(rng, 4, 9, 3, 6, 0.4);
        RedBlackGraph g = build_graph(mat);
        Bitset fast = p7_centers(g);
        CHECK(fast == naive_centers(g));
        nonempty += fast.any();
    }
    CHECK(nonempty > 10);  // the sample includes genuine P7s
}

TEST_CASE("start-species candidates on the example") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    // min-degree species are s1, s3, s5 with one character each (A, B, C);
    // B and C are centers, so only s1 survives
    std::vector<std::size_t> cand = candidate_start_species(g);
    REQUIRE(cand.size() == 1);
    CHECK(g.species_labels[cand[0]] == "s1");
}

TEST_CASE("start-species candidates on a star") {
    RedBlackGraph g = build_graph(make_matrix({"111", "100", "010", "001"}));
    CHECK(p7_centers(g).none());
    std::vector<std::size_t> cand = candidate_start_species(g);
    REQUIRE(cand.size() == 3);
    CHECK(g.species_labels[cand[0]] == "s2");
    CHECK(g.species_labels[cand[1]] == "s3");
    CHECK(g.species_labels[cand[2]] == "s4");
}

TEST_CASE("an edgeless graph has no start candidates") {
    RedBlackGraph g = build_graph(make_matrix({}));
    CHECK(candidate_start_species(g).empty());
}

TEST_CASE("containment order flags incomparable neighborhoods") {
    RedBlackGraph g = build_graph(make_matrix({"10", "01"}));
    Bitset members(g.m());
    members.set(0);
    members.set(1);
    Bitset all(g.n());
    all.set();
    ContainmentOrder co = detail::containment_order(
        g, members, all, [](std::size_t a, std::size_t b) { return a < b; });
    CHECK_FALSE(co.is_chain);
    CHECK(co.bad_pair == std::pair<std::size_t, std::size_t>{0, 1});
}
