#include "helpers.hpp"

#include <dollo/oracle.hpp>
#include <dollo/realize.hpp>

#include <catch_amalgamated.hpp>

#include <random>

using namespace dollo;

namespace {

std::vector<std::string> pair_labels(const RedBlackGraph& g,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::string> out;
    for (auto [c, s] : edges)
        out.push_back(g.char_labels[c] + ":" + g.species_labels[s]);
    return out;
}

// Reference implementation: check every 5-tuple against the definition.
bool naive_has_red_sigma(const RedBlackGraph& g) {
    auto edge = [&](std::size_t c, std::size_t s) {
        return g.black[c].test(s) || g.red[c].test(s);
    };
    for (std::size_t c1 = 0; c1 < g.m(); ++c1)
        for (std::size_t c2 = 0; c2 < g.m(); ++c2) {
            if (c1 == c2) continue;
            for (std::size_t s1 = 0; s1 < g.n(); ++s1)
                for (std::size_t s2 = 0; s2 < g.n(); ++s2)
                    for (std::size_t s3 = 0; s3 < g.n(); ++s3) {
                        if (s1 == s2 || s1 == s3 || s2 == s3) continue;
                        if (g.red[c1].test(s1) && g.red[c1].test(s2)
                            && g.red[c2].test(s2) && g.red[c2].test(s3)
                            && !edge(c2, s1) && !edge(c1, s3))
                            return true;
                    }
        }
    return false;
}

bool witness_is_valid(const RedBlackGraph& g, const RedSigmaWitness& w) {
    auto edge = [&](std::size_t c, std::size_t s) {
        return g.black[c].test(s) || g.red[c].test(s);
    };
    return g.red[w.c1].test(w.s1) && g.red[w.c1].test(w.s2)
           && g.red[w.c2].test(w.s2) && g.red[w.c2].test(w.s3)
           && !edge(w.c2, w.s1) && !edge(w.c1, w.s3) && w.s1 != w.s2
           && w.s1 != w.s3 && w.s2 != w.s3 && w.c1 != w.c2;
}

}  // namespace

TEST_CASE("realizing the first character of the example") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    RealizationEvent ev = realize_character(g, g.char_index("A"));
    CHECK(pair_labels(g, ev.red_added)
          == std::vector<std::string>{"A:s3", "A:s4", "A:s5", "A:s6", "A:s7",
                                      "A:s8", "A:s9"});
    CHECK(pair_labels(g, ev.black_removed)
          == std::vector<std::string>{"A:s1", "A:s2"});
    REQUIRE(ev.species_isolated.size() == 1);
    CHECK(g.species_labels[ev.species_isolated[0]] == "s1");
    CHECK(ev.chars_isolated.empty());
    CHECK_FALSE(ev.realized_without_loss);
    CHECK(g.state[g.char_index("A")] == CharState::Active);
    CHECK_FALSE(g.present.test(g.species_index("s1")));
    CHECK_FALSE(consistency_violation(g).has_value());
    SECTION("a character can only be realized once") {
        CHECK_THROWS_AS(realize_character(g, g.char_index("A")), StateError);
    }
}

TEST_CASE("the second realization can force a loss") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    ApplyResult r = apply_sequence(g, testutil::char_ids(g, {"A", "B"}));
    REQUIRE(r.events.size() == 2);
    REQUIRE_FALSE(r.sigma_step.has_value());
    const RealizationEvent& ev = r.events[1];
    CHECK(pair_labels(g, ev.red_added)
          == std::vector<std::string>{"B:s5", "B:s6", "B:s7", "B:s8", "B:s9"});
    CHECK(pair_labels(g, ev.black_removed)
          == std::vector<std::string>{"B:s2", "B:s3", "B:s4"});
    CHECK(testutil::char_names(g, ev.chars_isolated)
          == std::vector<std::string>{"A"});
    REQUIRE(ev.species_isolated.size() == 2);
    CHECK(g.species_labels[ev.species_isolated[0]] == "s2");
    CHECK(g.species_labels[ev.species_isolated[1]] == "s3");
    REQUIRE(ev.gain_isolated_species.size() == 1);
    CHECK(g.species_labels[ev.gain_isolated_species[0]] == "s2");
    REQUIRE(ev.loss_isolated_species.size() == 1);
    REQUIRE(ev.loss_isolated_species[0].size() == 1);
    CHECK(g.species_labels[ev.loss_isolated_species[0][0]] == "s3");
    CHECK(g.state[g.char_index("A")] == CharState::Isolated);
    CHECK_FALSE(consistency_violation(g).has_value());
}

TEST_CASE("starting the example at its P7 center raises a red sigma-graph") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    ApplyResult r = apply_sequence(g, testutil::char_ids(g, {"B", "A"}));
    REQUIRE(r.sigma_step.has_value());
    CHECK(*r.sigma_step == 1);
    REQUIRE(r.sigma.has_value());
    CHECK(g.species_labels[r.sigma->s1] == "s4");
    CHECK(g.char_labels[r.sigma->c1] == "A");
    CHECK(g.species_labels[r.sigma->s2] == "s5");
    CHECK(g.char_labels[r.sigma->c2] == "B");
    CHECK(g.species_labels[r.sigma->s3] == "s1");
    CHECK(witness_is_valid(g, *r.sigma));
    // the replay stops right after the offending step
    CHECK(r.events.size() == 2);
}

TEST_CASE("both published orderings of the example verify") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    CHECK(verify_reduction(g, testutil::char_ids(g, {"A", "B", "C", "F", "D", "E"})).ok);
    CHECK(verify_reduction(g, testutil::char_ids(g, {"A", "B", "C", "D", "F", "E"})).ok);
    SECTION("and the replay truly empties the graph, consistently") {
        ApplyResult r =
            apply_sequence(g, testutil::char_ids(g, {"A", "B", "C", "F", "D", "E"}));
        CHECK_FALSE(r.sigma_step.has_value());
        CHECK(g.is_edgeless());
        CHECK_FALSE(consistency_violation(g).has_value());
    }
}

TEST_CASE("orders that start wrong fail verification with diagnostics") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    VerificationResult bad =
        verify_reduction(g, testutil::char_ids(g, {"B", "A", "C", "D", "E", "F"}));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.failed_step.has_value());
    CHECK(*bad.failed_step == 1);
    CHECK(bad.sigma.has_value());
    CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("malformed orders are argument errors, not failures") {
    RedBlackGraph g = build_graph(testutil::load_fig1());
    SECTION("wrong length") {
        CHECK_THROWS_AS(verify_reduction(g, testutil::char_ids(g, {"A", "B"})),
                        std::invalid_argument);
    }
    SECTION("repeated character") {
        CHECK_THROWS_AS(
            verify_reduction(g, testutil::char_ids(g, {"A", "B", "C", "D", "E", "A"})),
            std::invalid_argument);
    }
    SECTION("character that is no longer inactive") {
        realize_character(g, g.char_index("A"));
        CHECK_THROWS_AS(
            verify_reduction(g, testutil::char_ids(g, {"A", "B", "C", "D", "E", "F"})),
            std::invalid_argument);
    }
}

TEST_CASE("a universal character in a two-vertex component folds at once") {
    // second species is all-zero, so the component is a single black edge
    RedBlackGraph g = build_graph(make_matrix({"1", "0"}));
    RealizationEvent ev = realize_character(g, 0);
    CHECK(ev.red_added.empty());
    CHECK(pair_labels(g, ev.black_removed) == std::vector<std::string>{"c1:s1"});
    CHECK(testutil::char_names(g, ev.chars_isolated)
          == std::vector<std::string>{"c1"});
    REQUIRE(ev.species_isolated.size() == 1);
    CHECK(ev.realized_without_loss);
    CHECK(g.is_edgeless());
    CHECK(g.state[0] == CharState::Isolated);
}

TEST_CASE("sigma detection agrees with direct five-tuple enumeration") {
    std::mt19937_64 rng(20260815);
    std::size_t with_red = 0, sigma_states = 0;
    for (int trial = 0; trial < 250; ++trial) {
        BinaryMatrix mat = random_instance(rng, 3, 7, 2, 5, 0.5);
        RedBlackGraph g = build_graph(mat);
        std::uniform_int_distribution<std::size_t> steps(0, g.m());
        std::size_t k = steps(rng);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::size_t> inactive;
            for (std::size_t c = 0; c < g.m(); ++c)
                if (g.state[c] == CharState::Inactive) inactive.push_back(c);
            if (inactive.empty()) break;
            realize_character(g, inactive[rng() % inactive.size()]);
        }
        if (!g.is_edgeless()) {
            bool any_red = false;
            for (std::size_t c = 0; c < g.m(); ++c) any_red |= g.red[c].any();
            with_red += any_red;
        }
        std::optional<RedSigmaWitness> w = find_red_sigma(g);
        REQUIRE(w.has_value() == naive_has_red_sigma(g));
        if (w) {
            ++sigma_states;
            CHECK(witness_is_valid(g, *w));
        }
        CHECK_FALSE(consistency_violation(g).has_value());
    }
    // the sample must actually exercise both outcomes
    CHECK(with_red > 50);
    CHECK(sigma_states > 5);
}

TEST_CASE("observer hooks fire once per gain and per loss") {
    struct Counter : RealizeObserver {
        std::size_t gains = 0, losses = 0;
        void pre_gain(const RedBlackGraph&, std::size_t,
                      const RedBlackGraph::Component& comp) override {
            ++gains;
            CHECK(comp.chars.any());
        }
        void pre_loss(const RedBlackGraph&, std::size_t c,
                      const RedBlackGraph::Component& comp) override {
            ++losses;
            CHECK(comp.chars.test(c));
        }
    } counter;
    RedBlackGraph g = build_graph(testutil::load_fig1());
    for (std::size_t c : testutil::char_ids(g, {"A", "B", "C", "F", "D", "E"}))
        realize_character(g, c, &counter);
    CHECK(counter.gains == 6);
    CHECK(counter.losses == 6);
    CHECK(g.is_edgeless());
}

TEST_CASE("an empty order on an edgeless graph is the empty reduction") {
    RedBlackGraph g = build_graph(make_matrix({}));
    ApplyResult r = apply_sequence(g, {});
    CHECK(r.events.empty());
    CHECK_FALSE(r.sigma_step.has_value());
    CHECK(verify_reduction(g, {}).ok);
}
