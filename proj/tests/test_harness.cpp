#include <catch2/catch_amalgamated.hpp>

#include "graphkh/harness.hpp"
#include "graphkh/io.hpp"
#include "test_util.hpp"

using namespace graphkh;
using testutil::mk;

TEST_CASE("seeded rng is deterministic and bounded") {
    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) REQUIRE(a.word() == b.word());
    Rng c(6);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t v = c.below(7);
        REQUIRE(v < 7);
    }
    REQUIRE(Rng(1).below(1) == 0);
    REQUIRE_THROWS_AS(Rng(1).below(0), Error);
}

TEST_CASE("random graphs replay from their seed") {
    LabeledGraph g = random_graph(6, 42);
    REQUIRE(g == random_graph(6, 42));
    REQUIRE_FALSE(g == random_graph(6, 43));
    REQUIRE(g.vertex_count() == 6);
}

TEST_CASE("exhaustive enumeration covers every labeling") {
    int count = 0;
    for_each_labeled_graph(2, [&](const LabeledGraph& g) {
        REQUIRE(g.vertex_count() == 2);
        ++count;
    });
    REQUIRE(count == 2 * 4 * 4);  // edge sets x framings x signs
}

TEST_CASE("independent oracle agrees with the fast pipeline") {
    auto check = [](const LabeledGraph& g) {
        BettiTable fast = betti_table(build_complex(g));
        BettiTable slow = dense_oracle_homology(g);
        REQUIRE(fast.entries == slow.entries);
        REQUIRE(fast.writhe == slow.writhe);
        REQUIRE(fast.graph_knot == slow.graph_knot);
    };
    for (int n = 0; n <= 2; ++n) for_each_labeled_graph(n, check);
    Rng rng(1001);
    for (int t = 0; t < 8; ++t) check(random_graph(4, rng));
    for (int t = 0; t < 8; ++t) check(random_graph(5, rng));

    REQUIRE_THROWS_AS(dense_oracle_homology(LabeledGraph(9)), CapacityError);
}

TEST_CASE("planted sites admit their move") {
    Rng rng(22);
    auto plantable = [&](MoveKind kind, bool framed, int sign, Omega3Semantics sem) {
        for (int t = 0; t < 12; ++t) {
            auto [host, spec] = plant_move(random_graph(6, rng), kind, rng, framed, sign, sem);
            REQUIRE_NOTHROW(apply_move(host, spec));
        }
    };
    plantable(MoveKind::omega1_add, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega1_add, false, -1, Omega3Semantics::matrix);
    plantable(MoveKind::omega1_remove, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega2_add, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega2_add, true, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega2_remove, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega2_remove, true, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega3_forward, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega3_forward, false, +1, Omega3Semantics::verbal);
    plantable(MoveKind::omega3_inverse, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega3_inverse, false, +1, Omega3Semantics::verbal);
    plantable(MoveKind::omega4, false, +1, Omega3Semantics::matrix);
    plantable(MoveKind::omega4_prime, false, +1, Omega3Semantics::matrix);
}

TEST_CASE("table shift detection") {
    BettiTable a;
    a.entries = {{{0, -1}, 1}, {{2, 3}, 1}};
    BettiTable b;
    b.entries = {{{1, 0}, 1}, {{3, 4}, 1}};
    REQUIRE(table_shift(a, b) == std::pair{1, 1});
    REQUIRE(table_shift(a, a) == std::pair{0, 0});

    BettiTable c;
    c.entries = {{{1, 0}, 1}, {{3, 5}, 1}};  // inconsistent displacement
    REQUIRE_FALSE(table_shift(a, c).has_value());
    BettiTable d;
    d.entries = {{{1, 0}, 2}, {{3, 4}, 1}};  // multiplicity mismatch
    REQUIRE_FALSE(table_shift(a, d).has_value());
    REQUIRE_FALSE(table_shift(BettiTable{}, BettiTable{}).has_value());
}

TEST_CASE("invariance walks pass and replay deterministically") {
    LabeledGraph g = mk(1, {}, "0", "+");
    TrialReport r = check_invariance(g, 6, 99);
    REQUIRE(r.steps.size() == 6);
    REQUIRE(r.all_passed);

    TrialReport again = check_invariance(g, 6, 99);
    REQUIRE(json_trial_report(again).dump(2) == json_trial_report(r).dump(2));

    TrialReport edge_walk = check_invariance(mk(2, {{0, 1}}, "00", "+-"), 6, 5);
    REQUIRE(edge_walk.all_passed);
}

TEST_CASE("growth cap keeps walks bounded") {
    CheckOptions opts;
    opts.growth_cap = 5;
    TrialReport r = check_invariance(mk(4, {{0, 1}, {2, 3}}, "0000", "+-+-"), 12, 7, opts);
    REQUIRE(r.all_passed);
    for (const StepRecord& s : r.steps) REQUIRE(s.n_after <= 7);
}

TEST_CASE("the literal third-move reading is not an invariant") {
    // The matrix reading always preserves total homology dimension; the
    // literal toggle lands on the opposite attachment and must fail somewhere.
    Rng rng(37);
    int verbal_breaks = 0, tried = 0;
    for (int t = 0; t < 60 && verbal_breaks == 0; ++t) {
        auto [host, spec] =
            plant_move(random_graph(5, rng), MoveKind::omega3_forward, rng);
        long long before = betti_table(build_complex(host)).total_dim();

        LabeledGraph matrix_after = apply_move(host, spec);
        REQUIRE(betti_table(build_complex(matrix_after)).total_dim() == before);

        MoveSpec verbal = spec;
        verbal.semantics = Omega3Semantics::verbal;
        LabeledGraph verbal_after = apply_move(host, verbal);
        REQUIRE(verbal_after != matrix_after);
        ++tried;
        if (betti_table(build_complex(verbal_after)).total_dim() != before) ++verbal_breaks;
    }
    REQUIRE(tried > 0);
    REQUIRE(verbal_breaks > 0);
}
