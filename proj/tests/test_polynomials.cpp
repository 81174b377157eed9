#include <catch2/catch_amalgamated.hpp>

#include "graphkh/harness.hpp"
#include "graphkh/polynomials.hpp"
#include "test_util.hpp"

using namespace graphkh;
using testutil::mk;

TEST_CASE("laurent arithmetic") {
    LaurentPoly a = LaurentPoly::monomial('a', 2, 3) + LaurentPoly::monomial('a', -1, 0);
    REQUIRE(a.coeff(3) == 2);
    REQUIRE(a.coeff(0) == -1);
    REQUIRE(a.coeff(7) == 0);
    REQUIRE_FALSE(a.is_zero());

    REQUIRE((a - a).is_zero());
    REQUIRE((a * LaurentPoly::constant('a', 0)).is_zero());
    REQUIRE(a * 1 == a);
    REQUIRE((a * -2).coeff(3) == -4);
    REQUIRE(2 * a == a * 2);
    REQUIRE(a.shifted(-3).coeff(0) == 2);
    REQUIRE(a.pow(0) == LaurentPoly::constant('a', 1));
    REQUIRE(a.pow(2) == a * a);

    LaurentPoly x = LaurentPoly::monomial('a', 1, 1) + LaurentPoly::constant('a', 1);
    REQUIRE((x * x).coeff(1) == 2);  // exact integers, not GF(2)

    REQUIRE_THROWS_AS(a + LaurentPoly::constant('t', 1), Error);
    REQUIRE_THROWS_AS(a * LaurentPoly::constant('t', 1), Error);
}

TEST_CASE("laurent rendering") {
    REQUIRE(LaurentPoly('a').to_string() == "0");
    REQUIRE(LaurentPoly::constant('a', 1).to_string() == "1");
    REQUIRE(LaurentPoly::constant('a', -3).to_string() == "-3");
    REQUIRE(LaurentPoly::monomial('a', 1, 1).to_string() == "a");
    REQUIRE(LaurentPoly::monomial('a', -1, -3).to_string() == "-a^-3");
    REQUIRE((LaurentPoly::monomial('a', -1, 4) + LaurentPoly::monomial('a', -1, -4))
                .to_string() == "-a^4 - a^-4");
    REQUIRE((LaurentPoly::monomial('t', 1, 3) + LaurentPoly::monomial('t', 2, -1))
                .to_string() == "t^3 + 2t^-1");
}

TEST_CASE("bracket state sum on frozen examples") {
    REQUIRE(kauffman_bracket(mk(1, {}, "0", "+")) == LaurentPoly::monomial('a', -1, -3));
    REQUIRE(kauffman_bracket(mk(1, {}, "0", "-")) == LaurentPoly::monomial('a', -1, 3));
    REQUIRE(kauffman_bracket(mk(2, {{0, 1}}, "00", "+-")) ==
            LaurentPoly::monomial('a', -1, 4) + LaurentPoly::monomial('a', -1, -4));
    REQUIRE(kauffman_bracket(LabeledGraph(0)) == LaurentPoly::constant('a', 1));

    REQUIRE_THROWS_AS(kauffman_bracket(LabeledGraph(31)), CapacityError);
}

TEST_CASE("jones polynomial on frozen examples") {
    REQUIRE(jones(mk(1, {}, "0", "+")) == LaurentPoly::constant('a', 1));
    REQUIRE(jones(mk(1, {}, "0", "-")) == LaurentPoly::constant('a', 1));
    REQUIRE(jones(mk(2, {{0, 1}}, "00", "+-")) ==
            LaurentPoly::monomial('a', -1, 4) + LaurentPoly::monomial('a', -1, -4));
}

TEST_CASE("bracket substitution enforces exponent parity") {
    REQUIRE_THROWS_AS(substitute_a_eq_i_sqrt_t(LaurentPoly::monomial('a', 1, 1), 0), Error);
    REQUIRE_THROWS_AS(substitute_a_eq_i_sqrt_t(LaurentPoly::constant('t', 1), 0), Error);
    // a^2 at shift 0 becomes -t; a^-2 becomes -t^-1; a^0 stays 1.
    LaurentPoly p = LaurentPoly::monomial('a', 1, 2) + LaurentPoly::monomial('a', 1, -2) +
                    LaurentPoly::constant('a', 1);
    LaurentPoly t = substitute_a_eq_i_sqrt_t(p, 0);
    REQUIRE(t == LaurentPoly::monomial('t', -1, 1) + LaurentPoly::monomial('t', -1, -1) +
                     LaurentPoly::constant('t', 1));
}

TEST_CASE("euler identity holds with the +n exponent and fails with -n") {
    EulerIdentityReport r = euler_identity_check(mk(1, {}, "0", "+"));
    REQUIRE(r.holds_plus_n);
    REQUIRE_FALSE(r.holds_minus_n);
    REQUIRE(r.homology_side == LaurentPoly::monomial('t', 1, -1));
    REQUIRE(r.plus_n_side == LaurentPoly::monomial('t', 1, -1));
    REQUIRE(r.minus_n_side == LaurentPoly::monomial('t', -1, -2));

    for (int n = 0; n <= 2; ++n)
        for_each_labeled_graph(
            n, [](const LabeledGraph& g) { REQUIRE(euler_identity_check(g).holds_plus_n); });

    Rng rng(31);
    for (int t = 0; t < 10; ++t)
        REQUIRE(euler_identity_check(random_graph(5, rng)).holds_plus_n);
}

TEST_CASE("graded euler of the calibrated table matches the normalized bracket") {
    auto check = [](const LabeledGraph& g) {
        BettiTable t = betti_table(build_complex(g));
        LaurentPoly lhs = graded_euler(normalized_table(t, Normalization::calibrated));
        LaurentPoly rhs = substitute_a_eq_i_sqrt_t(jones(g), 0);
        REQUIRE(lhs == rhs);
    };
    for (int n = 0; n <= 2; ++n) for_each_labeled_graph(n, check);
    Rng rng(67);
    for (int t = 0; t < 10; ++t) check(random_graph(5, rng));
}
