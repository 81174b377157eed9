#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "graphkh/harness.hpp"
#include "graphkh/moves.hpp"
#include "test_util.hpp"

using namespace graphkh;
using testutil::mk;
using testutil::permuted;

TEST_CASE("move spec text form round-trips") {
    for (const char* text : {"o1add:+", "o1add:-", "o1rem:3", "o2add:u:-", "o2add:f:1,3",
                             "o2rem:1,2", "o3f:1,2,3:matrix", "o3i:2,1,4:verbal", "o4:1,2",
                             "o4p:5"}) {
        MoveSpec m = MoveSpec::parse(text);
        REQUIRE(m.to_string() == text);
        REQUIRE(MoveSpec::parse(m.to_string()) == m);
    }
    // The semantics tag is optional and defaults to matrix.
    REQUIRE(MoveSpec::parse("o3f:1,2,3").to_string() == "o3f:1,2,3:matrix");

    for (const char* bad : {"", "o9:1", "o1add:x", "o1rem:", "o1rem:0", "o1rem:1,2",
                            "o2add:z:1", "o3f:1,2", "o3f:1,2,3:sideways", "o4:1", "o4p:a"})
        REQUIRE_THROWS_AS(MoveSpec::parse(bad), ParseError);
}

TEST_CASE("first move adds and removes isolated unframed vertices") {
    LabeledGraph g = mk(2, {{0, 1}}, "00", "+-");
    LabeledGraph g2 = omega1_add(g, -1);
    REQUIRE(g2.vertex_count() == 3);
    REQUIRE(g2.framing(2) == 0);
    REQUIRE(g2.sign(2) == -1);
    REQUIRE(g2.degree(2) == 0);
    REQUIRE(omega1_remove(g2, 2) == g);

    REQUIRE_THROWS_AS(omega1_add(g, 0), MoveError);
    REQUIRE_THROWS_AS(omega1_remove(g, 0), MoveError);  // not isolated
    REQUIRE_THROWS_AS(omega1_remove(mk(1, {}, "1", "+"), 0), MoveError);  // framed
    REQUIRE_THROWS_AS(omega1_remove(g, 5), MoveError);
}

TEST_CASE("second move creates and destroys twin pairs") {
    LabeledGraph g = mk(2, {{0, 1}}, "00", "++");

    LabeledGraph u = omega2_add(g, 0b01, false);
    REQUIRE(u.vertex_count() == 4);
    REQUIRE(u.sign(2) == -1);
    REQUIRE(u.sign(3) == +1);
    REQUIRE(u.framing(2) == 0);
    REQUIRE_FALSE(u.adjacent(2, 3));
    REQUIRE(u.adjacent(2, 0));
    REQUIRE(u.adjacent(3, 0));
    REQUIRE(omega2_remove(u, 2, 3) == g);
    REQUIRE(omega2_remove(u, 3, 2) == g);

    LabeledGraph f = omega2_add(g, 0b10, true);
    REQUIRE(f.framing(2) == 1);
    REQUIRE(f.framing(3) == 1);
    REQUIRE(f.adjacent(2, 3));
    REQUIRE(f.adjacent(2, 1));
    REQUIRE(omega2_remove(f, 2, 3) == g);

    REQUIRE_THROWS_AS(omega2_add(g, 0b100, false), MoveError);  // unknown neighbour
    REQUIRE_THROWS_AS(omega2_remove(g, 0, 1), MoveError);       // signs not opposite

    LabeledGraph bad = mk(4, {{0, 2}, {1, 2}, {0, 1}}, "0000", "-+++");
    REQUIRE_THROWS_AS(omega2_remove(bad, 0, 1), MoveError);  // adjacent but unframed
    LabeledGraph bad2 = mk(4, {{0, 2}, {1, 3}}, "0000", "-+++");
    REQUIRE_THROWS_AS(omega2_remove(bad2, 0, 1), MoveError);  // neighbourhoods differ
}

TEST_CASE("third move semantics on a frozen example") {
    // u=0 adjacent to exactly {v=1, w=2}; extra vertex t=3 adjacent to v only.
    LabeledGraph g = mk(4, {{0, 1}, {0, 2}, {1, 3}}, "0000", "---+");

    LabeledGraph m = omega3(g, 0, 1, 2, true, Omega3Semantics::matrix);
    // N(u) becomes N(v) xor N(w) = {u,t} xor {u} = {t}: u detaches from the site.
    REQUIRE(m.neighbourhood_mask(0) == 0b1000);
    REQUIRE(m.sign(1) == +1);
    REQUIRE(m.sign(2) == +1);
    REQUIRE(m.sign(0) == -1);

    LabeledGraph v = omega3(g, 0, 1, 2, true, Omega3Semantics::verbal);
    // The literal toggle keeps the two site edges: N(u) = {v,w,t}.
    REQUIRE(v.neighbourhood_mask(0) == 0b1110);

    // Both readings invert exactly.
    REQUIRE(omega3(m, 0, 1, 2, false, Omega3Semantics::matrix) == g);
    REQUIRE(omega3(v, 0, 1, 2, false, Omega3Semantics::verbal) == g);

    // The two readings always differ by the {v,w} bits: when the outer pair
    // is adjacent the matrix form keeps u attached to it and the literal
    // toggle detaches u, the reverse of the non-adjacent case above.
    LabeledGraph adj = mk(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}}, "0000", "---+");
    LabeledGraph am = omega3(adj, 0, 1, 2, true, Omega3Semantics::matrix);
    LabeledGraph av = omega3(adj, 0, 1, 2, true, Omega3Semantics::verbal);
    // N(v) xor N(w) = {u,w} xor {u,v,t} = {v,w,t}.
    REQUIRE(am.neighbourhood_mask(0) == 0b1110);
    REQUIRE(av.neighbourhood_mask(0) == 0b1000);
    REQUIRE(omega3(am, 0, 1, 2, false, Omega3Semantics::matrix) == adj);
    REQUIRE(omega3(av, 0, 1, 2, false, Omega3Semantics::verbal) == adj);

    REQUIRE_THROWS_AS(omega3(g, 0, 1, 3, true, Omega3Semantics::matrix), MoveError);
    REQUIRE_THROWS_AS(omega3(mk(3, {{0, 1}, {0, 2}}, "100", "---"), 0, 1, 2, true,
                             Omega3Semantics::matrix),
                      MoveError);  // framed site
    REQUIRE_THROWS_AS(omega3(mk(3, {{0, 1}, {0, 2}}, "000", "--+"), 0, 1, 2, true,
                             Omega3Semantics::matrix),
                      MoveError);  // wrong signs
}

TEST_CASE("fourth move pivots a path") {
    // a=0 - u=1 - v=2 - b=3.
    LabeledGraph g = mk(4, {{0, 1}, {1, 2}, {2, 3}}, "0000", "+-++");
    LabeledGraph p = omega4(g, 1, 2);
    REQUIRE(p.adjacent(0, 3));  // the only toggled pair
    REQUIRE(p.adjacent(0, 1));
    REQUIRE(p.adjacent(1, 2));
    REQUIRE(p.adjacent(2, 3));
    REQUIRE(p.sign(1) == -1);  // (0,a),(0,b) -> (0,-b),(0,-a): a=-1,b=+1
    REQUIRE(p.sign(2) == +1);
    REQUIRE(omega4(p, 1, 2) == g);  // involution

    REQUIRE_THROWS_AS(omega4(g, 0, 2), MoveError);  // not adjacent
    REQUIRE_THROWS_AS(omega4(mk(2, {{0, 1}}, "10", "++"), 0, 1), MoveError);  // framed
}

TEST_CASE("fourth-prime move locally complements at a framed vertex") {
    // Star: p=0 framed, neighbours 1 and 2, bystander 3.
    LabeledGraph g = mk(4, {{0, 1}, {0, 2}}, "1000", "-+++");
    LabeledGraph c = omega4_prime(g, 0);
    REQUIRE(c.adjacent(1, 2));
    REQUIRE(c.adjacent(0, 1));
    REQUIRE(c.adjacent(0, 2));
    REQUIRE_FALSE(c.adjacent(0, 3));
    REQUIRE(c.framing(1) == 1);
    REQUIRE(c.framing(2) == 1);
    REQUIRE(c.framing(0) == 1);
    REQUIRE(c.framing(3) == 0);
    REQUIRE(c.sign(0) == +1);
    REQUIRE(omega4_prime(c, 0) == g);  // involution

    REQUIRE_THROWS_AS(omega4_prime(mk(1, {}, "0", "+"), 0), MoveError);
}

TEST_CASE("every enumerated move applies and inverts") {
    Rng rng(314);
    for (int trial = 0; trial < 25; ++trial) {
        LabeledGraph g = random_graph(5, rng);
        std::vector<MoveSpec> moves = enumerate_moves(g);
        REQUIRE(enumerate_moves(g) == moves);  // deterministic

        for (const MoveSpec& m : moves) {
            LabeledGraph g2 = apply_move(g, m);
            LabeledGraph g3 = apply_move(g2, inverse_of(g, m));
            switch (m.kind) {
                case MoveKind::omega1_remove: {
                    // Removed vertex is re-appended at the end.
                    int n = g.vertex_count(), k = m.site[0];
                    std::vector<int> perm(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i)
                        perm[static_cast<std::size_t>(i)] = i < k ? i : (i == k ? n - 1 : i - 1);
                    REQUIRE(g3 == permuted(g, perm));
                    break;
                }
                case MoveKind::omega2_remove: {
                    // Pair re-appended at the end, sign -1 first.
                    int n = g.vertex_count(), x = m.site[0], y = m.site[1];
                    int neg = g.sign(x) == -1 ? x : y;
                    int pos = neg == x ? y : x;
                    std::vector<int> perm(static_cast<std::size_t>(n));
                    int next = 0;
                    for (int i = 0; i < n; ++i) {
                        if (i == neg)
                            perm[static_cast<std::size_t>(i)] = n - 2;
                        else if (i == pos)
                            perm[static_cast<std::size_t>(i)] = n - 1;
                        else
                            perm[static_cast<std::size_t>(i)] = next++;
                    }
                    REQUIRE(g3 == permuted(g, perm));
                    break;
                }
                default:
                    REQUIRE(g3 == g);
            }
        }
    }
}

TEST_CASE("apply_move validates site arity") {
    LabeledGraph g = mk(3, {}, "000", "+++");
    MoveSpec m;
    m.kind = MoveKind::omega4;
    m.site = {0};
    REQUIRE_THROWS_AS(apply_move(g, m), MoveError);
    m.kind = MoveKind::omega3_forward;
    REQUIRE_THROWS_AS(apply_move(g, m), MoveError);
    m.kind = MoveKind::omega1_remove;
    m.site = {0, 1};
    REQUIRE_THROWS_AS(apply_move(g, m), MoveError);
}
