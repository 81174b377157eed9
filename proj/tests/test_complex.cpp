#include <catch2/catch_amalgamated.hpp>

#include "graphkh/complex.hpp"
#include "graphkh/harness.hpp"
#include "test_util.hpp"

using namespace graphkh;
using testutil::mk;

namespace {
const LabeledGraph kEdge = mk(2, {{0, 1}}, "00", "+-");
}

TEST_CASE("homological grading and edge orientation") {
    REQUIRE(grading_m0(kEdge, State{0b00}) == 1);
    REQUIRE(grading_m0(kEdge, State{0b01}) == 0);
    REQUIRE(grading_m0(kEdge, State{0b10}) == 2);
    REQUIRE(grading_m0(kEdge, State{0b11}) == 1);

    // Sign +1 vertices are sources inside the state; sign -1 outside it.
    REQUIRE(edge_is_source(kEdge, State{0b01}, 0));
    REQUIRE_FALSE(edge_is_source(kEdge, State{0b00}, 0));
    REQUIRE(edge_is_source(kEdge, State{0b00}, 1));
    REQUIRE_FALSE(edge_is_source(kEdge, State{0b10}, 1));

    // Arrows raise m0 by exactly one, on every graph.
    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        LabeledGraph g = random_graph(6, rng);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << 6); ++s)
            for (int i = 0; i < 6; ++i)
                if (edge_is_source(g, State{s}, i))
                    REQUIRE(grading_m0(g, State{s}.toggled(i)) ==
                            grading_m0(g, State{s}) + 1);
    }
}

TEST_CASE("edge classification on frozen examples") {
    REQUIRE(classify_edge(kEdge, State{0b00}, 1) == EdgeType::even_up);
    REQUIRE(classify_edge(kEdge, State{0b01}, 0) == EdgeType::even_down);
    REQUIRE(classify_edge(mk(1, {}, "1", "-"), State{0b0}, 0) == EdgeType::odd);
    REQUIRE_THROWS_AS(classify_edge(kEdge, State{0b00}, 0), Error);  // not the source
}

TEST_CASE("exterior elements and wedges") {
    LabeledGraph g = mk(2, {}, "00", "+-");  // V({v1,v2}) is 2-dimensional
    QuotientSpace sp = quotient_space(g, State{0b11});
    REQUIRE(sp.dim() == 2);

    ExteriorElement one = ExteriorElement::one(sp);
    ExteriorElement x0 = wedge_by_vector(one, 0b01);
    REQUIRE(x0.monomials == std::vector<std::uint64_t>{0b01});
    // (x0 + x1) ^ x0 = x0 x1.
    ExteriorElement sum = wedge_by_vector(one, 0b11);
    REQUIRE(sum.monomials == std::vector<std::uint64_t>{0b01, 0b10});
    ExteriorElement prod = wedge_by_vector(sum, 0b01);
    REQUIRE(prod.monomials == std::vector<std::uint64_t>{0b11});
    // x0 ^ x0 = 0.
    REQUIRE(wedge_by_vector(x0, 0b01).is_zero());
    REQUIRE(wedge_by_vector(one, 0).is_zero());
}

TEST_CASE("edge maps on the worked example") {
    // {v1} -> {} along v1: 1 -> 1, x_{v1} -> 0.
    BitMatrix down = edge_map(kEdge, State{0b01}, 0);
    REQUIRE(down == BitMatrix::from_rows({{1, 0}}));

    // {} -> {v2} along v2: x_{v2} dies in the source, so 1 -> x_{v2}.
    BitMatrix up = edge_map(kEdge, State{0b00}, 1);
    REQUIRE(up == BitMatrix::from_rows({{0}, {1}}));

    // Odd edge: the map is zero.
    REQUIRE(edge_map(mk(1, {}, "1", "-"), State{0b0}, 0) == BitMatrix(1, 1));

    REQUIRE_THROWS_AS(edge_map(kEdge, State{0b00}, 0), Error);
}

TEST_CASE("complex of the worked example") {
    ChainComplex c = build_complex(kEdge);
    REQUIRE(c.total_dim() == 6);
    REQUIRE(c.odd_edge_count == 0);

    std::map<std::pair<int, int>, std::size_t> sizes;
    for (const auto& b : c.buckets) sizes[{b.m, b.q}] = b.gens.size();
    std::map<std::pair<int, int>, std::size_t> expected{
        {{0, -1}, 1}, {{0, 1}, 1}, {{1, 1}, 2}, {{2, 1}, 1}, {{2, 3}, 1}};
    REQUIRE(sizes == expected);

    // d(1_{v1}) = 1_{} + 1_{v1 v2}.
    REQUIRE(c.differentials.at({0, 1}) == BitMatrix::from_rows({{1}, {1}}));
    // d out of (1,1) hits the single generator x_{v2} from both sources.
    REQUIRE(c.differentials.at({1, 1}) == BitMatrix::from_rows({{1, 1}}));
    // Top lanes map nowhere.
    REQUIRE(c.differentials.at({2, 3}).rows() == 0);

    REQUIRE(verify_d_squared(c));

    // Tampering breaks the square.
    ChainComplex broken = build_complex(kEdge);
    broken.differentials.at({0, 1}).flip(0, 0);
    REQUIRE_FALSE(verify_d_squared(broken));
}

TEST_CASE("odd edges produce zero maps and survive in homology") {
    ChainComplex c = build_complex(mk(1, {}, "1", "-"));
    REQUIRE(c.odd_edge_count == 1);
    REQUIRE(c.total_dim() == 2);
    // The zero map never lands in a bucket: the lane below (1,1) is empty.
    REQUIRE(c.differentials.at({0, 0}).rows() == 0);
    REQUIRE(c.bucket_of.count({1, 1}) == 1);
}

TEST_CASE("d squared vanishes on random graphs") {
    Rng rng(77);
    for (int t = 0; t < 15; ++t) {
        int n = 1 + static_cast<int>(rng.below(6));
        REQUIRE(verify_d_squared(build_complex(random_graph(n, rng))));
    }
}

TEST_CASE("parallel build is bit-identical to serial") {
    Rng rng(4242);
    for (int t = 0; t < 4; ++t) {
        LabeledGraph g = random_graph(8, rng);
        BuildOptions serial, parallel;
        parallel.threads = 4;
        ChainComplex a = build_complex(g, serial);
        ChainComplex b = build_complex(g, parallel);
        REQUIRE(a.differentials == b.differentials);
        REQUIRE(a.odd_edge_count == b.odd_edge_count);
        REQUIRE(a.buckets.size() == b.buckets.size());
        for (std::size_t i = 0; i < a.buckets.size(); ++i) {
            REQUIRE(a.buckets[i].m == b.buckets[i].m);
            REQUIRE(a.buckets[i].q == b.buckets[i].q);
            REQUIRE(a.buckets[i].gens == b.buckets[i].gens);
        }
    }
}

TEST_CASE("vertex cap guards the state enumeration") {
    BuildOptions opts;
    opts.max_vertices = 5;
    REQUIRE_THROWS_AS(build_complex(LabeledGraph(6), opts), CapacityError);
    REQUIRE_NOTHROW(build_complex(LabeledGraph(5), opts));
}
