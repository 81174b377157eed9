#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "graphkh/bit_matrix.hpp"
#include "graphkh/errors.hpp"
#include "graphkh/labeled_graph.hpp"
#include "graphkh/state_space.hpp"

namespace graphkh {

/// Homological grading of a state: vertices in s with sign -1 plus vertices
/// outside s with sign +1. Each hypercube arrow raises it by exactly one.
inline int grading_m0(const LabeledGraph& g, State s) {
    std::uint64_t neg = g.negative_sign_mask(), all = g.vertex_mask();
    return std::popcount(s.bits & neg) + std::popcount(~s.bits & ~neg & all);
}

/// Whether s is the source of the hypercube edge {s, s^i}: sources put
/// sign -1 vertices outside the state and sign +1 vertices inside it.
inline bool edge_is_source(const LabeledGraph& g, State s, int i) {
    return g.sign(i) == -1 ? !s.contains(i) : s.contains(i);
}

enum class EdgeType { even_up, even_down, odd };

namespace detail {

/// Classification from the two membership tests, with the dimension laws
/// enforced: x_i nonzero on both sides never happens, and the even cases move
/// the dimension by exactly one.
inline EdgeType classify_edge_spaces(const QuotientSpace& src, const QuotientSpace& tgt, int i) {
    bool zs = src.generator_is_zero(i), zt = tgt.generator_is_zero(i);
    if (!zs && !zt)
        throw IntegrityError("edge classification: x_i nonzero in both endpoint spaces");
    if (zs && zt) {
        if (src.dim() != tgt.dim())
            throw IntegrityError("odd edge with unequal endpoint dimensions");
        return EdgeType::odd;
    }
    if (zs) {
        if (tgt.dim() != src.dim() + 1)
            throw IntegrityError("even-up edge without dimension increase");
        return EdgeType::even_up;
    }
    if (src.dim() != tgt.dim() + 1)
        throw IntegrityError("even-down edge without dimension decrease");
    return EdgeType::even_down;
}

}  // namespace detail

/// Classifies the oriented edge from s to s^i (s must be the source).
inline EdgeType classify_edge(const LabeledGraph& g, State s, int i) {
    if (!edge_is_source(g, s, i)) throw Error("classify_edge: s is not the source of this edge");
    return detail::classify_edge_spaces(quotient_space(g, s), quotient_space(g, s.toggled(i)),
                                        i);
}

/// Quantum grading of an exterior-degree-r generator over V(s).
inline int q_grading(const QuotientSpace& sp, int r, int m0) { return sp.dim() - 2 * r + m0; }

/// An element of the exterior algebra of a quotient space: a GF(2) sum of
/// monomials, each a bitmask over basis positions. Kept sorted and duplicate
/// free (duplicates cancel mod 2).
struct ExteriorElement {
    const QuotientSpace* space = nullptr;
    std::vector<std::uint64_t> monomials;

    static ExteriorElement one(const QuotientSpace& sp) {
        ExteriorElement e;
        e.space = &sp;
        e.monomials = {0};
        return e;
    }

    bool is_zero() const { return monomials.empty(); }

    void canonicalize() {
        std::sort(monomials.begin(), monomials.end());
        std::vector<std::uint64_t> out;
        for (std::size_t i = 0; i < monomials.size();) {
            std::size_t j = i;
            while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
            if ((j - i) % 2) out.push_back(monomials[i]);
            i = j;
        }
        monomials = std::move(out);
    }
};

/// Wedge on the left by a vector given in basis coordinates. Over GF(2) the
/// exterior product is commutative, so monomials are plain subsets.
inline ExteriorElement wedge_by_vector(const ExteriorElement& e, std::uint64_t coords) {
    ExteriorElement out;
    out.space = e.space;
    if (coords == 0) return out;
    for (std::uint64_t mono : e.monomials) {
        std::uint64_t free_bits = coords & ~mono;
        while (free_bits) {
            std::uint64_t b = free_bits & (~free_bits + 1);
            out.monomials.push_back(mono | b);
            free_bits ^= b;
        }
    }
    out.canonicalize();
    return out;
}

namespace detail {

/// Image of a source basis monomial along the oriented edge s -> s^i, as a
/// canonical monomial list over the target basis. Implements the edge map:
/// lift every factor, prepend e_i when x_i dies in the source, push all
/// factors into the target space, and wedge there. Odd edges come out zero
/// automatically because the prepended e_i reduces to zero in the target.
inline std::vector<std::uint64_t> edge_image_of_monomial(const QuotientSpace& src,
                                                         const QuotientSpace& tgt, int i,
                                                         std::uint64_t mono) {
    ExteriorElement acc = ExteriorElement::one(tgt);
    if (src.generator_is_zero(i)) {
        acc = wedge_by_vector(acc, tgt.reduce(std::uint64_t{1} << i));
        if (acc.is_zero()) return {};
    }
    const auto& cols = src.basis_cols();
    std::uint64_t rest = mono;
    while (rest) {
        int k = std::countr_zero(rest);
        rest &= rest - 1;
        acc = wedge_by_vector(acc, tgt.reduce(std::uint64_t{1} << cols[static_cast<std::size_t>(k)]));
        if (acc.is_zero()) return {};
    }
    return acc.monomials;
}

}  // namespace detail

/// The full edge map on exterior algebras as a GF(2) matrix over the monomial
/// bases (all exterior degrees, monomial masks ascending on both sides).
inline BitMatrix edge_map(const LabeledGraph& g, State s, int i) {
    if (!edge_is_source(g, s, i)) throw Error("edge_map: s is not the source of this edge");
    QuotientSpace src = quotient_space(g, s);
    QuotientSpace tgt = quotient_space(g, s.toggled(i));
    detail::classify_edge_spaces(src, tgt, i);
    std::size_t ds = std::uint64_t{1} << src.dim(), dt = std::uint64_t{1} << tgt.dim();
    BitMatrix m(dt, ds);
    for (std::uint64_t mono = 0; mono < ds; ++mono)
        for (std::uint64_t img : detail::edge_image_of_monomial(src, tgt, i, mono))
            m.set(img, mono, true);
    return m;
}

/// One basis element of the chain complex: a state plus an exterior monomial
/// over the canonical basis of V(state).
struct ChainGenerator {
    std::uint64_t state;
    std::uint64_t monomial;

    bool operator==(const ChainGenerator&) const = default;
};

struct BuildOptions {
    int max_vertices = 20;  // guard against accidental 2^n blowups
    unsigned threads = 1;   // >1 enables the deterministic parallel path
};

/// The bigraded chain complex of a labeled graph. Generators are bucketed by
/// (m, q); differentials are stored per source bucket and map into the bucket
/// at (m+1, q). Within a bucket generators are ordered by ascending state
/// bitmask, then ascending monomial mask.
struct ChainComplex {
    LabeledGraph graph;
    std::vector<QuotientSpace> spaces;  // indexed by state bitmask
    std::vector<int> m0;                // indexed by state bitmask

    struct Bucket {
        int m, q;
        std::vector<ChainGenerator> gens;
    };
    std::vector<Bucket> buckets;  // sorted by (m, q)
    std::map<std::pair<int, int>, std::size_t> bucket_of;
    std::map<std::pair<int, int>, BitMatrix> differentials;  // keyed by source (m, q)
    std::size_t odd_edge_count = 0;

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& b : buckets) t += b.gens.size();
        return t;
    }

    /// Position of a generator inside its bucket.
    std::size_t index_in_bucket(const Bucket& b, ChainGenerator gen) const {
        auto it = std::lower_bound(b.gens.begin(), b.gens.end(), gen,
                                   [](const ChainGenerator& a, const ChainGenerator& c) {
                                       return a.state != c.state ? a.state < c.state
                                                                 : a.monomial < c.monomial;
                                   });
        if (it == b.gens.end() || !(*it == gen))
            throw IntegrityError("generator not found in its bucket");
        return static_cast<std::size_t>(it - b.gens.begin());
    }
};

namespace detail {

template <typename Fn>
inline void run_chunked(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([=, &fn, &errors] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Builds the full complex. The parallel path computes per-state spaces and
/// per-bucket differentials in parallel; every result is written to a slot
/// that only depends on the input, so any thread count produces bit-identical
/// output.
inline ChainComplex build_complex(const LabeledGraph& g, const BuildOptions& opts = {}) {
    int n = g.vertex_count();
    if (n > opts.max_vertices)
        throw CapacityError("complex construction capped at " +
                            std::to_string(opts.max_vertices) + " vertices (got " +
                            std::to_string(n) + ")");

    ChainComplex c;
    c.graph = g;
    std::size_t num_states = std::uint64_t{1} << n;
    c.spaces.resize(num_states);
    c.m0.resize(num_states);
    detail::run_chunked(num_states, opts.threads, [&](std::size_t s) {
        c.spaces[s] = QuotientSpace(g, State(s));
        c.m0[s] = grading_m0(g, State(s));
    });

    std::map<std::pair<int, int>, std::vector<ChainGenerator>> gens;
    for (std::size_t s = 0; s < num_states; ++s) {
        int dim = c.spaces[s].dim();
        int m = c.m0[s];
        for (std::uint64_t mono = 0; mono < (std::uint64_t{1} << dim); ++mono) {
            int q = q_grading(c.spaces[s], std::popcount(mono), m);
            gens[{m, q}].push_back({s, mono});
        }
    }
    c.buckets.reserve(gens.size());
    for (auto& [key, list] : gens) {
        c.bucket_of[key] = c.buckets.size();
        c.buckets.push_back({key.first, key.second, std::move(list)});
    }

    // Pre-classify every oriented edge once (and enforce the trichotomy).
    std::vector<std::vector<EdgeType>> edge_type(num_states);
    std::vector<std::size_t> odd_counts(num_states, 0);
    detail::run_chunked(num_states, opts.threads, [&](std::size_t s) {
        auto& types = edge_type[s];
        types.assign(static_cast<std::size_t>(n), EdgeType::odd);
        for (int i = 0; i < n; ++i) {
            if (!edge_is_source(g, State(s), i)) continue;
            std::size_t t = s ^ (std::uint64_t{1} << i);
            types[static_cast<std::size_t>(i)] =
                detail::classify_edge_spaces(c.spaces[s], c.spaces[t], i);
            if (types[static_cast<std::size_t>(i)] == EdgeType::odd) ++odd_counts[s];
        }
    });
    for (std::size_t s = 0; s < num_states; ++s) c.odd_edge_count += odd_counts[s];

    std::vector<BitMatrix> mats(c.buckets.size());
    detail::run_chunked(c.buckets.size(), opts.threads, [&](std::size_t bi) {
        const auto& b = c.buckets[bi];
        auto tgt_it = c.bucket_of.find({b.m + 1, b.q});
        const ChainComplex::Bucket* tgt =
            tgt_it == c.bucket_of.end() ? nullptr : &c.buckets[tgt_it->second];
        BitMatrix mat(tgt ? tgt->gens.size() : 0, b.gens.size());
        if (tgt) {
            for (std::size_t col = 0; col < b.gens.size(); ++col) {
                const ChainGenerator& gen = b.gens[col];
                for (int i = 0; i < n; ++i) {
                    if (!edge_is_source(g, State(gen.state), i)) continue;
                    if (edge_type[gen.state][static_cast<std::size_t>(i)] == EdgeType::odd)
                        continue;
                    std::uint64_t t = gen.state ^ (std::uint64_t{1} << i);
                    for (std::uint64_t img : detail::edge_image_of_monomial(
                             c.spaces[gen.state], c.spaces[t], i, gen.monomial))
                        mat.set(c.index_in_bucket(*tgt, {t, img}), col, true);
                }
            }
        }
        mats[bi] = std::move(mat);
    });
    for (std::size_t bi = 0; bi < c.buckets.size(); ++bi)
        c.differentials[{c.buckets[bi].m, c.buckets[bi].q}] = std::move(mats[bi]);
    return c;
}

/// Checks that consecutive differentials compose to zero in every (m, q) lane.
inline bool verify_d_squared(const ChainComplex& c) {
    for (const auto& [key, d1] : c.differentials) {
        auto next = c.differentials.find({key.first + 1, key.second});
        if (next == c.differentials.end()) continue;
        const BitMatrix& d2 = next->second;
        if (d2.cols() != d1.rows()) throw IntegrityError("differential shapes disagree");
        if (d2.rows() == 0 || d1.cols() == 0) continue;
        if (!multiply(d2, d1).is_zero()) return false;
    }
    return true;
}

}  // namespace graphkh
