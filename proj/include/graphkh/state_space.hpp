#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "graphkh/bit_matrix.hpp"
#include "graphkh/errors.hpp"
#include "graphkh/labeled_graph.hpp"

namespace graphkh {

/// A state: the subset of vertices smoothed the "other" way, as a bitmask.
struct State {
    std::uint64_t bits = 0;

    State() = default;
    explicit State(std::uint64_t b) : bits(b) {}

    bool contains(int i) const { return (bits >> i) & 1u; }
    State toggled(int i) const { return State(bits ^ (std::uint64_t{1} << i)); }
    int count() const { return std::popcount(bits); }

    bool operator==(const State&) const = default;
};

/// The defining relation rows of V(s): for i in s the i-th row is the i-th row
/// of A restricted to s (framing on the diagonal included); for i outside s it
/// is e_i plus that restriction.
inline BitMatrix relations(const LabeledGraph& g, State s) {
    int n = g.vertex_count();
    if ((s.bits & ~g.vertex_mask()) != 0) throw Error("state contains unknown vertices");
    BitMatrix r(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::uint64_t row = g.neighbourhood_mask(i) & s.bits;
        if (s.contains(i)) {
            if (g.framing(i)) row ^= std::uint64_t{1} << i;
        } else {
            row ^= std::uint64_t{1} << i;
        }
        for (int j = 0; j < n; ++j)
            if ((row >> j) & 1) r.set(i, j, true);
    }
    return r;
}

/// V(s) = GF(2)^n / row space of relations(g, s).
///
/// The relations are eliminated scanning columns outside s first, then columns
/// inside s, both ascending. Every column outside s is forced to be a pivot
/// (x_i for i not in s always reduces into s), so the canonical basis — the
/// non-pivot columns — is a subset of s, and its size is corank A(s).
class QuotientSpace {
  public:
    QuotientSpace() = default;
    QuotientSpace(const LabeledGraph& g, State s) : n_(g.vertex_count()), state_(s) {
        int n = n_;
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::uint64_t row = g.neighbourhood_mask(i) & s.bits;
            if (s.contains(i)) {
                if (g.framing(i)) row ^= std::uint64_t{1} << i;
            } else {
                row ^= std::uint64_t{1} << i;
            }
            rows[static_cast<std::size_t>(i)] = row;
        }

        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c)
            if (!s.contains(c)) order.push_back(c);
        for (int c = 0; c < n; ++c)
            if (s.contains(c)) order.push_back(c);

        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::vector<std::pair<int, int>> pivots;  // (column, row index)
        for (int c : order) {
            int pr = -1;
            for (int r = 0; r < n; ++r)
                if (!used[static_cast<std::size_t>(r)] &&
                    ((rows[static_cast<std::size_t>(r)] >> c) & 1)) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            used[static_cast<std::size_t>(pr)] = 1;
            for (int r = 0; r < n; ++r)
                if (r != pr && ((rows[static_cast<std::size_t>(r)] >> c) & 1))
                    rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(pr)];
            pivots.emplace_back(c, pr);
        }
        elim_.reserve(pivots.size());
        std::uint64_t pivot_mask = 0;
        for (auto [c, r] : pivots) {
            elim_.emplace_back(c, rows[static_cast<std::size_t>(r)]);
            pivot_mask |= std::uint64_t{1} << c;
        }
        for (int c = 0; c < n; ++c)
            if (s.contains(c) && !((pivot_mask >> c) & 1)) basis_cols_.push_back(c);
    }

    int ambient_dim() const { return n_; }
    State state() const { return state_; }
    int dim() const { return static_cast<int>(basis_cols_.size()); }

    /// Ascending list of ambient coordinates that form the canonical basis.
    const std::vector<int>& basis_cols() const { return basis_cols_; }

    /// Reduces an ambient vector (bit i = coefficient of x_i) modulo the
    /// relations; the result is supported on basis_cols only.
    std::uint64_t reduce_ambient(std::uint64_t v) const {
        for (auto [c, row] : elim_)
            if ((v >> c) & 1) v ^= row;
        return v;
    }

    /// Coordinates of the class of an ambient vector: bit k corresponds to
    /// basis_cols()[k].
    std::uint64_t reduce(std::uint64_t v) const {
        v = reduce_ambient(v);
        std::uint64_t out = 0;
        for (std::size_t k = 0; k < basis_cols_.size(); ++k)
            out |= ((v >> basis_cols_[k]) & 1u) << k;
        return out;
    }

    std::uint64_t reduce(const BitVec& v) const {
        if (static_cast<int>(v.size()) != n_) throw ShapeError("reduce: length mismatch");
        std::uint64_t bits = 0;
        for (int i = 0; i < n_; ++i)
            if (v.get(static_cast<std::size_t>(i))) bits |= std::uint64_t{1} << i;
        return reduce(bits);
    }

    /// Whether the class of x_i vanishes in V(s).
    bool generator_is_zero(int i) const {
        if (i < 0 || i >= n_) throw Error("generator index out of range");
        return reduce(std::uint64_t{1} << i) == 0;
    }

  private:
    int n_ = 0;
    State state_;
    std::vector<std::pair<int, std::uint64_t>> elim_;  // (pivot column, reduced row)
    std::vector<int> basis_cols_;
};

inline QuotientSpace quotient_space(const LabeledGraph& g, State s) {
    if ((s.bits & ~g.vertex_mask()) != 0) throw Error("state contains unknown vertices");
    return QuotientSpace(g, s);
}

}  // namespace graphkh
