#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "graphkh/bit_matrix.hpp"
#include "graphkh/errors.hpp"

namespace graphkh {

/// Simple graph whose vertices carry a framing in {0,1} and a sign in {-1,+1}.
/// Vertices are indexed 0..n-1; adjacency is kept as one neighbour bitmask per
/// vertex, so the structural limit is 64 vertices.
class LabeledGraph {
  public:
    static constexpr int kMaxVertices = 64;

    LabeledGraph() = default;
    explicit LabeledGraph(int n) {
        if (n < 0 || n > kMaxVertices)
            throw CapacityError("vertex count must be between 0 and 64");
        n_ = n;
        adj_.assign(static_cast<std::size_t>(n), 0);
    }

    int vertex_count() const { return n_; }

    bool adjacent(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return (adj_[static_cast<std::size_t>(i)] >> j) & 1u;
    }

    void set_edge(int i, int j, bool present) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw Error("loops are not allowed");
        std::uint64_t bi = std::uint64_t{1} << i, bj = std::uint64_t{1} << j;
        if (present) {
            adj_[static_cast<std::size_t>(i)] |= bj;
            adj_[static_cast<std::size_t>(j)] |= bi;
        } else {
            adj_[static_cast<std::size_t>(i)] &= ~bj;
            adj_[static_cast<std::size_t>(j)] &= ~bi;
        }
    }

    void add_edge(int i, int j) { set_edge(i, j, true); }
    void toggle_edge(int i, int j) { set_edge(i, j, !adjacent(i, j)); }

    int framing(int i) const {
        check_vertex(i);
        return (framing_ >> i) & 1u;
    }

    void set_framing(int i, int f) {
        check_vertex(i);
        if (f != 0 && f != 1) throw Error("framing must be 0 or 1");
        framing_ = (framing_ & ~(std::uint64_t{1} << i)) | (static_cast<std::uint64_t>(f) << i);
    }

    /// +1 or -1.
    int sign(int i) const {
        check_vertex(i);
        return ((negative_ >> i) & 1u) ? -1 : +1;
    }

    void set_sign(int i, int s) {
        check_vertex(i);
        if (s != 1 && s != -1) throw Error("sign must be +1 or -1");
        if (s < 0)
            negative_ |= std::uint64_t{1} << i;
        else
            negative_ &= ~(std::uint64_t{1} << i);
    }

    /// Bitmask of neighbours of i.
    std::uint64_t neighbourhood_mask(int i) const {
        check_vertex(i);
        return adj_[static_cast<std::size_t>(i)];
    }

    void set_neighbourhood_mask(int i, std::uint64_t mask) {
        check_vertex(i);
        if (mask >> i & 1) throw Error("loops are not allowed");
        if (n_ < 64 && (mask >> n_) != 0) throw Error("neighbourhood mask out of range");
        for (int j = 0; j < n_; ++j)
            if (j != i) set_edge(i, j, (mask >> j) & 1);
    }

    int degree(int i) const { return std::popcount(neighbourhood_mask(i)); }

    std::uint64_t framing_mask() const { return framing_; }
    std::uint64_t negative_sign_mask() const { return negative_; }
    std::uint64_t vertex_mask() const {
        return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }

    /// Appends a vertex with the given label; returns its index.
    int append_vertex(int framing, int sign) {
        if (n_ == kMaxVertices) throw CapacityError("vertex count would exceed 64");
        adj_.push_back(0);
        ++n_;
        set_framing(n_ - 1, framing);
        set_sign(n_ - 1, sign);
        return n_ - 1;
    }

    /// Removes vertex k; vertices above k are renumbered down by one.
    void remove_vertex(int k) {
        check_vertex(k);
        auto squeeze = [k](std::uint64_t m) {
            std::uint64_t low = m & ((std::uint64_t{1} << k) - 1);
            std::uint64_t high = (k == 63) ? 0 : (m >> (k + 1)) << k;
            return low | high;
        };
        adj_.erase(adj_.begin() + k);
        for (auto& row : adj_) row = squeeze(row);
        framing_ = squeeze(framing_);
        negative_ = squeeze(negative_);
        --n_;
    }

    bool operator==(const LabeledGraph& other) const {
        return n_ == other.n_ && framing_ == other.framing_ &&
               negative_ == other.negative_ && adj_ == other.adj_;
    }

  private:
    void check_vertex(int i) const {
        if (i < 0 || i >= n_)
            throw Error("vertex index " + std::to_string(i) + " out of range");
    }

    int n_ = 0;
    std::uint64_t framing_ = 0;   // bit i = framing of vertex i
    std::uint64_t negative_ = 0;  // bit i set when sign of vertex i is -1
    std::vector<std::uint64_t> adj_;
};

/// Adjacency matrix over GF(2) with the framings on the diagonal.
inline BitMatrix adjacency_matrix(const LabeledGraph& g) {
    int n = g.vertex_count();
    BitMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::uint64_t row = g.neighbourhood_mask(i);
        for (int j = 0; j < n; ++j)
            if ((row >> j) & 1) a.set(i, j, true);
        if (g.framing(i)) a.set(i, i, true);
    }
    return a;
}

/// w(G) = sum_i (-1)^{corank(A + E + E_ii)} sign(v_i), where E is the identity.
inline long long writhe(const LabeledGraph& g) {
    int n = g.vertex_count();
    BitMatrix a = adjacency_matrix(g);
    BitMatrix b = a;
    for (int j = 0; j < n; ++j) b.flip(j, j);  // A + E
    long long w = 0;
    for (int i = 0; i < n; ++i) {
        b.flip(i, i);  // A + E + E_ii
        std::size_t cor = corank(b);
        b.flip(i, i);
        w += (cor % 2 == 0 ? 1 : -1) * g.sign(i);
    }
    return w;
}

/// A graph presents a single-component link exactly when A + E is invertible.
inline bool is_graph_knot(const LabeledGraph& g) {
    int n = g.vertex_count();
    BitMatrix b = adjacency_matrix(g);
    for (int j = 0; j < n; ++j) b.flip(j, j);
    return corank(b) == 0;
}

}  // namespace graphkh
