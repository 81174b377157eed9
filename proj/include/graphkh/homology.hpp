#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "graphkh/bit_matrix.hpp"
#include "graphkh/complex.hpp"
#include "graphkh/errors.hpp"
#include "graphkh/labeled_graph.hpp"

namespace graphkh {

/// Bigraded GF(2) Betti numbers plus the graph data needed to normalize them.
struct BettiTable {
    std::map<std::pair<int, int>, long long> entries;  // (m, q) -> dim, zeros omitted
    int vertex_count = 0;
    long long writhe = 0;
    bool graph_knot = false;

    long long total_dim() const {
        long long t = 0;
        for (const auto& [key, d] : entries) t += d;
        return t;
    }

    long long dim(int m, int q) const {
        auto it = entries.find({m, q});
        return it == entries.end() ? 0 : it->second;
    }

    bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

/// Betti numbers of the complex: per (m, q), dim ker of the outgoing
/// differential minus the rank of the incoming one.
inline BettiTable betti_table(const ChainComplex& c) {
    if (!verify_d_squared(c))
        throw IntegrityError("differential does not square to zero");
    BettiTable t;
    t.vertex_count = c.graph.vertex_count();
    t.writhe = writhe(c.graph);
    t.graph_knot = is_graph_knot(c.graph);
    for (const auto& b : c.buckets) {
        long long n = static_cast<long long>(b.gens.size());
        long long rank_out = 0, rank_in = 0;
        auto out_it = c.differentials.find({b.m, b.q});
        if (out_it != c.differentials.end() && out_it->second.rows() > 0)
            rank_out = static_cast<long long>(rank(out_it->second));
        auto in_it = c.differentials.find({b.m - 1, b.q});
        if (in_it != c.differentials.end() && in_it->second.rows() > 0)
            rank_in = static_cast<long long>(rank(in_it->second));
        long long dim = n - rank_out - rank_in;
        if (dim < 0) throw IntegrityError("negative Betti number");
        if (dim > 0) t.entries[{b.m, b.q}] = dim;
    }
    return t;
}

/// Both supported (M, Q) normalizations shift M by (n + w)/2. They differ in
/// the sign of the Q shift: "paper" adds (n + 3w)/2, "calibrated" subtracts
/// it. Only the calibrated convention is invariant under the moves; see the
/// verification harness.
enum class Normalization { paper, calibrated };

inline BettiTable normalized_table(const BettiTable& t, Normalization norm) {
    long long n = t.vertex_count, w = t.writhe;
    if ((n + w) % 2 != 0)
        throw IntegrityError("normalization needs n + w even; writhe parity is broken");
    long long dm = (n + w) / 2;
    long long dq = (n + 3 * w) / 2;
    if (norm == Normalization::calibrated) dq = -dq;
    BettiTable out = t;
    out.entries.clear();
    for (const auto& [key, d] : t.entries)
        out.entries[{static_cast<int>(key.first - dm), static_cast<int>(key.second + dq)}] = d;
    return out;
}

/// Two-variable Poincare data: coefficient of s^m t^q is the Betti number.
struct PoincarePolynomial {
    std::map<std::pair<int, int>, long long> coeffs;

    std::string to_string() const {
        if (coeffs.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [key, c] : coeffs) {
            if (!first) out << " + ";
            first = false;
            auto [m, q] = key;
            bool printed = false;
            if (c != 1 || (m == 0 && q == 0)) {
                out << c;
                printed = true;
            }
            if (m != 0) {
                if (printed) out << "*";
                out << "s";
                if (m != 1) out << "^" << m;
                printed = true;
            }
            if (q != 0) {
                if (printed) out << "*";
                out << "t";
                if (q != 1) out << "^" << q;
            }
        }
        return out.str();
    }

    bool operator==(const PoincarePolynomial&) const = default;
};

inline PoincarePolynomial poincare_polynomial(const BettiTable& t) {
    PoincarePolynomial p;
    for (const auto& [key, d] : t.entries) p.coeffs[key] = d;
    return p;
}

}  // namespace graphkh
