#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "graphkh/errors.hpp"
#include "graphkh/labeled_graph.hpp"

namespace graphkh {

enum class MoveKind {
    omega1_add,
    omega1_remove,
    omega2_add,
    omega2_remove,
    omega3_forward,
    omega3_inverse,
    omega4,
    omega4_prime,
};

/// The third move exists in two readings. The "matrix" form replaces the
/// middle vertex's neighbourhood with the symmetric difference of the outer
/// neighbourhoods, so the middle vertex stays tied to the outer pair exactly
/// when the outer vertices are adjacent to each other. The "verbal" form
/// literally toggles the middle vertex's adjacency with that symmetric
/// difference, which lands on the opposite attachment in both variants. Only
/// the matrix form preserves homology; both are implemented so the
/// verification harness can demonstrate the difference.
enum class Omega3Semantics { matrix, verbal };

inline const char* kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::omega1_add: return "omega1-add";
        case MoveKind::omega1_remove: return "omega1-remove";
        case MoveKind::omega2_add: return "omega2-add";
        case MoveKind::omega2_remove: return "omega2-remove";
        case MoveKind::omega3_forward: return "omega3-forward";
        case MoveKind::omega3_inverse: return "omega3-inverse";
        case MoveKind::omega4: return "omega4";
        case MoveKind::omega4_prime: return "omega4-prime";
    }
    return "?";
}

/// A move instance: the kind plus whatever parameters locate it. Vertex
/// indices are 0-based in memory and 1-based in the text form.
struct MoveSpec {
    MoveKind kind;
    std::vector<int> site;              // vertices the move acts on, pre-move numbering
    int sign = +1;                      // omega1-add only
    std::uint64_t neighbourhood = 0;    // omega2-add only
    bool framed = false;                // omega2-add only
    Omega3Semantics semantics = Omega3Semantics::matrix;

    bool operator==(const MoveSpec& o) const {
        return kind == o.kind && site == o.site && sign == o.sign &&
               neighbourhood == o.neighbourhood && framed == o.framed &&
               semantics == o.semantics;
    }

    std::string to_string() const {
        std::ostringstream out;
        auto sites = [&] {
            for (std::size_t i = 0; i < site.size(); ++i)
                out << (i ? "," : "") << site[i] + 1;
        };
        switch (kind) {
            case MoveKind::omega1_add:
                out << "o1add:" << (sign > 0 ? '+' : '-');
                break;
            case MoveKind::omega1_remove:
                out << "o1rem:";
                sites();
                break;
            case MoveKind::omega2_add: {
                out << "o2add:" << (framed ? 'f' : 'u') << ':';
                bool any = false;
                for (int j = 0; j < 64; ++j)
                    if ((neighbourhood >> j) & 1) {
                        out << (any ? "," : "") << j + 1;
                        any = true;
                    }
                if (!any) out << '-';
                break;
            }
            case MoveKind::omega2_remove:
                out << "o2rem:";
                sites();
                break;
            case MoveKind::omega3_forward:
            case MoveKind::omega3_inverse:
                out << (kind == MoveKind::omega3_forward ? "o3f:" : "o3i:");
                sites();
                out << (semantics == Omega3Semantics::matrix ? ":matrix" : ":verbal");
                break;
            case MoveKind::omega4:
                out << "o4:";
                sites();
                break;
            case MoveKind::omega4_prime:
                out << "o4p:";
                sites();
                break;
        }
        return out.str();
    }

    /// Parses the text form produced by to_string (semantics tag optional).
    static MoveSpec parse(const std::string& text) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : text) {
            if (c == ':') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);

        auto fail = [&](const std::string& why) -> ParseError {
            return ParseError(0, "move spec '" + text + "': " + why);
        };
        auto parse_indices = [&](const std::string& s, std::size_t want) {
            std::vector<int> out;
            std::string tok;
            std::istringstream in(s);
            while (std::getline(in, tok, ',')) {
                try {
                    std::size_t used = 0;
                    int v = std::stoi(tok, &used);
                    if (used != tok.size() || v < 1) throw std::invalid_argument("");
                    out.push_back(v - 1);
                } catch (const std::exception&) {
                    throw fail("bad vertex index '" + tok + "'");
                }
            }
            if (want != 0 && out.size() != want)
                throw fail("expected " + std::to_string(want) + " vertex indices");
            return out;
        };

        MoveSpec m;
        const std::string& head = parts[0];
        if (head == "o1add") {
            if (parts.size() != 2 || (parts[1] != "+" && parts[1] != "-"))
                throw fail("expected o1add:+ or o1add:-");
            m.kind = MoveKind::omega1_add;
            m.sign = parts[1] == "+" ? +1 : -1;
        } else if (head == "o1rem") {
            if (parts.size() != 2) throw fail("expected o1rem:<k>");
            m.kind = MoveKind::omega1_remove;
            m.site = parse_indices(parts[1], 1);
        } else if (head == "o2add") {
            if (parts.size() != 3 || (parts[1] != "u" && parts[1] != "f"))
                throw fail("expected o2add:<u|f>:<neighbours or ->");
            m.kind = MoveKind::omega2_add;
            m.framed = parts[1] == "f";
            if (parts[2] != "-")
                for (int j : parse_indices(parts[2], 0)) {
                    if (j >= 64) throw fail("vertex index out of range");
                    m.neighbourhood |= std::uint64_t{1} << j;
                }
        } else if (head == "o2rem") {
            if (parts.size() != 2) throw fail("expected o2rem:<i>,<j>");
            m.kind = MoveKind::omega2_remove;
            m.site = parse_indices(parts[1], 2);
        } else if (head == "o3f" || head == "o3i") {
            if (parts.size() != 2 && parts.size() != 3)
                throw fail("expected o3f:<u>,<v>,<w>[:matrix|verbal]");
            m.kind = head == "o3f" ? MoveKind::omega3_forward : MoveKind::omega3_inverse;
            m.site = parse_indices(parts[1], 3);
            if (parts.size() == 3) {
                if (parts[2] == "matrix")
                    m.semantics = Omega3Semantics::matrix;
                else if (parts[2] == "verbal")
                    m.semantics = Omega3Semantics::verbal;
                else
                    throw fail("semantics must be 'matrix' or 'verbal'");
            }
        } else if (head == "o4") {
            if (parts.size() != 2) throw fail("expected o4:<u>,<v>");
            m.kind = MoveKind::omega4;
            m.site = parse_indices(parts[1], 2);
        } else if (head == "o4p") {
            if (parts.size() != 2) throw fail("expected o4p:<v>");
            m.kind = MoveKind::omega4_prime;
            m.site = parse_indices(parts[1], 1);
        } else {
            throw fail("unknown move kind '" + head + "'");
        }
        return m;
    }
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw MoveError(what);
}

inline void require_distinct_vertices(const LabeledGraph& g, const std::vector<int>& site,
                                      const char* move) {
    for (std::size_t i = 0; i < site.size(); ++i) {
        require(site[i] >= 0 && site[i] < g.vertex_count(),
                std::string(move) + ": vertex index out of range");
        for (std::size_t j = i + 1; j < site.size(); ++j)
            require(site[i] != site[j], std::string(move) + ": site vertices must be distinct");
    }
}

}  // namespace detail

/// First move, adding direction: a fresh isolated vertex labeled (0, sign).
inline LabeledGraph omega1_add(const LabeledGraph& g, int sign) {
    detail::require(sign == 1 || sign == -1, "omega1-add: sign must be +1 or -1");
    LabeledGraph out = g;
    out.append_vertex(0, sign);
    return out;
}

/// First move, removing direction: deletes an isolated framing-0 vertex.
inline LabeledGraph omega1_remove(const LabeledGraph& g, int k) {
    detail::require_distinct_vertices(g, {k}, "omega1-remove");
    detail::require(g.degree(k) == 0, "omega1-remove: vertex is not isolated");
    detail::require(g.framing(k) == 0, "omega1-remove: vertex has framing 1");
    LabeledGraph out = g;
    out.remove_vertex(k);
    return out;
}

/// Second move, adding direction: appends a twin pair with the given common
/// neighbourhood. Unframed variant: labels (0,-1),(0,+1), no mutual edge.
/// Framed variant: labels (1,-1),(1,+1) plus a mutual edge.
inline LabeledGraph omega2_add(const LabeledGraph& g, std::uint64_t neighbourhood, bool framed) {
    detail::require((neighbourhood & ~g.vertex_mask()) == 0,
                    "omega2-add: neighbourhood contains unknown vertices");
    LabeledGraph out = g;
    int v = out.append_vertex(framed ? 1 : 0, -1);
    int w = out.append_vertex(framed ? 1 : 0, +1);
    for (int j = 0; j < g.vertex_count(); ++j)
        if ((neighbourhood >> j) & 1) {
            out.add_edge(v, j);
            out.add_edge(w, j);
        }
    if (framed) out.add_edge(v, w);
    return out;
}

/// Second move, removing direction: deletes a twin pair. The two vertices must
/// share their neighbourhood away from each other, carry opposite signs and
/// equal framings, and be adjacent exactly when framed.
inline LabeledGraph omega2_remove(const LabeledGraph& g, int x, int y) {
    detail::require_distinct_vertices(g, {x, y}, "omega2-remove");
    detail::require(g.framing(x) == g.framing(y), "omega2-remove: framings differ");
    detail::require(g.sign(x) + g.sign(y) == 0, "omega2-remove: signs must be -1 and +1");
    bool framed = g.framing(x) == 1;
    detail::require(g.adjacent(x, y) == framed,
                    framed ? "omega2-remove: framed pair must be adjacent"
                           : "omega2-remove: unframed pair must be non-adjacent");
    std::uint64_t other = ~((std::uint64_t{1} << x) | (std::uint64_t{1} << y));
    detail::require((g.neighbourhood_mask(x) & other) == (g.neighbourhood_mask(y) & other),
                    "omega2-remove: neighbourhoods differ away from the pair");
    LabeledGraph out = g;
    out.remove_vertex(std::max(x, y));
    out.remove_vertex(std::min(x, y));
    return out;
}

/// Third move. Forward direction site: u adjacent to exactly {v,w} and all
/// three vertices labeled (0,-1). See Omega3Semantics for the two readings.
inline LabeledGraph omega3(const LabeledGraph& g, int u, int v, int w, bool forward,
                           Omega3Semantics semantics = Omega3Semantics::matrix) {
    detail::require_distinct_vertices(g, {u, v, w}, "omega3");
    for (int t : {u, v, w})
        detail::require(g.framing(t) == 0, "omega3: site vertices must have framing 0");
    std::uint64_t pair_bits = (std::uint64_t{1} << v) | (std::uint64_t{1} << w);
    std::uint64_t delta = g.neighbourhood_mask(v) ^ g.neighbourhood_mask(w);

    LabeledGraph out = g;
    if (forward) {
        detail::require(g.sign(u) == -1 && g.sign(v) == -1 && g.sign(w) == -1,
                        "omega3-forward: site vertices must have sign -1");
        detail::require(g.neighbourhood_mask(u) == pair_bits,
                        "omega3-forward: middle vertex must be adjacent to exactly the outer pair");
        if (semantics == Omega3Semantics::matrix)
            out.set_neighbourhood_mask(u, delta);
        else
            out.set_neighbourhood_mask(u, g.neighbourhood_mask(u) ^ delta);
        out.set_sign(v, +1);
        out.set_sign(w, +1);
    } else {
        detail::require(g.sign(u) == -1 && g.sign(v) == +1 && g.sign(w) == +1,
                        "omega3-inverse: expected signs (-1,+1,+1)");
        if (semantics == Omega3Semantics::matrix)
            detail::require(g.neighbourhood_mask(u) == delta,
                            "omega3-inverse: middle neighbourhood is not the outer symmetric "
                            "difference");
        else
            detail::require((g.neighbourhood_mask(u) ^ delta) == pair_bits,
                            "omega3-inverse: toggling the outer symmetric difference does not "
                            "restore the site");
        out.set_neighbourhood_mask(u, pair_bits);
        out.set_sign(v, -1);
        out.set_sign(w, -1);
    }
    return out;
}

/// Fourth move (pivot): for an adjacent framing-0 pair (u,v), every pair of
/// other vertices {i,j} toggles adjacency when a_iu a_jv + a_iv a_ju = 1, and
/// the labels (0,a),(0,b) become (0,-b),(0,-a). An involution.
inline LabeledGraph omega4(const LabeledGraph& g, int u, int v) {
    detail::require_distinct_vertices(g, {u, v}, "omega4");
    detail::require(g.adjacent(u, v), "omega4: vertices must be adjacent");
    detail::require(g.framing(u) == 0 && g.framing(v) == 0,
                    "omega4: vertices must have framing 0");
    std::uint64_t nu = g.neighbourhood_mask(u), nv = g.neighbourhood_mask(v);
    LabeledGraph out = g;
    int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
        if (i == u || i == v) continue;
        bool iu = (nu >> i) & 1, iv = (nv >> i) & 1;
        if (!iu && !iv) continue;
        for (int j = i + 1; j < n; ++j) {
            if (j == u || j == v) continue;
            bool ju = (nu >> j) & 1, jv = (nv >> j) & 1;
            if ((iu && jv) != (iv && ju)) out.toggle_edge(i, j);
        }
    }
    int a = g.sign(u), b = g.sign(v);
    out.set_sign(u, -b);
    out.set_sign(v, -a);
    return out;
}

/// Fourth-prime move (local complementation at a framing-1 vertex): toggles
/// every pair of its neighbours, toggles each neighbour's framing, and flips
/// its own sign. An involution.
inline LabeledGraph omega4_prime(const LabeledGraph& g, int p) {
    detail::require_distinct_vertices(g, {p}, "omega4-prime");
    detail::require(g.framing(p) == 1, "omega4-prime: vertex must have framing 1");
    std::uint64_t np = g.neighbourhood_mask(p);
    LabeledGraph out = g;
    int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
        if (!((np >> i) & 1)) continue;
        out.set_framing(i, 1 - g.framing(i));
        for (int j = i + 1; j < n; ++j)
            if ((np >> j) & 1) out.toggle_edge(i, j);
    }
    out.set_sign(p, -g.sign(p));
    return out;
}

/// Applies any move described by a MoveSpec.
inline LabeledGraph apply_move(const LabeledGraph& g, const MoveSpec& m) {
    switch (m.kind) {
        case MoveKind::omega1_add:
            return omega1_add(g, m.sign);
        case MoveKind::omega1_remove:
            detail::require(m.site.size() == 1, "omega1-remove: expected one site vertex");
            return omega1_remove(g, m.site[0]);
        case MoveKind::omega2_add:
            return omega2_add(g, m.neighbourhood, m.framed);
        case MoveKind::omega2_remove:
            detail::require(m.site.size() == 2, "omega2-remove: expected two site vertices");
            return omega2_remove(g, m.site[0], m.site[1]);
        case MoveKind::omega3_forward:
        case MoveKind::omega3_inverse:
            detail::require(m.site.size() == 3, "omega3: expected three site vertices");
            return omega3(g, m.site[0], m.site[1], m.site[2],
                          m.kind == MoveKind::omega3_forward, m.semantics);
        case MoveKind::omega4:
            detail::require(m.site.size() == 2, "omega4: expected two site vertices");
            return omega4(g, m.site[0], m.site[1]);
        case MoveKind::omega4_prime:
            detail::require(m.site.size() == 1, "omega4-prime: expected one site vertex");
            return omega4_prime(g, m.site[0]);
    }
    throw MoveError("unknown move kind");
}

/// The move that undoes `m` when applied to apply_move(g, m). For removals the
/// composition restores the graph only up to the index renumbering documented
/// on remove_vertex (the re-added vertices land at the end).
inline MoveSpec inverse_of(const LabeledGraph& g_before, const MoveSpec& m) {
    int n = g_before.vertex_count();
    MoveSpec inv;
    switch (m.kind) {
        case MoveKind::omega1_add:
            inv.kind = MoveKind::omega1_remove;
            inv.site = {n};
            return inv;
        case MoveKind::omega1_remove:
            inv.kind = MoveKind::omega1_add;
            inv.sign = g_before.sign(m.site.at(0));
            return inv;
        case MoveKind::omega2_add:
            inv.kind = MoveKind::omega2_remove;
            inv.site = {n, n + 1};
            return inv;
        case MoveKind::omega2_remove: {
            inv.kind = MoveKind::omega2_add;
            int x = m.site.at(0), y = m.site.at(1);
            inv.framed = g_before.framing(x) == 1;
            std::uint64_t keep = g_before.neighbourhood_mask(x) &
                                 ~((std::uint64_t{1} << x) | (std::uint64_t{1} << y));
            // removal renumbers: drop the two site bits out of the mask
            std::uint64_t mask = 0;
            for (int j = 0, out_j = 0; j < n; ++j) {
                if (j == x || j == y) continue;
                if ((keep >> j) & 1) mask |= std::uint64_t{1} << out_j;
                ++out_j;
            }
            inv.neighbourhood = mask;
            return inv;
        }
        case MoveKind::omega3_forward:
        case MoveKind::omega3_inverse:
            inv = m;
            inv.kind = m.kind == MoveKind::omega3_forward ? MoveKind::omega3_inverse
                                                          : MoveKind::omega3_forward;
            return inv;
        case MoveKind::omega4:
        case MoveKind::omega4_prime:
            return m;  // involutions
    }
    throw MoveError("unknown move kind");
}

/// All applicable removing/forward/inverse sites, plus a canonical bounded set
/// of adding moves (both omega1 signs; omega2 with the empty neighbourhood and
/// each single-vertex neighbourhood, both variants). Deterministic order.
inline std::vector<MoveSpec> enumerate_moves(const LabeledGraph& g) {
    int n = g.vertex_count();
    std::vector<MoveSpec> out;
    auto push = [&](MoveSpec m) { out.push_back(std::move(m)); };

    for (int s : {+1, -1}) {
        MoveSpec m;
        m.kind = MoveKind::omega1_add;
        m.sign = s;
        push(m);
    }
    for (bool framed : {false, true}) {
        MoveSpec m;
        m.kind = MoveKind::omega2_add;
        m.framed = framed;
        push(m);
    }
    for (int t = 0; t < n; ++t)
        for (bool framed : {false, true}) {
            MoveSpec m;
            m.kind = MoveKind::omega2_add;
            m.neighbourhood = std::uint64_t{1} << t;
            m.framed = framed;
            push(m);
        }
    for (int k = 0; k < n; ++k)
        if (g.degree(k) == 0 && g.framing(k) == 0) {
            MoveSpec m;
            m.kind = MoveKind::omega1_remove;
            m.site = {k};
            push(m);
        }
    auto applies = [&](const MoveSpec& m) {
        try {
            apply_move(g, m);
            return true;
        } catch (const MoveError&) {
            return false;
        }
    };
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            MoveSpec m;
            m.kind = MoveKind::omega2_remove;
            m.site = {x, y};
            if (applies(m)) push(m);
        }
    for (MoveKind kind : {MoveKind::omega3_forward, MoveKind::omega3_inverse})
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (v == u) continue;
                for (int w = v + 1; w < n; ++w) {
                    if (w == u) continue;
                    MoveSpec m;
                    m.kind = kind;
                    m.site = {u, v, w};
                    if (applies(m)) push(m);
                }
            }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.adjacent(u, v) && g.framing(u) == 0 && g.framing(v) == 0) {
                MoveSpec m;
                m.kind = MoveKind::omega4;
                m.site = {u, v};
                push(m);
            }
    for (int p = 0; p < n; ++p)
        if (g.framing(p) == 1) {
            MoveSpec m;
            m.kind = MoveKind::omega4_prime;
            m.site = {p};
            push(m);
        }
    return out;
}

}  // namespace graphkh
