#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphkh/errors.hpp"
#include "graphkh/harness.hpp"
#include "graphkh/homology.hpp"
#include "graphkh/labeled_graph.hpp"
#include "graphkh/laurent.hpp"
#include "graphkh/moves.hpp"

namespace graphkh {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// .gl text format.
//
//   # comment (anywhere; rest of line ignored)
//   n <count>              exactly once, before any v/e line
//   v <idx> <framing> <sign>   framing 0|1, sign +|-|+1|-1; defaults (0,+1)
//   e <i> <j>              undirected edge, no loops, duplicates allowed
//
// All vertex indices are 1-based. Canonical output: the n line, every v line
// in index order with +/- sign tokens, then e lines with i<j in ascending
// order; no comments, trailing newline.
// ---------------------------------------------------------------------------

inline LabeledGraph parse_gl(std::istream& in) {
    LabeledGraph g;
    bool have_n = false;
    std::vector<bool> labeled;
    std::string raw;
    int lineno = 0;

    auto fail = [&](const std::string& why) -> ParseError { return ParseError(lineno, why); };
    auto parse_int = [&](const std::string& tok, const char* what) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw fail(std::string("expected ") + what + ", got '" + tok + "'");
        }
    };
    auto vertex_index = [&](const std::string& tok) {
        int v = parse_int(tok, "a vertex index");
        if (v < 1 || v > g.vertex_count())
            throw fail("vertex index " + tok + " out of range 1.." +
                       std::to_string(g.vertex_count()));
        return v - 1;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::vector<std::string> tok;
        for (std::string t; line >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok[0] == "n") {
            if (have_n) throw fail("duplicate n line");
            if (tok.size() != 2) throw fail("expected: n <count>");
            int n = parse_int(tok[1], "a vertex count");
            if (n < 0 || n > LabeledGraph::kMaxVertices)
                throw fail("vertex count must be between 0 and " +
                           std::to_string(LabeledGraph::kMaxVertices));
            g = LabeledGraph(n);
            labeled.assign(static_cast<std::size_t>(n), false);
            have_n = true;
        } else if (tok[0] == "v") {
            if (!have_n) throw fail("v line before n line");
            if (tok.size() != 4) throw fail("expected: v <idx> <framing> <sign>");
            int idx = vertex_index(tok[1]);
            if (labeled[static_cast<std::size_t>(idx)])
                throw fail("duplicate label for vertex " + tok[1]);
            labeled[static_cast<std::size_t>(idx)] = true;
            int fr = parse_int(tok[2], "a framing (0 or 1)");
            if (fr != 0 && fr != 1) throw fail("framing must be 0 or 1");
            g.set_framing(idx, fr);
            const std::string& s = tok[3];
            if (s == "+" || s == "+1")
                g.set_sign(idx, +1);
            else if (s == "-" || s == "-1")
                g.set_sign(idx, -1);
            else
                throw fail("sign must be one of + - +1 -1");
        } else if (tok[0] == "e") {
            if (!have_n) throw fail("e line before n line");
            if (tok.size() != 3) throw fail("expected: e <i> <j>");
            int i = vertex_index(tok[1]);
            int j = vertex_index(tok[2]);
            if (i == j) throw fail("loops are not allowed");
            g.add_edge(i, j);
        } else {
            throw fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_n) throw ParseError(lineno, "missing n line");
    return g;
}

inline LabeledGraph parse_gl_string(const std::string& text) {
    std::istringstream in(text);
    return parse_gl(in);
}

inline LabeledGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_gl(in);
}

inline std::string serialize_gl(const LabeledGraph& g) {
    std::ostringstream out;
    int n = g.vertex_count();
    out << "n " << n << "\n";
    for (int i = 0; i < n; ++i)
        out << "v " << i + 1 << ' ' << g.framing(i) << ' ' << (g.sign(i) > 0 ? '+' : '-')
            << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.adjacent(i, j)) out << "e " << i + 1 << ' ' << j + 1 << "\n";
    return out.str();
}

inline void save_graph(const LabeledGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << serialize_gl(g);
}

// ---------------------------------------------------------------------------
// JSON rendering. Insertion order is preserved (ordered_json), maps are
// iterated in key order, so output bytes are stable for equal inputs.
// ---------------------------------------------------------------------------

inline ordered_json json_graph(const LabeledGraph& g) {
    ordered_json j;
    j["n"] = g.vertex_count();
    auto& vs = j["vertices"] = ordered_json::array();
    for (int i = 0; i < g.vertex_count(); ++i)
        vs.push_back({{"index", i + 1}, {"framing", g.framing(i)}, {"sign", g.sign(i)}});
    auto& es = j["edges"] = ordered_json::array();
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int k = i + 1; k < g.vertex_count(); ++k)
            if (g.adjacent(i, k)) es.push_back({i + 1, k + 1});
    return j;
}

inline ordered_json json_betti(const BettiTable& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& [key, dim] : t.entries)
        rows.push_back({{"m", key.first}, {"q", key.second}, {"dim", dim}});
    return rows;
}

inline ordered_json json_laurent(const LaurentPoly& p) {
    ordered_json j = ordered_json::object();
    for (const auto& [exp, c] : p.coeffs()) j[std::to_string(exp)] = c;
    return j;
}

inline ordered_json json_complex(const ChainComplex& c) {
    ordered_json j;
    auto& buckets = j["buckets"] = ordered_json::array();
    for (const auto& b : c.buckets) {
        ordered_json gens = ordered_json::array();
        for (const auto& gen : b.gens) {
            ordered_json state = ordered_json::array();
            for (int i = 0; i < c.graph.vertex_count(); ++i)
                if ((gen.state >> i) & 1) state.push_back(i + 1);
            ordered_json mono = ordered_json::array();
            for (int k = 0; k < 64; ++k)
                if ((gen.monomial >> k) & 1) mono.push_back(k);
            gens.push_back({{"state", state}, {"monomial", mono}});
        }
        buckets.push_back({{"m", b.m}, {"q", b.q}, {"generators", gens}});
    }
    auto& diffs = j["differentials"] = ordered_json::array();
    for (const auto& [key, mat] : c.differentials) {
        ordered_json rows = ordered_json::array();
        for (std::size_t r = 0; r < mat.rows(); ++r) rows.push_back(mat.row_string(r));
        diffs.push_back({{"m", key.first},
                         {"q", key.second},
                         {"rows", mat.rows()},
                         {"cols", mat.cols()},
                         {"matrix", rows}});
    }
    return j;
}

inline ordered_json json_step(const StepRecord& s) {
    ordered_json j;
    j["move"] = s.move.to_string();
    j["n_after"] = s.n_after;
    j["writhe_before"] = s.writhe_before;
    j["writhe_after"] = s.writhe_after;
    j["graph_knot_before"] = s.knot_before;
    j["graph_knot_after"] = s.knot_after;
    j["total_dim_before"] = s.total_dim_before;
    j["total_dim_after"] = s.total_dim_after;
    j["dim_preserved"] = s.dim_preserved;
    if (s.shift)
        j["shift"] = {s.shift->first, s.shift->second};
    else
        j["shift"] = nullptr;
    j["shift_as_expected"] = s.shift_as_expected;
    j["writhe_law_ok"] = s.writhe_law_ok;
    j["knot_flag_preserved"] = s.knot_flag_preserved;
    if (s.knot_invariants_checked) {
        j["normalized_table_equal"] = s.normalized_table_equal;
        j["jones_equal"] = s.jones_equal;
    }
    if (s.verbal_dim_preserved) j["verbal_dim_preserved"] = *s.verbal_dim_preserved;
    j["passed"] = s.passed;
    return j;
}

inline ordered_json json_trial_report(const TrialReport& r) {
    ordered_json j;
    j["seed"] = r.seed;
    j["requested_moves"] = r.requested_moves;
    j["omega3_semantics"] = r.omega3 == Omega3Semantics::matrix ? "matrix" : "verbal";
    j["initial_graph"] = json_graph(r.initial);
    auto& steps = j["steps"] = ordered_json::array();
    for (const auto& s : r.steps) steps.push_back(json_step(s));
    j["all_passed"] = r.all_passed;
    return j;
}

}  // namespace graphkh
