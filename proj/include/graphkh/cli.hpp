#pragma once

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphkh/complex.hpp"
#include "graphkh/errors.hpp"
#include "graphkh/harness.hpp"
#include "graphkh/homology.hpp"
#include "graphkh/io.hpp"
#include "graphkh/labeled_graph.hpp"
#include "graphkh/moves.hpp"
#include "graphkh/polynomials.hpp"
#include "graphkh/state_space.hpp"

namespace graphkh::cli {

namespace detail {

inline int env_threads() {
    const char* s = std::getenv("GRAPHKH_THREADS");
    if (!s) return 1;
    try {
        int v = std::stoi(s);
        return v >= 1 ? v : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

inline void print_betti(std::ostream& out, const BettiTable& t, const std::string& norm) {
    out << "normalization " << norm << "\n";
    out << "m q dim\n";
    for (const auto& [key, dim] : t.entries)
        out << key.first << ' ' << key.second << ' ' << dim << "\n";
    out << "total_dim " << t.total_dim() << "\n";
    out << "writhe " << t.writhe << "\n";
    out << "graph_knot " << (t.graph_knot ? "true" : "false") << "\n";
}

inline void write_graph_output(const LabeledGraph& g, const std::string& outfile,
                               std::ostream& out) {
    if (outfile.empty())
        out << serialize_gl(g);
    else
        save_graph(g, outfile);
}

/// Flips one differential entry whose column feeds a nonzero column of the
/// next differential, so the tampering is visible to the d^2 check. Returns
/// false when no composable site exists (the complex is left unchanged).
inline bool inject_fault(ChainComplex& c) {
    for (auto& [key, d1] : c.differentials) {
        auto it2 = c.differentials.find({key.first + 1, key.second});
        if (it2 == c.differentials.end()) continue;
        const BitMatrix& d2 = it2->second;
        if (d1.rows() == 0 || d1.cols() == 0 || d2.rows() == 0) continue;
        if (d2.cols() != d1.rows()) continue;
        for (std::size_t r = 0; r < d1.rows(); ++r)
            for (std::size_t i = 0; i < d2.rows(); ++i)
                if (d2.get(i, r)) {
                    d1.flip(r, 0);
                    return true;
                }
    }
    return false;
}

}  // namespace detail

/// Runs one CLI invocation. `args` is argv[1..] in natural order. Returns the
/// process exit code: 0 success, 1 usage/validation error, 2 failed property
/// check or integrity violation.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homology, bracket and move engine for labeled graphs"};
    app.name("graphkh");
    app.require_subcommand(1);

    std::string file, outfile, movespec, normalized, omega3 = "matrix";
    std::uint64_t seed = 1;
    std::size_t moves_count = 10;
    int nverts = 0;
    bool json = false, dump = false, inject = false;
    int threads = detail::env_threads();
    int rc = 0;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "graph file (.gl)")->required();
    };
    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", json, "machine output"); };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "worker threads (default: GRAPHKH_THREADS or 1)");
    };
    auto build_opts = [&] {
        BuildOptions o;
        o.threads = std::max(threads, 1);
        return o;
    };

    auto* kh = app.add_subcommand("kh", "bigraded homology table");
    add_file(kh);
    add_json(kh);
    add_threads(kh);
    kh->add_option("--normalized", normalized, "grading normalization")
        ->check(CLI::IsMember({"paper", "calibrated"}));
    kh->add_flag("--dump-complex", dump, "include the full chain complex");
    kh->callback([&] {
        LabeledGraph g = load_graph(file);
        ChainComplex c = build_complex(g, build_opts());
        BettiTable t = betti_table(c);
        std::string label = normalized.empty() ? "raw" : normalized;
        BettiTable shown = normalized.empty()
                               ? t
                               : normalized_table(t, normalized == "paper"
                                                         ? Normalization::paper
                                                         : Normalization::calibrated);
        if (json) {
            ordered_json j;
            j["betti"] = json_betti(shown);
            j["normalization"] = label;
            j["poincare"] = poincare_polynomial(shown).to_string();
            j["total_dim"] = shown.total_dim();
            j["writhe"] = shown.writhe;
            j["graph_knot"] = shown.graph_knot;
            if (dump) j["complex"] = json_complex(c);
            out << j.dump(2) << "\n";
        } else {
            detail::print_betti(out, shown, label);
            out << "poincare " << poincare_polynomial(shown).to_string() << "\n";
            if (dump) out << json_complex(c).dump(2) << "\n";
        }
    });

    auto* bracket = app.add_subcommand("bracket", "state-sum bracket polynomial");
    add_file(bracket);
    add_json(bracket);
    bracket->callback([&] {
        LabeledGraph g = load_graph(file);
        LaurentPoly b = kauffman_bracket(g);
        if (json) {
            ordered_json j;
            j["bracket"] = json_laurent(b);
            j["variable"] = "a";
            out << j.dump(2) << "\n";
        } else {
            out << b.to_string() << "\n";
        }
    });

    auto* jonescmd = app.add_subcommand("jones", "normalized bracket polynomial");
    add_file(jonescmd);
    add_json(jonescmd);
    jonescmd->callback([&] {
        LabeledGraph g = load_graph(file);
        if (!is_graph_knot(g))
            err << "warning: not a graph-knot; reporting the formal normalized bracket\n";
        LaurentPoly x = jones(g);
        if (json) {
            ordered_json j;
            j["jones"] = json_laurent(x);
            j["variable"] = "a";
            j["writhe"] = writhe(g);
            j["graph_knot"] = is_graph_knot(g);
            out << j.dump(2) << "\n";
        } else {
            out << x.to_string() << "\n";
        }
    });

    auto* writhecmd = app.add_subcommand("writhe", "writhe of the graph");
    add_file(writhecmd);
    add_json(writhecmd);
    writhecmd->callback([&] {
        LabeledGraph g = load_graph(file);
        if (json) {
            ordered_json j;
            j["writhe"] = writhe(g);
            out << j.dump(2) << "\n";
        } else {
            out << writhe(g) << "\n";
        }
    });

    auto* isknot = app.add_subcommand("isknot", "single-component test");
    add_file(isknot);
    add_json(isknot);
    isknot->callback([&] {
        LabeledGraph g = load_graph(file);
        if (json) {
            ordered_json j;
            j["graph_knot"] = is_graph_knot(g);
            out << j.dump(2) << "\n";
        } else {
            out << (is_graph_knot(g) ? "true" : "false") << "\n";
        }
    });

    auto* verify = app.add_subcommand("verify", "structural self-checks on one graph");
    add_file(verify);
    add_json(verify);
    add_threads(verify);
    verify->add_flag("--inject-fault", inject,
                     "flip one differential bit first (the checks must then fail)");
    verify->callback([&] {
        LabeledGraph g = load_graph(file);
        BuildOptions opts = build_opts();
        ChainComplex c = build_complex(g, opts);
        bool injected = false;
        if (inject) injected = detail::inject_fault(c);

        bool d2 = false;
        std::string d2_msg;
        try {
            d2 = verify_d_squared(c);
            if (!d2) d2_msg = "composition of consecutive differentials is nonzero";
        } catch (const IntegrityError& e) {
            d2_msg = e.what();
        }

        bool dims = true;
        BitMatrix a = adjacency_matrix(g);
        std::uint64_t states = std::uint64_t{1} << g.vertex_count();
        for (std::uint64_t s = 0; s < states && dims; ++s)
            dims = quotient_space(g, State{s}).dim() ==
                   static_cast<int>(corank(principal_submatrix(a, s)));

        EulerIdentityReport er = euler_identity_check(g, opts);

        bool ok = d2 && dims && er.holds_plus_n;
        if (json) {
            ordered_json j;
            j["d_squared_zero"] = d2;
            if (!d2) j["d_squared_error"] = d2_msg;
            j["state_dims_match_corank"] = dims;
            j["euler_identity_plus_n"] = er.holds_plus_n;
            j["euler_identity_minus_n"] = er.holds_minus_n;
            j["homology_euler"] = json_laurent(er.homology_side);
            j["bracket_substituted_plus_n"] = json_laurent(er.plus_n_side);
            j["bracket_substituted_minus_n"] = json_laurent(er.minus_n_side);
            if (inject) j["fault_injected"] = injected;
            j["ok"] = ok;
            out << j.dump(2) << "\n";
        } else {
            if (inject)
                out << "fault_injection " << (injected ? "applied" : "no composable site")
                    << "\n";
            out << "d_squared_zero " << (d2 ? "pass" : "FAIL") << "\n";
            if (!d2) out << "  " << d2_msg << "\n";
            out << "state_dims_match_corank " << (dims ? "pass" : "FAIL") << "\n";
            out << "euler_identity_plus_n " << (er.holds_plus_n ? "pass" : "FAIL") << "\n";
            out << "euler_identity_minus_n " << (er.holds_minus_n ? "holds" : "fails")
                << " (informational)\n";
        }
        if (!ok) rc = 2;
    });

    auto* check = app.add_subcommand("check", "randomized move-invariance trial");
    add_file(check);
    add_json(check);
    add_threads(check);
    check->add_option("--moves", moves_count, "number of moves to apply")->required();
    check->add_option("--seed", seed, "random seed")->required();
    check->add_option("--omega3", omega3, "semantics for the third move")
        ->check(CLI::IsMember({"matrix", "verbal"}));
    check->callback([&] {
        LabeledGraph g = load_graph(file);
        CheckOptions co;
        co.omega3 = omega3 == "verbal" ? Omega3Semantics::verbal : Omega3Semantics::matrix;
        co.build = build_opts();
        TrialReport r = check_invariance(g, moves_count, seed, co);
        if (json) {
            out << json_trial_report(r).dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < r.steps.size(); ++i) {
                const StepRecord& s = r.steps[i];
                out << "step " << i + 1 << ' ' << s.move.to_string() << ' '
                    << (s.passed ? "pass" : "FAIL") << "\n";
            }
            out << "all_passed " << (r.all_passed ? "true" : "false") << "\n";
        }
        if (!r.all_passed) rc = 2;
    });

    auto* randomcmd = app.add_subcommand("random", "generate a seeded random graph");
    randomcmd->add_option("--n", nverts, "vertex count")->required();
    randomcmd->add_option("--seed", seed, "random seed")->required();
    randomcmd->add_option("-o,--output", outfile, "write to file instead of stdout");
    randomcmd->callback([&] {
        if (nverts < 0 || nverts > LabeledGraph::kMaxVertices)
            throw Error("vertex count must be between 0 and " +
                        std::to_string(LabeledGraph::kMaxVertices));
        detail::write_graph_output(random_graph(nverts, seed), outfile, out);
    });

    auto* movescmd = app.add_subcommand("moves", "list applicable moves");
    add_file(movescmd);
    movescmd->callback([&] {
        LabeledGraph g = load_graph(file);
        for (const MoveSpec& m : enumerate_moves(g)) out << m.to_string() << "\n";
    });

    auto* applycmd = app.add_subcommand("apply", "apply one move to a graph");
    add_file(applycmd);
    applycmd->add_option("--move", movespec, "move spec, e.g. o1add:+ or o4:1,2")->required();
    applycmd->add_option("-o,--output", outfile, "write to file instead of stdout");
    applycmd->callback([&] {
        LabeledGraph g = load_graph(file);
        detail::write_graph_output(apply_move(g, MoveSpec::parse(movespec)), outfile, out);
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int cli_rc = app.exit(e, out, err);
        return cli_rc == 0 ? 0 : 1;
    } catch (const IntegrityError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace graphkh::cli
