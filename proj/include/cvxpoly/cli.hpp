#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvxpoly/approx.hpp"
#include "cvxpoly/convexify.hpp"
#include "cvxpoly/errors.hpp"
#include "cvxpoly/expr.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/json_io.hpp"
#include "cvxpoly/smoothness.hpp"
#include "cvxpoly/whitney.hpp"

namespace cvxpoly::cli {

struct Config {
    std::string body;
    std::string fn;
    int m = 2;
    int resolution = 0;  // 0: per-command default
    double tol = 1e-9;
    double delta = 0.5;
    int cases = 0;  // 0: suite default
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

namespace detail {

inline ConvexBody parse_body_arg(const std::string& arg) {
    if (arg.empty()) throw InputError("--body is required for this command");
    std::string text = arg;
    const char first = arg.front();
    if (first != '{' && first != '[') text = read_text_file(arg);
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError("--body: not valid JSON: " + arg);
    return body_from_json(j);
}

struct FnChoice {
    ScalarField field;
    std::optional<ConvexBody> natural_body;
    std::optional<Polynomial> as_polynomial;
};

inline FnChoice parse_fn_arg(const std::string& fn, const std::optional<ConvexBody>& body,
                             double delta) {
    if (fn.empty()) throw InputError("--fn is required for this command");
    const int dim_hint = body ? body->dimension() : -1;
    if (fn == "ramp") {
        WitnessFunction w = ramp(delta, dim_hint > 0 ? dim_hint : 1);
        return {w.field, w.natural_body, std::nullopt};
    }
    if (fn == "entropy") {
        WitnessFunction w = entropy_fn(dim_hint > 0 ? dim_hint : 1);
        return {w.field, w.natural_body, std::nullopt};
    }
    if (fn == "roof" || fn == "prop18") {
        WitnessFunction w = prop18_f();
        return {w.field, w.natural_body, std::nullopt};
    }
    Polynomial p = parse_polynomial(fn, dim_hint);
    return {to_field(p), std::nullopt, p};
}

inline void emit(const Config& cfg, const std::string& payload, std::ostream& out) {
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw InputError("cannot write to " + cfg.out);
        f << payload;
        return;
    }
    out << payload;
}

inline std::string render_report(const Config& cfg, const std::vector<Report>& reports) {
    if (cfg.format == "csv") {
        std::string s;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::string csv = to_csv(reports[i]);
            if (i > 0) {
                // keep a single header line in the bundle
                csv.erase(0, csv.find('\n') + 1);
            }
            s += csv;
        }
        return s;
    }
    if (reports.size() == 1) return report_to_json(reports[0]).dump(2) + "\n";
    Json j;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    j["suites"] = std::move(arr);
    return j.dump(2) + "\n";
}

inline int finish_suites(const Config& cfg, const std::vector<Report>& reports, std::ostream& out,
                         std::ostream& err) {
    emit(cfg, render_report(cfg, reports), out);
    bool ok = true;
    for (const auto& rep : reports)
        for (const auto& row : rep.rows)
            if (!row.pass) {
                ok = false;
                err << "FAIL " << rep.suite << "/" << row.id << ": expected "
                    << format_number(row.expected) << ", actual " << format_number(row.actual)
                    << ", tol " << format_number(row.tol) << "\n";
            }
    return ok ? 0 : 1;
}

inline GridSpec grid_for(const Config& cfg, int dim) {
    if (cfg.resolution > 0) return GridSpec(cfg.resolution);
    switch (dim) {
        case 1: return GridSpec(201);
        case 2: return GridSpec(101);
        default: return GridSpec(41);
    }
}

} // namespace detail

// Runs one subcommand; `args` excludes the program name. Returns the process
// exit code: 0 success / all assertions pass, 1 failed assertions, 2 usage or
// input errors.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"uniform polynomial approximation on convex bodies"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&](CLI::App* cmd, bool with_fn_body) {
        if (with_fn_body) {
            cmd->add_option("--body", cfg.body, "body JSON (inline or file path)");
            cmd->add_option("--fn", cfg.fn, "catalog id (ramp, entropy, roof) or polynomial");
            cmd->add_option("--delta", cfg.delta, "ramp parameter in (0,1)");
        }
        cmd->add_option("--m", cfg.m, "polynomial degree / difference order");
        cmd->add_option("--resolution", cfg.resolution, "grid resolution (longest axis)");
        cmd->add_option("--tol", cfg.tol, "tolerance for spot checks")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", cfg.seed, "RNG seed for randomized suites");
        cmd->add_option("--cases", cfg.cases, "number of randomized cases");
        cmd->add_option("--out", cfg.out, "write output to this path");
        cmd->add_option("--format", cfg.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* c_approx = app.add_subcommand("approx", "best uniform polynomial approximation");
    CLI::App* c_modulus = app.add_subcommand("modulus", "modulus of smoothness");
    CLI::App* c_e1 = app.add_subcommand("e1-convex", "E_1 of a convex function (Jensen-gap form)");
    CLI::App* c_repair = app.add_subcommand("repair", "convex repair of a quadratic approximant");
    CLI::App* c_smooth = app.add_subcommand("convexify-smooth", "convexify by adding L||x||^2");
    CLI::App* c_ratio = app.add_subcommand("whitney-ratio", "E_{m-1}/omega_m for a witness");
    CLI::App* c_p18 = app.add_subcommand("verify-prop18", "roof-function quadratic suite");
    CLI::App* c_t13 = app.add_subcommand("verify-thm13", "symmetric-body halving suite");
    CLI::App* c_t16 = app.add_subcommand("verify-thm16", "randomized quadratic-repair suite");
    CLI::App* c_report = app.add_subcommand("report", "run every suite, bundle the results");
    std::string poly_literal;
    c_repair->add_option("--poly", poly_literal,
                         "quadratic approximant P (default: grid-best quadratic)");
    for (CLI::App* c : {c_approx, c_modulus, c_e1, c_repair, c_smooth, c_ratio})
        add_common(c, true);
    for (CLI::App* c : {c_p18, c_t13, c_t16, c_report}) add_common(c, false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*c_approx || *c_modulus || *c_e1 || *c_repair || *c_smooth || *c_ratio) {
            std::optional<ConvexBody> body;
            if (!cfg.body.empty()) body = detail::parse_body_arg(cfg.body);
            detail::FnChoice fn = detail::parse_fn_arg(cfg.fn, body, cfg.delta);
            if (!body) {
                if (!fn.natural_body)
                    throw InputError("--body is required for polynomial-literal functions");
                body = fn.natural_body;
            }
            const GridSpec grid = detail::grid_for(cfg, body->dimension());

            if (*c_approx) {
                ApproxSolution sol = best_uniform(fn.field, *body, cfg.m, grid);
                detail::emit(cfg, approx_to_json(sol, cfg.m).dump(2) + "\n", out);
                return 0;
            }
            if (*c_modulus) {
                ModulusWitness w = modulus(fn.field, *body, cfg.m, grid);
                detail::emit(cfg, witness_to_json(w).dump(2) + "\n", out);
                return 0;
            }
            if (*c_e1) {
                ScalarField f = fn.field;
                f.declared_convex = true;
                if (!midpoint_convexity_ok(f, *body, GridSpec(std::min(grid.resolution, 9)),
                                           cfg.tol))
                    throw PreconditionError("e1-convex: --fn fails the convexity spot check");
                const double v = e1_convex(f, *body, grid);
                Json j;
                j["e1"] = v;
                detail::emit(cfg, j.dump(2) + "\n", out);
                return 0;
            }
            if (*c_repair) {
                ScalarField f = fn.field;
                f.declared_convex = true;
                if (!midpoint_convexity_ok(f, *body, GridSpec(std::min(grid.resolution, 9)),
                                           cfg.tol))
                    throw PreconditionError("repair: --fn fails the convexity spot check");
                Polynomial P =
                    poly_literal.empty()
                        ? best_uniform(f, *body, 2, grid).polynomial
                        : parse_polynomial(poly_literal, body->dimension());
                PositionedRepair rep = convexify_quadratic_auto(f, P, *body, grid);
                Json j;
                j["lambda"] = rep.lambda;
                j["map"] = Json{{"matrix", rep.map.matrix.data()}, {"offset", rep.map.offset}};
                j["repair"] = repair_to_json(rep.repair);
                j["Q_original"] = polynomial_to_json(rep.Q_original);
                detail::emit(cfg, j.dump(2) + "\n", out);
                return rep.repair.intermediate_ok && rep.repair.bound_ok ? 0 : 1;
            }
            if (*c_smooth) {
                if (!fn.as_polynomial)
                    throw InputError("convexify-smooth needs a polynomial literal --fn");
                auto conv = convexify_smooth(*fn.as_polynomial, *body, grid);
                Json j;
                j["L"] = conv.L;
                j["h"] = polynomial_to_json(conv.h);
                detail::emit(cfg, j.dump(2) + "\n", out);
                return 0;
            }
            // whitney-ratio
            WitnessFunction w{cfg.fn, fn.field, *body, {}};
            WhitneyEstimate est = whitney_ratio(w, *body, cfg.m, grid);
            Json j;
            j["id"] = est.id;
            j["m"] = est.m;
            j["E"] = est.E;
            j["omega"] = est.omega;
            j["ratio"] = est.ratio;
            detail::emit(cfg, j.dump(2) + "\n", out);
            return 0;
        }

        if (*c_p18)
            return detail::finish_suites(
                cfg, {prop18_suite(GridSpec(cfg.resolution > 0 ? cfg.resolution : 101))}, out, err);
        if (*c_t13)
            return detail::finish_suites(
                cfg, {thm13_suite(cfg.cases > 0 ? cfg.cases : 100, cfg.seed)}, out, err);
        if (*c_t16)
            return detail::finish_suites(
                cfg, {repair_random_suite(cfg.cases > 0 ? cfg.cases : 500, cfg.seed)}, out, err);
        // report: every suite in one bundle
        std::vector<Report> all;
        all.push_back(prop18_suite(GridSpec(cfg.resolution > 0 ? cfg.resolution : 101)));
        all.push_back(thm13_suite(cfg.cases > 0 ? cfg.cases : 100, cfg.seed));
        all.push_back(entropy_suite());
        all.push_back(repair_random_suite(cfg.cases > 0 ? cfg.cases : 500, cfg.seed));
        all.push_back(smooth_invariance_suite(50, cfg.seed));
        all.push_back(identities_suite(cfg.seed));
        all.push_back(kryakin_suite());
        return detail::finish_suites(cfg, all, out, err);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cvxpoly::cli
