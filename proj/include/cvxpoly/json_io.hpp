#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvxpoly/approx.hpp"
#include "cvxpoly/convexify.hpp"
#include "cvxpoly/errors.hpp"
#include "cvxpoly/geometry.hpp"
#include "cvxpoly/polynomials.hpp"
#include "cvxpoly/smoothness.hpp"
#include "cvxpoly/whitney.hpp"

namespace cvxpoly {

using Json = nlohmann::ordered_json;

// ---- bodies ---------------------------------------------------------------

inline Json body_to_json(const ConvexBody& b) {
    Json j;
    switch (b.kind()) {
        case ShapeKind::Ball:
            j["shape"] = "ball";
            j["center"] = b.ball_center();
            j["radius"] = b.ball_radius();
            break;
        case ShapeKind::Box:
            j["shape"] = "box";
            j["lower"] = b.box_lower();
            j["upper"] = b.box_upper();
            break;
        case ShapeKind::Simplex:
            j["shape"] = "simplex";
            j["vertices"] = b.vertices();
            break;
        case ShapeKind::Polytope:
            j["shape"] = "polytope";
            j["vertices"] = b.vertices();
            break;
    }
    j["symmetric"] = b.symmetric();
    return j;
}

inline ConvexBody body_from_json(const Json& j) {
    if (j.is_array()) {
        // Shorthand: [lo, hi] is a 1-D box, [[...],[...]] an n-D box.
        if (j.size() == 2 && j[0].is_number() && j[1].is_number())
            return ConvexBody::box({j[0].get<double>()}, {j[1].get<double>()});
        if (j.size() == 2 && j[0].is_array() && j[1].is_array())
            return ConvexBody::box(j[0].get<Vec>(), j[1].get<Vec>());
        throw InputError("body literal: expected [lo, hi] or [[...],[...]]");
    }
    if (!j.is_object() || !j.contains("shape"))
        throw InputError("body JSON: missing \"shape\"");
    const std::string shape = j["shape"].get<std::string>();
    ConvexBody body = [&] {
        if (shape == "ball")
            return ConvexBody::ball(j.at("center").get<Vec>(), j.at("radius").get<double>());
        if (shape == "box")
            return ConvexBody::box(j.at("lower").get<Vec>(), j.at("upper").get<Vec>());
        if (shape == "simplex")
            return ConvexBody::simplex(j.at("vertices").get<std::vector<Vec>>());
        if (shape == "polytope")
            return ConvexBody::polytope(j.at("vertices").get<std::vector<Vec>>());
        throw InputError("body JSON: unknown shape \"" + shape + "\"");
    }();
    if (j.contains("symmetric")) {
        const bool claimed = j["symmetric"].get<bool>();
        if (claimed && !body.symmetric())
            throw InputError("body JSON: symmetric flag set but the vertex set is not symmetric");
    }
    return body;
}

// ---- polynomials ----------------------------------------------------------

inline Json polynomial_to_json(const Polynomial& p) {
    Json arr = Json::array();
    const auto& idx = p.basis().indices();
    for (int i = 0; i < p.basis().size(); ++i) {
        if (p.coefficients()[i] == 0.0) continue;
        Json term;
        term["exponents"] = idx[i].exponents;
        term["coefficient"] = p.coefficients()[i];
        arr.push_back(std::move(term));
    }
    if (arr.empty()) {
        Json term;
        term["exponents"] = std::vector<int>(p.dim(), 0);
        term["coefficient"] = 0.0;
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Polynomial polynomial_from_json(const Json& arr, int dim = -1) {
    if (!arr.is_array() || arr.empty()) throw InputError("polynomial JSON: expected a term array");
    int n = dim, degree = 0;
    for (const auto& term : arr) {
        const auto e = term.at("exponents").get<std::vector<int>>();
        n = std::max(n, static_cast<int>(e.size()));
        int d = 0;
        for (int v : e) d += v;
        degree = std::max(degree, d);
    }
    Polynomial p(n, degree);
    for (const auto& term : arr) {
        auto e = term.at("exponents").get<std::vector<int>>();
        e.resize(n, 0);
        p.set_coeff(e, p.coeff(e) + term.at("coefficient").get<double>());
    }
    return p;
}

// ---- results --------------------------------------------------------------

inline Json witness_to_json(const ModulusWitness& w) {
    Json j;
    j["value"] = w.value;
    j["x"] = w.x;
    j["h"] = w.h;
    j["m"] = w.m;
    return j;
}

inline Json approx_to_json(const ApproxSolution& sol, int m) {
    Json j;
    j["m"] = m;
    j["error"] = sol.error;
    j["coefficients"] = polynomial_to_json(sol.polynomial);
    j["active_points"] = sol.active_points;
    j["dual_weights"] = sol.dual_weights;
    return j;
}

inline Json repair_to_json(const RepairResult& r) {
    Json j;
    j["Q"] = polynomial_to_json(r.Q);
    j["lambda"] = r.lambda;
    j["e_ball"] = r.e_ball;
    j["e_K"] = r.e_K;
    j["shift"] = r.shift;
    j["pq_ball"] = r.pq_ball;
    j["bound"] = r.bound;
    j["achieved"] = r.achieved;
    j["min_eig_Q"] = r.min_eig_Q;
    j["intermediate_ok"] = r.intermediate_ok;
    j["bound_ok"] = r.bound_ok;
    if (r.e_K > 0) j["achieved_over_eK"] = r.achieved / r.e_K;
    return j;
}

inline Json report_to_json(const Report& rep) {
    Json j;
    j["suite"] = rep.suite;
    Json cases = Json::array();
    for (const auto& r : rep.rows) {
        Json c;
        c["id"] = r.id;
        c["expected"] = r.expected;
        c["actual"] = r.actual;
        c["tol"] = r.tol;
        c["provenance"] = r.provenance;
        c["pass"] = r.pass;
        cases.push_back(std::move(c));
    }
    j["cases"] = std::move(cases);
    return j;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace cvxpoly
