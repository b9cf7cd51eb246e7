#include "cpnsurf/io.hpp"

#include <cstdio>

#include <json.hpp>

#include "cpnsurf/geometry.hpp"
#include "cpnsurf/immersion.hpp"

namespace cpnsurf {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(Errc::parse_error, "complex values must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json coeffs_to_json(const std::vector<Complex>& coeffs) {
    json out = json::array();
    for (const auto& c : coeffs) out.push_back(complex_to_json(c));
    return out;
}

std::vector<Complex> coeffs_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        fail(Errc::parse_error, std::string(field) + " must be a non-empty coefficient list");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        const Complex c = complex_from_json(e);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            fail(Errc::parse_error, std::string(field) + " contains a non-finite coefficient");
        out.push_back(c);
    }
    return out;
}

json rational_to_json(const RationalFunction& r) {
    return json{{"numerator", coeffs_to_json(r.numerator)},
                {"denominator", coeffs_to_json(r.denominator)}};
}

RationalFunction rational_from_json(const json& j) {
    if (!j.is_object() || !j.contains("numerator"))
        fail(Errc::parse_error, "rational function needs a numerator field");
    RationalFunction r;
    r.numerator = coeffs_from_json(j.at("numerator"), "numerator");
    if (j.contains("denominator"))
        r.denominator = coeffs_from_json(j.at("denominator"), "denominator");
    return r;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

ModelSpec parse_model_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(Errc::parse_error, std::string("model spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::parse_error, "model spec must be a JSON object");
    ModelSpec spec;
    if (!j.contains("N") || !j.at("N").is_number_integer())
        fail(Errc::parse_error, "field N (integer dimension) is required");
    spec.f.n = j.at("N").get<int>();
    if (spec.f.n < 2) fail(Errc::parse_error, "field N must be >= 2");
    if (!j.contains("f") || !j.at("f").is_array())
        fail(Errc::parse_error, "field f (component list) is required");
    for (const auto& comp : j.at("f")) spec.f.components.push_back(rational_from_json(comp));
    if (static_cast<int>(spec.f.components.size()) != spec.f.n)
        fail(Errc::parse_error, "field f must have exactly N components");
    if (j.contains("k")) {
        if (!j.at("k").is_number_integer()) fail(Errc::parse_error, "field k must be an integer");
        spec.k = j.at("k").get<int>();
        if (spec.k < 0 || spec.k >= spec.f.n)
            fail(Errc::parse_error, "field k must satisfy 0 <= k < N");
    }
    if (j.contains("meron")) {
        const json& m = j.at("meron");
        if (!m.is_object() || !m.contains("F"))
            fail(Errc::parse_error, "meron block needs a rational field F");
        MeronSpec ms;
        ms.F = rational_from_json(m.at("F"));
        if (m.contains("c")) ms.c = complex_from_json(m.at("c"));
        if (ms.c == Complex(0.0)) fail(Errc::parse_error, "meron constant c must be nonzero");
        if (m.contains("branch")) {
            ms.branch = m.at("branch").get<int>();
            if (ms.branch != 1 && ms.branch != -1)
                fail(Errc::parse_error, "meron branch must be +1 or -1");
        }
        spec.meron = ms;
    }
    return spec;
}

std::string serialize_model_spec(const ModelSpec& spec) {
    json j;
    j["format_version"] = 1;
    j["N"] = spec.f.n;
    json comps = json::array();
    for (const auto& c : spec.f.components) comps.push_back(rational_to_json(c));
    j["f"] = comps;
    j["k"] = spec.k;
    if (spec.meron) {
        j["meron"] = json{{"F", rational_to_json(spec.meron->F)},
                          {"c", complex_to_json(spec.meron->c)},
                          {"branch", spec.meron->branch}};
    }
    return j.dump(2) + "\n";
}

ModelSpec veronese_model_spec(int n, int k) {
    ModelSpec spec;
    spec.f = veronese_vector(n);
    spec.k = k;
    return spec;
}

std::string analyze_report_json(const ModelSpec& spec, int k,
                                const std::vector<Complex>& points) {
    if (k < 0 || k >= spec.f.n) fail(Errc::invalid_argument, "tower depth out of range");
    json j;
    j["format_version"] = 1;
    j["N"] = spec.f.n;
    j["k"] = k;
    j["jet_order"] = required_order(k);
    json pts = json::array();
    for (const Complex& xi : points) {
        json entry;
        entry["xi"] = complex_to_json(xi);
        try {
            const JetVector v = tower(spec.f, k, xi, required_order(k));
            const ProjectorJet proj = projector_full(v);
            const MetricSample g = metric(v);
            const ChristoffelSymbols cs = christoffel(proj);
            const auto [j_inv, jbar_inv] = j_invariants(v);
            entry["g11"] = complex_to_json(g.g11);
            entry["g12"] = complex_to_json(g.g12);
            entry["g22"] = complex_to_json(g.g22);
            entry["gaussian_curvature"] = gaussian_curvature(v);
            entry["christoffel"] = {
                {"g1_11", complex_to_json(cs.g1_11)}, {"g2_11", complex_to_json(cs.g2_11)},
                {"g1_12", complex_to_json(cs.g1_12)}, {"g2_12", complex_to_json(cs.g2_12)},
                {"g1_22", complex_to_json(cs.g1_22)}, {"g2_22", complex_to_json(cs.g2_22)}};
            entry["J"] = complex_to_json(j_inv);
            entry["Jbar"] = complex_to_json(jbar_inv);
            entry["el_residual"] = el_residual(proj);
            const SecondFundamentalForm ii = second_fundamental_form(proj, -1);
            entry["second_form"] = {{"dxi2", matrix_to_json(ii.dxi2)},
                                    {"dxi_dxibar", matrix_to_json(ii.dxi_dxibar)},
                                    {"dxibar2", matrix_to_json(ii.dxibar2)}};
            entry["mean_curvature"] = matrix_to_json(mean_curvature(spec.f, k, xi));
            entry["singular"] = false;
        } catch (const Error& e) {
            entry["singular"] = true;
            entry["error"] = e.what();
        }
        pts.push_back(entry);
    }
    j["points"] = pts;
    return j.dump(2) + "\n";
}

std::string charge_report_json(const ModelSpec& spec, int k, int quad_order) {
    const ChargeActionReport report = charge_and_action(spec.f, k, quad_order);
    json j;
    j["format_version"] = 1;
    j["N"] = spec.f.n;
    j["k"] = k;
    j["Q"] = report.charge;
    j["action_energy"] = report.action_energy;
    j["quadrature_order"] = report.quadrature_order;
    j["charts_used"] = report.charts_used;
    j["Q_refinement_error"] = report.charge_refinement_error;
    j["action_refinement_error"] = report.action_refinement_error;
    return j.dump(2) + "\n";
}

std::string meron_report_json(const ModelSpec& spec) {
    if (!spec.meron) fail(Errc::invalid_argument, "model spec has no meron block");
    const QuadDiffReport report = quad_diff_report(spec.meron->F);
    json j;
    j["format_version"] = 1;
    json poles = json::array();
    for (const auto& p : report.finite_poles)
        poles.push_back(
            {{"location", complex_to_json(p.location)}, {"residue", complex_to_json(p.residue)}});
    j["finite_poles"] = poles;
    j["residue_at_infinity"] = complex_to_json(report.residue_at_infinity);
    json zeros = json::array();
    for (const auto& z : report.zeros) zeros.push_back(complex_to_json(z));
    j["zeros"] = zeros;
    json cylinders = json::array();
    for (const auto& c : report.cylinders)
        cylinders.push_back({{"pole", c.is_infinite ? json("infinity") : complex_to_json(c.pole)},
                             {"perimeter", c.perimeter}});
    j["cylinders"] = cylinders;
    return j.dump(2) + "\n";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace cpnsurf
