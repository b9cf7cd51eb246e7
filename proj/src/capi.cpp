#include "cpnsurf/capi.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpnsurf/geometry.hpp"
#include "cpnsurf/immersion.hpp"
#include "cpnsurf/io.hpp"
#include "cpnsurf/meron.hpp"
#include "cpnsurf/model.hpp"
#include "cpnsurf/verify.hpp"

using namespace cpnsurf;

struct cpn_model {
    ModelSpec spec;
};

namespace {

thread_local std::string g_last_error;

cpn_status status_of(Errc code) {
    switch (code) {
        case Errc::none: return CPN_OK;
        case Errc::invalid_argument: return CPN_ERR_INVALID_ARGUMENT;
        case Errc::parse_error: return CPN_ERR_PARSE;
        case Errc::pole_at_base: return CPN_ERR_POLE_AT_BASE;
        case Errc::shape_mismatch: return CPN_ERR_SHAPE_MISMATCH;
        case Errc::division_by_singular_jet: return CPN_ERR_DIVISION_BY_SINGULAR_JET;
        case Errc::order_exhausted: return CPN_ERR_ORDER_EXHAUSTED;
        case Errc::branch_cut: return CPN_ERR_BRANCH_CUT;
        case Errc::zero_base: return CPN_ERR_ZERO_BASE;
        case Errc::invalid_dimension: return CPN_ERR_INVALID_DIMENSION;
        case Errc::null_vector: return CPN_ERR_NULL_VECTOR;
        case Errc::tower_depth_exceeded: return CPN_ERR_TOWER_DEPTH;
        case Errc::quadrature_divergence: return CPN_ERR_QUADRATURE_DIVERGENCE;
        case Errc::path_through_singularity: return CPN_ERR_PATH_SINGULARITY;
        case Errc::non_convergent: return CPN_ERR_NON_CONVERGENT;
        case Errc::not_anti_hermitian: return CPN_ERR_NOT_ANTI_HERMITIAN;
        case Errc::degenerate_metric: return CPN_ERR_DEGENERATE_METRIC;
        case Errc::zero_of_f: return CPN_ERR_ZERO_OF_F;
        case Errc::root_finding_failure: return CPN_ERR_ROOT_FINDING;
        case Errc::clustered_roots: return CPN_ERR_CLUSTERED_ROOTS;
        case Errc::seed_at_critical_point: return CPN_ERR_SEED_AT_CRITICAL_POINT;
        case Errc::step_too_large: return CPN_ERR_STEP_TOO_LARGE;
    }
    return CPN_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
cpn_status wrap(Fn&& fn) {
    try {
        fn();
        return CPN_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CPN_ERR_INTERNAL;
    }
}

}  // namespace

extern "C" {

int cpn_status_is_numerical(cpn_status status) {
    switch (status) {
        case CPN_ERR_QUADRATURE_DIVERGENCE:
        case CPN_ERR_NON_CONVERGENT:
        case CPN_ERR_STEP_TOO_LARGE:
        case CPN_ERR_ROOT_FINDING:
        case CPN_ERR_CLUSTERED_ROOTS:
            return 1;
        default:
            return 0;
    }
}

const char* cpn_version(void) { return "1.0.0"; }

const char* cpn_last_error(void) { return g_last_error.c_str(); }

void cpn_string_free(char* s) { delete[] s; }

cpn_status cpn_model_from_json(const char* json_text, cpn_model** out_model) {
    return wrap([&] {
        if (!json_text || !out_model) fail(Errc::invalid_argument, "null argument");
        auto model = std::make_unique<cpn_model>();
        model->spec = parse_model_spec(json_text);
        *out_model = model.release();
    });
}

void cpn_model_free(cpn_model* model) { delete model; }

int cpn_model_dimension(const cpn_model* model) { return model ? model->spec.f.n : 0; }

int cpn_model_default_depth(const cpn_model* model) { return model ? model->spec.k : 0; }

int cpn_model_has_meron(const cpn_model* model) {
    return model && model->spec.meron ? 1 : 0;
}

int cpn_model_coordinate_count(const cpn_model* model) {
    return model ? model->spec.f.n * model->spec.f.n - 1 : 0;
}

cpn_status cpn_veronese_spec_json(int n, int k, char** out_json) {
    return wrap([&] {
        if (!out_json) fail(Errc::invalid_argument, "null output");
        *out_json = dup_string(serialize_model_spec(veronese_model_spec(n, k)));
    });
}

cpn_status cpn_analyze_json(const cpn_model* model, int k, const double* xs,
                            const double* ys, int count, char** out_json) {
    return wrap([&] {
        if (!model || !xs || !ys || !out_json || count < 1)
            fail(Errc::invalid_argument, "null argument or empty point list");
        std::vector<Complex> pts(count);
        for (int i = 0; i < count; ++i) pts[i] = Complex(xs[i], ys[i]);
        *out_json = dup_string(analyze_report_json(model->spec, k, pts));
    });
}

cpn_status cpn_charge_json(const cpn_model* model, int k, int quad_order,
                           char** out_json) {
    return wrap([&] {
        if (!model || !out_json) fail(Errc::invalid_argument, "null argument");
        *out_json = dup_string(charge_report_json(model->spec, k, quad_order));
    });
}

cpn_status cpn_immersion_sample(const cpn_model* model, int k, double x, double y,
                                double anchor_x, double anchor_y, int segments,
                                int nodes, double* coords) {
    return wrap([&] {
        if (!model || !coords) fail(Errc::invalid_argument, "null argument");
        const VectorSpec& f = model->spec.f;
        if (k < 0 || k >= f.n) fail(Errc::tower_depth_exceeded, "depth out of range");
        const Complex xi(x, y);
        Eigen::VectorXd out;
        if (k == 0) {
            const Eigen::MatrixXcd xm =
                immersion_closed_form(projector_full(tower(f, 0, xi, required_order(0))), 1);
            out = f.n == 3 ? cp2_paper_coordinates(xm, true)
                           : sun_coordinates(xm, sun_basis(f.n));
        } else {
            const Complex anchor(anchor_x, anchor_y);
            const Complex mid(anchor.real(), xi.imag());
            const Eigen::MatrixXcd xm =
                immersion_polyline_integral(f, k, {anchor, mid, xi}, segments, nodes);
            out = f.n == 3 ? cp2_paper_coordinates(xm, false)
                           : sun_coordinates(xm, sun_basis(f.n));
        }
        for (int i = 0; i < out.size(); ++i) coords[i] = out(i);
    });
}

cpn_status cpn_meron_report_json(const cpn_model* model, char** out_json) {
    return wrap([&] {
        if (!model || !out_json) fail(Errc::invalid_argument, "null argument");
        *out_json = dup_string(meron_report_json(model->spec));
    });
}

cpn_status cpn_meron_radius(const cpn_model* model, double x, double y,
                            double* coords8) {
    return wrap([&] {
        if (!model || !coords8) fail(Errc::invalid_argument, "null argument");
        if (!model->spec.meron) fail(Errc::invalid_argument, "model has no meron block");
        const auto v = meron_radius(*model->spec.meron, Complex(x, y));
        for (int i = 0; i < 8; ++i) coords8[i] = v(i);
    });
}

cpn_status cpn_meron_trajectory(const cpn_model* model, double seed_x, double seed_y,
                                double step, int max_steps, double* xs, double* ys,
                                int capacity, int* count, int* closed,
                                double* period_error) {
    return wrap([&] {
        if (!model || !xs || !ys || !count || !closed || !period_error)
            fail(Errc::invalid_argument, "null argument");
        if (!model->spec.meron) fail(Errc::invalid_argument, "model has no meron block");
        const Trajectory traj = trace_trajectory(model->spec.meron->F,
                                                 Complex(seed_x, seed_y), step, max_steps);
        const int n = std::min<int>(capacity, static_cast<int>(traj.points.size()));
        for (int i = 0; i < n; ++i) {
            xs[i] = traj.points[i].real();
            ys[i] = traj.points[i].imag();
        }
        *count = n;
        *closed = traj.closed ? 1 : 0;
        *period_error = traj.period_error;
    });
}

cpn_status cpn_verify_json(char** out_json, int* failures) {
    return wrap([&] {
        if (!out_json || !failures) fail(Errc::invalid_argument, "null argument");
        const std::vector<CheckResult> results = run_acceptance_suite();
        nlohmann::json j = nlohmann::json::array();
        int failed = 0;
        for (const auto& r : results) {
            if (!r.pass) ++failed;
            j.push_back({{"name", r.name},
                         {"pass", r.pass},
                         {"worst", r.worst},
                         {"tolerance", r.tolerance},
                         {"detail", r.detail}});
        }
        *failures = failed;
        *out_json = dup_string(j.dump(2) + "\n");
    });
}

}  // extern "C"
