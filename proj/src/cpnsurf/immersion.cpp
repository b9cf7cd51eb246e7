#include "cpnsurf/immersion.hpp"

#include <cmath>
#include <random>

#include "cpnsurf/quadrature.hpp"
#include "cpnsurf/roots.hpp"

namespace cpnsurf {

namespace {

Eigen::MatrixXcd value_commutator(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return a * b - b * a;
}

struct ProjectorDerivatives {
    Eigen::MatrixXcd p;
    Eigen::MatrixXcd dp;
    Eigen::MatrixXcd dbp;
};

ProjectorDerivatives projector_derivatives(const VectorSpec& f, int k, Complex xi) {
    const JetVector v = tower_lean(f, k, xi, k + 1);
    const ProjectorJet proj = projector_full(v);
    return ProjectorDerivatives{proj.value(), proj.p.deriv(Var::xi).value(),
                                proj.p.deriv(Var::xibar).value()};
}

/// i(-[dP,P] dxi + [dbarP,P] dxibar) contracted with a path velocity.
Eigen::MatrixXcd weierstrass_integrand(const ProjectorDerivatives& d, Complex velocity) {
    const Eigen::MatrixXcd c1 = value_commutator(d.dp, d.p);
    const Eigen::MatrixXcd c2 = value_commutator(d.dbp, d.p);
    return Complex(0.0, 1.0) * (-c1 * velocity + c2 * std::conj(velocity));
}

void check_segment_clearance(const VectorSpec& f, Complex a, Complex b) {
    for (const auto& comp : f.components) {
        if (poly_degree(comp.denominator) < 1) continue;
        for (const Complex& pole : poly_roots(comp.denominator))
            if (segment_distance(pole, a, b) < 1e-6)
                fail(Errc::path_through_singularity, "integration path passes a pole of f");
    }
}

Eigen::MatrixXcd segment_integral(const VectorSpec& f, int k, Complex a, Complex b,
                                  int segments, int nodes) {
    const GaussLegendreRule& rule = gauss_legendre(nodes);
    const Complex velocity = b - a;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(f.n, f.n);
    for (int s = 0; s < segments; ++s) {
        const double t0 = double(s) / segments;
        const double t1 = double(s + 1) / segments;
        for (int q = 0; q < nodes; ++q) {
            const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rule.nodes[q];
            const double w = 0.5 * (t1 - t0) * rule.weights[q];
            const Complex xi = a + t * velocity;
            ProjectorDerivatives d;
            try {
                d = projector_derivatives(f, k, xi);
            } catch (const Error& e) {
                if (e.code() == Errc::null_vector || e.code() == Errc::pole_at_base)
                    fail(Errc::path_through_singularity, "tower degenerates on the path");
                throw;
            }
            acc += w * weierstrass_integrand(d, velocity);
        }
    }
    return acc;
}

}  // namespace

KmlMatrices k_matrices(const ProjectorJet& p) {
    if (p.order() < 1) fail(Errc::order_exhausted, "K matrices need order >= 1");
    const Eigen::MatrixXcd pv = p.value();
    const Eigen::MatrixXcd dpv = p.p.deriv(Var::xi).value();
    const Eigen::MatrixXcd dbpv = p.p.deriv(Var::xibar).value();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p.n(), p.n());
    KmlMatrices out;
    out.k = value_commutator(dbpv, pv);
    out.k_dagger = -value_commutator(dpv, pv);
    out.m = (id - pv) * dbpv;
    out.l = -dbpv * (id - pv);
    return out;
}

std::pair<double, double> conservation_check_ml(const VectorSpec& f, int k, Complex base) {
    const JetVector v = tower(f, k, base, required_order(k));
    const ProjectorJet proj = projector_full(v);
    const int m1 = proj.order() - 1;
    const JetMatrix dbp = proj.p.deriv(Var::xibar);
    const JetMatrix id_minus_p =
        JetMatrix::identity(proj.n(), v.base(), m1) - proj.p.truncated(m1);
    const JetMatrix mmat = id_minus_p * dbp;
    const JetMatrix lmat = -(dbp * id_minus_p);
    const double m_norm =
        (mmat.deriv(Var::xi).value() - mmat.dagger().deriv(Var::xibar).value()).norm();
    const double l_norm =
        (lmat.deriv(Var::xi).value() - lmat.dagger().deriv(Var::xibar).value()).norm();
    return {m_norm, l_norm};
}

Eigen::MatrixXcd immersion_closed_form(const ProjectorJet& p, int epsilon) {
    if (epsilon != 1 && epsilon != -1)
        fail(Errc::invalid_argument, "epsilon must be +1 or -1");
    const int n = p.n();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    return Complex(0.0, double(epsilon)) * ((1.0 - n) / double(n) * id + p.value());
}

Eigen::MatrixXcd immersion_line_integral(const VectorSpec& f, int k, Complex start,
                                         Complex end, int segments, int nodes_per_segment) {
    return immersion_polyline_integral(f, k, {start, end}, segments, nodes_per_segment);
}

Eigen::MatrixXcd immersion_polyline_integral(const VectorSpec& f, int k,
                                             const std::vector<Complex>& waypoints,
                                             int segments, int nodes_per_segment) {
    if (segments < 1 || nodes_per_segment < 4)
        fail(Errc::invalid_argument, "need segments >= 1 and nodes >= 4");
    if (waypoints.size() < 2) fail(Errc::invalid_argument, "polyline needs two points");
    Eigen::MatrixXcd coarse = Eigen::MatrixXcd::Zero(f.n, f.n);
    Eigen::MatrixXcd fine = Eigen::MatrixXcd::Zero(f.n, f.n);
    for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const Complex a = waypoints[i];
        const Complex b = waypoints[i + 1];
        if (a == b) continue;
        check_segment_clearance(f, a, b);
        coarse += segment_integral(f, k, a, b, segments, nodes_per_segment);
        fine += segment_integral(f, k, a, b, 2 * segments, nodes_per_segment);
    }
    if ((coarse - fine).norm() > 1e-6)
        fail(Errc::non_convergent, "line integral does not settle under refinement");
    return fine;
}

std::vector<Eigen::MatrixXcd> sun_basis(int n) {
    if (n < 2) fail(Errc::invalid_dimension, "su(N) basis needs N >= 2");
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(static_cast<size_t>(n) * n - 1);
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row) {
            Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(n, n);
            sym(row, col) = 1.0;
            sym(col, row) = 1.0;
            basis.push_back(sym);
            Eigen::MatrixXcd antisym = Eigen::MatrixXcd::Zero(n, n);
            antisym(row, col) = Complex(0.0, -1.0);
            antisym(col, row) = Complex(0.0, 1.0);
            basis.push_back(antisym);
        }
        Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
        const double scale = std::sqrt(2.0 / (col * (col + 1.0)));
        for (int i = 0; i < col; ++i) diag(i, i) = scale;
        diag(col, col) = -scale * col;
        basis.push_back(diag);
    }
    return basis;
}

Eigen::VectorXd sun_coordinates(const Eigen::MatrixXcd& x,
                                const std::vector<Eigen::MatrixXcd>& basis) {
    const double scale = std::max(1.0, x.norm());
    if ((x + x.adjoint()).norm() > 1e-11 * scale || std::abs(x.trace()) > 1e-11 * scale)
        fail(Errc::not_anti_hermitian, "surface point is not traceless anti-Hermitian");
    Eigen::VectorXd coords(basis.size());
    for (size_t a = 0; a < basis.size(); ++a)
        coords(a) = (-0.5 * (x * (Complex(0.0, 1.0) * basis[a])).trace()).real();
    return coords;
}

Eigen::MatrixXcd sun_from_coordinates(const Eigen::VectorXd& coords,
                                      const std::vector<Eigen::MatrixXcd>& basis) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(basis.front().rows(), basis.front().cols());
    for (size_t a = 0; a < basis.size(); ++a) x += coords(a) * Complex(0.0, 1.0) * basis[a];
    return x;
}

Eigen::Matrix<double, 8, 1> cp2_radius_holomorphic(Complex w1, Complex w2) {
    const double a2 = 1.0 + std::norm(w1) + std::norm(w2);
    Eigen::Matrix<double, 8, 1> x;
    x(0) = (w1 * std::conj(w2)).real() / a2;
    x(1) = -(w1 * std::conj(w2)).imag() / a2;
    x(2) = (std::norm(w1) - std::norm(w2)) / (2.0 * a2);
    x(3) = -std::sqrt(3.0) * (std::norm(w1) + std::norm(w2)) / (2.0 * a2);
    x(4) = w1.imag() / a2;
    x(5) = w2.imag() / a2;
    x(6) = -w1.real() / a2;
    x(7) = -w2.real() / a2;
    return x;
}

const Cp2CoordinateMap& cp2_coordinate_map() {
    static const Cp2CoordinateMap map = [] {
        const auto basis = sun_basis(3);
        std::mt19937 rng(20240817u);
        std::uniform_real_distribution<double> uni(-1.5, 1.5);
        const int samples = 20;
        Eigen::MatrixXd lhs(samples, 9);
        Eigen::MatrixXd rhs(samples, 8);
        for (int s = 0; s < samples; ++s) {
            const Complex w1(uni(rng), uni(rng));
            const Complex w2(uni(rng), uni(rng));
            Eigen::Vector3cd fvec(1.0, w1, w2);
            const Eigen::MatrixXcd proj =
                Eigen::MatrixXcd::Identity(3, 3) - (fvec * fvec.adjoint()) / fvec.squaredNorm();
            const Eigen::MatrixXcd x =
                Complex(0.0, 1.0) * (-2.0 / 3.0 * Eigen::MatrixXcd::Identity(3, 3) + proj);
            const Eigen::VectorXd generic = sun_coordinates(x, basis);
            lhs.row(s).head(8) = generic.transpose();
            lhs(s, 8) = 1.0;
            rhs.row(s) = cp2_radius_holomorphic(w1, w2).transpose();
        }
        Eigen::MatrixXd solution = lhs.colPivHouseholderQr().solve(rhs);  // 9 x 8
        Cp2CoordinateMap out;
        out.rotation = solution.topRows(8).transpose();
        out.offset = solution.row(8).transpose();
        out.fit_residual = (lhs * solution - rhs).norm();
        if (out.fit_residual > 1e-10)
            fail(Errc::non_convergent, "coordinate-map calibration did not close");
        const Eigen::Matrix<double, 8, 8> gram = out.rotation * out.rotation.transpose();
        if ((gram - Eigen::Matrix<double, 8, 8>::Identity()).norm() > 1e-10)
            fail(Errc::non_convergent, "calibrated coordinate map is not orthogonal");
        return out;
    }();
    return map;
}

Eigen::VectorXd cp2_paper_coordinates(const Eigen::MatrixXcd& x, bool with_offset) {
    const Cp2CoordinateMap& map = cp2_coordinate_map();
    Eigen::VectorXd coords = map.rotation * sun_coordinates(x, sun_basis(3));
    if (with_offset) coords += map.offset;
    return coords;
}

Eigen::Matrix<double, 8, 1> cp2_one_forms(const VectorSpec& f, int k, Complex xi,
                                          Complex velocity) {
    if (f.n != 3) fail(Errc::invalid_dimension, "the radius 1-forms are CP^2 objects");
    const JetVector v = tower_lean(f, k, xi, k + 1);
    if (std::abs(v.entries[0].value()) < 1e-12)
        fail(Errc::path_through_singularity,
             "inhomogeneous coordinates blow up on the path");
    return cp2_one_forms_from_w(v.entries[1] / v.entries[0], v.entries[2] / v.entries[0],
                                velocity);
}

Eigen::Matrix<double, 8, 1> cp2_one_forms_from_w(const BiJet& w1, const BiJet& w2,
                                                 Complex velocity) {
    const Complex w1v = w1.value(), w2v = w2.value();
    const Complex cw1 = std::conj(w1v), cw2 = std::conj(w2v);
    const Complex dw1 = w1.deriv(Var::xi).value();
    const Complex dw2 = w2.deriv(Var::xi).value();
    const Complex dcw1 = w1.conjugated().deriv(Var::xi).value();
    const Complex dcw2 = w2.conjugated().deriv(Var::xi).value();
    const double a2 = 1.0 + std::norm(w1v) + std::norm(w2v);
    const double inv = 1.0 / (a2 * a2);

    const Complex b1 = (w2v * w2v - w1v * w1v) * (cw1 * dcw2 - cw2 * dcw1) -
                       (cw2 * cw2 - cw1 * cw1) * (w1v * dw2 - w2v * dw1) - w2v * dcw1 +
                       cw2 * dw1 - w1v * dcw2 + cw1 * dw2;
    const Complex b2 = (w1v * w1v + w2v * w2v) * (cw2 * dcw1 - cw1 * dcw2) +
                       (cw1 * cw1 + cw2 * cw2) * (w2v * dw1 - w1v * dw2) + w2v * dcw1 +
                       cw2 * dw1 - w1v * dcw2 - cw1 * dw2;
    const Complex b3 = w2v * dcw2 - w1v * dcw1 - cw2 * dw2 + cw1 * dw1 +
                       2.0 * std::norm(w1v) * (w2v * dcw2 - cw2 * dw2) -
                       2.0 * std::norm(w2v) * (w1v * dcw1 - cw1 * dw1);
    const Complex b4 = w1v * dcw1 + w2v * dcw2 - cw1 * dw1 - cw2 * dw2;
    const Complex b5 = (1.0 + cw1 * cw1 + std::norm(w2v)) * dw1 +
                       (1.0 + w1v * w1v + std::norm(w2v)) * dcw1 +
                       (w2v * dcw2 - cw2 * dw2) * (w1v - cw1);
    const Complex b6 = (1.0 + cw2 * cw2 + std::norm(w1v)) * dw2 +
                       (1.0 + w2v * w2v + std::norm(w1v)) * dcw2 +
                       (w1v * dcw1 - cw1 * dw1) * (w2v - cw2);
    const Complex b7 = (1.0 - w1v * w1v + std::norm(w2v)) * dcw1 -
                       (1.0 - cw1 * cw1 + std::norm(w2v)) * dw1 +
                       (cw2 * dw2 - w2v * dcw2) * (w1v + cw1);
    const Complex b8 = (1.0 - w2v * w2v + std::norm(w1v)) * dcw2 -
                       (1.0 - cw2 * cw2 + std::norm(w1v)) * dw2 +
                       (cw1 * dw1 - w1v * dcw1) * (w2v + cw2);

    Eigen::Matrix<double, 8, 1> d;
    d(0) = (b1 * velocity).real() * inv;
    d(1) = -(b2 * velocity).imag() * inv;
    d(2) = (b3 * velocity).real() * inv;
    d(3) = std::sqrt(3.0) * (b4 * velocity).real() * inv;
    d(4) = (b5 * velocity).imag() * inv;
    d(5) = (b6 * velocity).imag() * inv;
    d(6) = (b7 * velocity).real() * inv;
    d(7) = (b8 * velocity).real() * inv;
    return d;
}

namespace {

Eigen::Matrix<double, 8, 1> one_form_segment(const VectorSpec& f, int k, Complex a,
                                             Complex b, int segments, int nodes) {
    const GaussLegendreRule& rule = gauss_legendre(nodes);
    const Complex velocity = b - a;
    Eigen::Matrix<double, 8, 1> acc = Eigen::Matrix<double, 8, 1>::Zero();
    for (int s = 0; s < segments; ++s) {
        const double t0 = double(s) / segments;
        const double t1 = double(s + 1) / segments;
        for (int q = 0; q < nodes; ++q) {
            const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rule.nodes[q];
            const double w = 0.5 * (t1 - t0) * rule.weights[q];
            acc += w * cp2_one_forms(f, k, a + t * velocity, velocity);
        }
    }
    return acc;
}

}  // namespace

Eigen::Matrix<double, 8, 1> cp2_radius_mixed(const VectorSpec& f, Complex xi, int segments,
                                             int nodes_per_segment) {
    if (f.n != 3) fail(Errc::invalid_dimension, "mixed radius vector is a CP^2 object");
    if (segments < 1 || nodes_per_segment < 4)
        fail(Errc::invalid_argument, "need segments >= 1 and nodes >= 4");
    const Complex anchor(1.0, 0.0);
    // Anchor value: the mixed-surface table evaluated at xi = 1.
    Eigen::Matrix<double, 8, 1> x;
    const double r2 = std::sqrt(2.0);
    x << r2 / 2.0, 0.0, 0.5, std::sqrt(3.0) / 2.0, 0.0, 0.0, -r2 / 2.0, 0.0;
    if (xi == anchor) return x;
    // Two-leg path (vertical at Re = 1, then horizontal) keeps well away
    // from the coordinate pole at the origin for off-axis targets.
    const Complex mid(anchor.real(), xi.imag());
    std::vector<Complex> waypoints{anchor, mid, xi};
    for (size_t i = 0; i + 1 < waypoints.size(); ++i)
        if (waypoints[i] != waypoints[i + 1] &&
            segment_distance(Complex(0.0), waypoints[i], waypoints[i + 1]) < 1e-6)
            fail(Errc::path_through_singularity, "path passes the coordinate pole at 0");
    Eigen::Matrix<double, 8, 1> coarse = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 1> fine = Eigen::Matrix<double, 8, 1>::Zero();
    for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
        if (waypoints[i] == waypoints[i + 1]) continue;
        coarse += one_form_segment(f, 1, waypoints[i], waypoints[i + 1], segments,
                                   nodes_per_segment);
        fine += one_form_segment(f, 1, waypoints[i], waypoints[i + 1], 2 * segments,
                                 nodes_per_segment);
    }
    if ((coarse - fine).norm() > 1e-7)
        fail(Errc::non_convergent, "radius-vector integral does not settle");
    return x + fine;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> rank1_weierstrass_data(const VectorSpec& f,
                                                                     int k, Complex base) {
    if (k < 0 || k >= f.n) fail(Errc::tower_depth_exceeded, "need 0 <= k < N");
    JetVector v = jets_of(f, base, required_order(k));
    JetVector prev = v;
    for (int i = 0; i < k; ++i) {
        prev = v;
        v = p_plus_apply(v);
    }
    const ProjectorJet proj = projector_rank1(v);
    const JetMatrix dp = proj.p.deriv(Var::xi);
    const JetMatrix dbp = proj.p.deriv(Var::xibar);
    const Eigen::MatrixXcd pv = proj.value();
    const Eigen::MatrixXcd commut_d = value_commutator(dp.value(), pv);
    const Eigen::MatrixXcd commut_db = value_commutator(dbp.value(), pv);
    // Raising identity: [dP_k, P_k] - dP_k = 2 V_k (x) V_{k-1}^dagger / |V_{k-1}|^2.
    Eigen::MatrixXcd expected = commut_d - dp.value();
    if (k > 0) {
        const Eigen::VectorXcd vk = v.value();
        const Eigen::VectorXcd vp = prev.value();
        expected -= 2.0 * (vk * vp.adjoint()) / vp.squaredNorm();
    }
    const double scale = std::max(1.0, commut_d.norm());
    if (expected.norm() > 1e-10 * scale)
        fail(Errc::non_convergent, "raising identity violated for rank-one data");
    return {commut_d, commut_db};
}

Eigen::MatrixXcd rank1_projector_embedding(const VectorSpec& f, int k, Complex xi) {
    const JetVector v = tower_lean(f, k, xi, k + 1);
    const ProjectorJet proj = projector_rank1(v);
    return Complex(0.0, 1.0) *
           (proj.value() - Eigen::MatrixXcd::Identity(f.n, f.n) / double(f.n));
}

}  // namespace cpnsurf
