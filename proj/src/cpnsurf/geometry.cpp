#include "cpnsurf/geometry.hpp"

#include <cmath>

namespace cpnsurf {

namespace {

constexpr double kDegenerateG12 = 1e-14;

}  // namespace

MetricSample metric(const JetVector& v) {
    const auto [j, jbar] = j_invariants(v);
    const ProjectorJet proj = projector_full(v);
    const Eigen::MatrixXcd dp = proj.p.deriv(Var::xi).value();
    const Eigen::MatrixXcd dbp = proj.p.deriv(Var::xibar).value();
    MetricSample out;
    out.g11 = -j;
    out.g22 = -jbar;
    out.g12 = 0.5 * (dp * dbp).trace();
    return out;
}

double g12_from_tower_ratios(const VectorSpec& f, int k, Complex xi) {
    // tr(dP dbarP) telescopes to |V_{k+1}|^2/|V_k|^2 + |V_k|^2/|V_{k-1}|^2.
    JetVector v = jets_of(f, xi, k + 2);
    std::vector<double> norms;  // |V_j|^2 for j = 0..k+1
    norms.push_back(std::abs(dot_dagger(v, v).value()));
    for (int j = 0; j < k + 1; ++j) {
        v = p_plus_apply(v);
        norms.push_back(std::abs(dot_dagger(v, v).value()));
    }
    double g = norms[k + 1] / norms[k];
    if (k > 0) g += norms[k] / norms[k - 1];
    return 0.5 * g;
}

ChristoffelSymbols christoffel(const ProjectorJet& p) {
    if (p.order() < 2) fail(Errc::order_exhausted, "Christoffel symbols need order >= 2");
    const JetMatrix dp = p.p.deriv(Var::xi);
    const JetMatrix dbp = p.p.deriv(Var::xibar);
    const Eigen::MatrixXcd dpv = dp.value();
    const Eigen::MatrixXcd dbpv = dbp.value();
    const Eigen::MatrixXcd d2pv = dp.deriv(Var::xi).value();
    const Eigen::MatrixXcd db2pv = dbp.deriv(Var::xibar).value();
    const Complex den = (dpv * dbpv).trace();
    if (std::abs(den) < kDegenerateG12)
        fail(Errc::degenerate_metric, "tr(dP dbarP) vanishes at the base point");
    ChristoffelSymbols s;
    s.g1_11 = (d2pv * dbpv).trace() / den;
    s.g2_11 = (d2pv * dpv).trace() / den;
    s.g1_22 = (db2pv * dbpv).trace() / den;
    s.g2_22 = (db2pv * dpv).trace() / den;
    s.g1_12 = Complex(0.0);
    s.g2_12 = Complex(0.0);
    return s;
}

BiJet g12_jet(const JetVector& v) {
    if (v.order() < 1) fail(Errc::order_exhausted, "g12 jet needs order >= 1");
    const ProjectorJet proj = projector_full(v);
    const JetMatrix dp = proj.p.deriv(Var::xi);
    const JetMatrix dbp = proj.p.deriv(Var::xibar);
    return (dp * dbp).trace() * Complex(0.5);
}

double gaussian_curvature_from_g12(const BiJet& g) {
    if (g.order() < 2) fail(Errc::order_exhausted, "curvature needs a g12 jet of order >= 2");
    if (!(g.value().real() > kDegenerateG12))
        fail(Errc::degenerate_metric, "g12 not positive at the base point");
    const BiJet lg = g.logarithm();
    const Complex mixed = lg.deriv(Var::xi).deriv(Var::xibar).value();
    return -(mixed / g.value()).real();
}

double gaussian_curvature(const JetVector& v) {
    return gaussian_curvature_from_g12(g12_jet(v));
}

SecondFundamentalForm second_fundamental_form(const ProjectorJet& p, int epsilon) {
    if (epsilon != 1 && epsilon != -1)
        fail(Errc::invalid_argument, "epsilon must be +1 or -1");
    const ChristoffelSymbols s = christoffel(p);
    const JetMatrix dp = p.p.deriv(Var::xi);
    const JetMatrix dbp = p.p.deriv(Var::xibar);
    const Eigen::MatrixXcd dpv = dp.value();
    const Eigen::MatrixXcd dbpv = dbp.value();
    const Eigen::MatrixXcd d2pv = dp.deriv(Var::xi).value();
    const Eigen::MatrixXcd db2pv = dbp.deriv(Var::xibar).value();
    const Eigen::MatrixXcd ddbpv = dp.deriv(Var::xibar).value();
    const Complex ei = Complex(0.0, double(epsilon));
    SecondFundamentalForm out;
    // Reported transposed so entries line up with the coordinate tables.
    out.dxi2 = (ei * (d2pv - s.g1_11 * dpv - s.g2_11 * dbpv)).transpose();
    out.dxi_dxibar = (ei * 2.0 * ddbpv).transpose();
    out.dxibar2 = (ei * (db2pv - s.g1_22 * dpv - s.g2_22 * dbpv)).transpose();
    return out;
}

Eigen::MatrixXcd mean_curvature(const VectorSpec& f, int k, Complex base) {
    const JetVector v = tower(f, k, base, required_order(k));
    const ProjectorJet proj = projector_full(v);
    const JetMatrix dbp = proj.p.deriv(Var::xibar);
    const JetMatrix pt = proj.p.truncated(proj.order() - 1);
    // dbar X = i [dbar P, P]; differentiating the integrand once more gives
    // d dbar X without touching the line integral itself.
    const JetMatrix kmat = dbp * pt - pt * dbp;
    const Eigen::MatrixXcd ddbx = Complex(0.0, 1.0) * kmat.deriv(Var::xi).value();
    const MetricSample g = metric(v);
    if (!(g.g12.real() > kDegenerateG12))
        fail(Errc::degenerate_metric, "g12 not positive at the base point");
    return (-2.0 * ddbx / g.g12).transpose();
}

double energy_density(const VectorSpec& f, Complex base) {
    if (f.n != 3) fail(Errc::invalid_dimension, "energy density is defined for CP^2 inputs");
    const JetVector v = jets_of(f, base, 1);
    if (std::abs(v.entries[0].value()) == 0.0)
        fail(Errc::pole_at_base, "inhomogeneous coordinates undefined where f0 vanishes");
    const BiJet w1 = v.entries[1] / v.entries[0];
    const BiJet w2 = v.entries[2] / v.entries[0];
    const Complex dw1 = w1.deriv(Var::xi).value();
    const Complex dw2 = w2.deriv(Var::xi).value();
    const double a2 = 1.0 + std::norm(w1.value()) + std::norm(w2.value());
    const double num = std::norm(dw1) + std::norm(dw2) +
                       std::norm(w2.value() * dw1 - w1.value() * dw2);
    return std::log(num / (a2 * a2));
}

}  // namespace cpnsurf
