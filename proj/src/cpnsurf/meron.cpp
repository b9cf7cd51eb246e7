#include "cpnsurf/meron.hpp"

#include <algorithm>
#include <cmath>

#include "cpnsurf/roots.hpp"

namespace cpnsurf {

namespace {

const double kPi = std::acos(-1.0);

Complex f_value_checked(const MeronSpec& spec, Complex xi) {
    const Complex fv = rational_eval(spec.F, xi);
    if (fv == Complex(0.0)) fail(Errc::zero_of_f, "F vanishes at the evaluation point");
    if (fv.imag() == 0.0 && fv.real() < 0.0)
        fail(Errc::branch_cut, "F lies on the principal branch cut");
    return fv;
}

double branch_psi(const MeronSpec& spec) {
    if (spec.branch != 1 && spec.branch != -1)
        fail(Errc::invalid_argument, "meron branch must be +1 or -1");
    return spec.branch * kPi / 3.0;
}

/// F'/F of a rational F = N/D as the rational function (N'D - ND')/(ND).
RationalFunction log_derivative(const RationalFunction& f) {
    const auto mul = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        std::vector<Complex> out(a.size() + b.size() - 1, Complex(0.0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    const std::vector<Complex> dn = poly_derivative(f.numerator);
    const std::vector<Complex> dd = poly_derivative(f.denominator);
    std::vector<Complex> num = mul(dn, f.denominator);
    const std::vector<Complex> sub = mul(f.numerator, dd);
    num.resize(std::max(num.size(), sub.size()), Complex(0.0));
    for (size_t i = 0; i < sub.size(); ++i) num[i] -= sub[i];
    return RationalFunction{num, mul(f.numerator, f.denominator)};
}

Complex log_derivative_value(const RationalFunction& f, Complex xi) {
    return rational_eval(log_derivative(f), xi);
}

struct RootCluster {
    Complex center;
    int multiplicity;
};

/// Group companion-matrix roots into multiplicity clusters. Eigenvalues of an
/// exact m-fold root scatter by roughly eps^(1/m) around it, so grouping uses
/// a tolerance well above that; a cluster is then accepted as a true multiple
/// root only if the polynomial value at its center is at noise level.
std::vector<RootCluster> clustered_roots(const std::vector<Complex>& coeffs) {
    const int deg = poly_degree(coeffs);
    if (deg < 1) return {};
    const std::vector<Complex> roots = poly_roots(coeffs);
    std::vector<RootCluster> clusters;
    std::vector<bool> used(roots.size(), false);
    const double merge_tol = 1e-7;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) < merge_tol) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        clusters.push_back(RootCluster{sum / double(count), count});
    }
    for (const auto& cl : clusters) {
        if (cl.multiplicity == 1) continue;
        double scale = 0.0;
        double power = 1.0;
        for (const Complex& c : coeffs) {
            scale += std::abs(c) * power;
            power *= std::max(1.0, std::abs(cl.center));
        }
        if (std::abs(poly_eval(coeffs, cl.center)) > 1e-12 * scale)
            fail(Errc::clustered_roots,
                 "root cluster is not an exact multiple root of the input");
    }
    for (size_t i = 0; i < clusters.size(); ++i)
        for (size_t j = i + 1; j < clusters.size(); ++j)
            if (std::abs(clusters[i].center - clusters[j].center) < 1e-6)
                fail(Errc::clustered_roots,
                     "distinct roots too close to separate reliably");
    return clusters;
}

}  // namespace

std::pair<BiJet, BiJet> meron_w_jets(const MeronSpec& spec, Complex xi, int order,
                                     double psi) {
    f_value_checked(spec, xi);
    const BiJet fj = jet_from_rational(spec.F, xi, order);
    const BiJet fbar = fj.conjugated();
    const BiJet w1 = fj / fbar;
    const Complex expi = std::exp(Complex(0.0, psi));
    const BiJet w2 = (spec.c / std::conj(spec.c)) *
                     (fj.power(expi) / fbar.power(std::conj(expi)));
    return {w1, w2};
}

std::pair<Complex, Complex> meron_solution(const MeronSpec& spec, Complex xi) {
    const auto [w1, w2] = meron_w_jets(spec, xi, 0, branch_psi(spec));
    return {w1.value(), w2.value()};
}

Eigen::Matrix<double, 8, 1> meron_radius(const MeronSpec& spec, Complex xi) {
    const Complex fv = f_value_checked(spec, xi);
    const double sigma = double(spec.branch);
    branch_psi(spec);  // validates the branch flag
    const double lf = std::log(std::abs(fv));
    const double phi = std::arg(fv);
    const double gamma = std::arg(spec.c);
    const double s3 = std::sqrt(3.0);
    const double scale = 1.0 / (3.0 * s3);
    const double alpha = phi - 2.0 * gamma - sigma * s3 * lf;
    const double beta = phi + 2.0 * gamma + sigma * s3 * lf;
    // The branch enters twice: inside the phase angles and as an overall
    // sign on every component except X3, pinned by matching the derivative
    // of this vector against the radius 1-forms of the solution.
    Eigen::Matrix<double, 8, 1> x;
    x(0) = -sigma * std::sin(alpha) * scale;
    x(1) = -sigma * std::cos(alpha) * scale;
    x(2) = (lf + sigma * s3 * phi) / 3.0;
    x(3) = (sigma * phi - s3 * lf) / 3.0;
    x(4) = -sigma * std::cos(2.0 * phi) * scale;
    x(5) = sigma * std::cos(beta) * scale;
    x(6) = -sigma * std::sin(2.0 * phi) * scale;
    x(7) = sigma * std::sin(beta) * scale;
    return x;
}

MetricSample meron_metric(const MeronSpec& spec, Complex xi) {
    const Complex fv = rational_eval(spec.F, xi);
    if (fv == Complex(0.0)) fail(Errc::zero_of_f, "F vanishes at the evaluation point");
    const Complex ld = log_derivative_value(spec.F, xi);
    MetricSample out;
    out.g11 = Complex(0.0);
    out.g22 = Complex(0.0);
    out.g12 = std::norm(ld) / 3.0;
    return out;
}

BiJet meron_g12_jet(const MeronSpec& spec, Complex xi, int order) {
    const Complex fv = rational_eval(spec.F, xi);
    if (fv == Complex(0.0)) fail(Errc::zero_of_f, "F vanishes at the evaluation point");
    const RationalFunction ld = log_derivative(spec.F);
    const BiJet ldj = jet_from_rational(ld, xi, order);
    return (ldj * ldj.conjugated()) * Complex(1.0 / 3.0);
}

QuadDiffReport quad_diff_report(const RationalFunction& f) {
    const int deg_num = poly_degree(f.numerator);
    const int deg_den = poly_degree(f.denominator);
    if (deg_num < 0) fail(Errc::invalid_argument, "F must be a nonzero rational function");
    QuadDiffReport report;
    for (const auto& cl : clustered_roots(f.numerator))
        report.finite_poles.push_back({cl.center, Complex(double(cl.multiplicity))});
    for (const auto& cl : clustered_roots(f.denominator)) {
        for (auto& existing : report.finite_poles)
            if (std::abs(existing.location - cl.center) < 1e-8)
                fail(Errc::clustered_roots, "zero and pole of F collide");
        report.finite_poles.push_back({cl.center, Complex(-double(cl.multiplicity))});
    }
    std::sort(report.finite_poles.begin(), report.finite_poles.end(),
              [](const QuadDiffPole& a, const QuadDiffPole& b) {
                  if (a.location.real() != b.location.real())
                      return a.location.real() < b.location.real();
                  return a.location.imag() < b.location.imag();
              });
    report.residue_at_infinity = Complex(-double(deg_num - deg_den));
    const RationalFunction ld = log_derivative(f);
    if (poly_degree(ld.numerator) >= 1) {
        for (const Complex& z : poly_roots(ld.numerator)) {
            bool is_pole = false;
            for (const auto& p : report.finite_poles)
                if (std::abs(z - p.location) < 1e-6) is_pole = true;
            if (!is_pole) report.zeros.push_back(z);
        }
    }
    for (const auto& p : report.finite_poles)
        report.cylinders.push_back(
            QuadDiffCylinder{p.location, false, 2.0 * kPi * std::abs(p.residue)});
    if (report.residue_at_infinity != Complex(0.0))
        report.cylinders.push_back(QuadDiffCylinder{
            Complex(0.0), true, 2.0 * kPi * std::abs(report.residue_at_infinity)});
    return report;
}

Trajectory trace_trajectory(const RationalFunction& f, Complex seed, double step,
                            int max_steps) {
    if (!(step > 0.0) || max_steps < 1)
        fail(Errc::invalid_argument, "need a positive step and max_steps >= 1");
    // Critical points of the line field: zeros and poles of F'/F.
    std::vector<Complex> critical;
    const RationalFunction ld = log_derivative(f);
    for (const auto& coeffs : {ld.numerator, ld.denominator})
        if (poly_degree(coeffs) >= 1)
            for (const Complex& z : poly_roots(coeffs)) critical.push_back(z);
    for (const Complex& z : critical)
        if (std::abs(seed - z) < 10.0 * step)
            fail(Errc::seed_at_critical_point, "seed too close to a critical point");

    // The condition Re((F'/F) dxi) = 0 fixes the path but not the speed; the
    // tracer uses the arc-length parametrization of i conj(F'/F) so that the
    // step is a spatial step and the closure test is meaningful.
    const auto velocity = [&](Complex xi) {
        const Complex v = Complex(0.0, 1.0) * std::conj(rational_eval(ld, xi));
        const double mag = std::abs(v);
        if (!(mag > 0.0)) fail(Errc::seed_at_critical_point, "line field vanishes on path");
        return v / mag;
    };
    const auto rk4 = [&](Complex xi, double h) {
        const Complex k1 = velocity(xi);
        const Complex k2 = velocity(xi + 0.5 * h * k1);
        const Complex k3 = velocity(xi + 0.5 * h * k2);
        const Complex k4 = velocity(xi + h * k3);
        return xi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    const Complex section_normal = velocity(seed);
    Trajectory traj;
    traj.seed = seed;
    traj.points.push_back(seed);
    Complex xi = seed;
    double along_prev = 0.0;  // signed flow coordinate across the seed section
    double drift = 0.0;       // accumulated Re of the flat coordinate
    Complex prev_ld = rational_eval(ld, seed);
    for (int n = 0; n < max_steps; ++n) {
        const Complex next = rk4(xi, step);
        const Complex next_ld = rational_eval(ld, next);
        const Complex mid_ld = rational_eval(ld, 0.5 * (xi + next));
        drift += (((prev_ld + 4.0 * mid_ld + next_ld) / 6.0) * (next - xi)).real();
        if (std::abs(drift) > 1e-4)
            fail(Errc::step_too_large, "flat-coordinate drift exceeds 1e-4");
        prev_ld = next_ld;
        xi = next;
        traj.points.push_back(xi);
        const double along = (std::conj(section_normal) * (xi - seed)).real();
        if (n > 10 && std::abs(xi - seed) < 10.0 * step && along_prev < 0.0 && along >= 0.0) {
            // Crossed the seed section; Newton steps along the flow pin the
            // return point.
            Complex ret = xi;
            for (int it = 0; it < 4; ++it) {
                const double gap = (std::conj(section_normal) * (ret - seed)).real();
                if (std::abs(gap) < 1e-14) break;
                ret = rk4(ret, -gap);
            }
            traj.points.back() = ret;  // drop the overshooting step
            traj.closed = true;
            traj.period_error = std::abs(ret - seed);
            break;
        }
        along_prev = along;
        bool stop = false;
        for (const Complex& z : critical)
            if (std::abs(xi - z) < 10.0 * step) stop = true;
        if (stop) break;
    }
    return traj;
}

double omega_perimeter(const RationalFunction& f, const std::vector<Complex>& loop) {
    const RationalFunction ld = log_derivative(f);
    double length = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        const double a = std::abs(rational_eval(ld, loop[i]));
        const double b = std::abs(rational_eval(ld, loop[i + 1]));
        length += 0.5 * (a + b) * std::abs(loop[i + 1] - loop[i]);
    }
    return length;
}

int winding_number(const std::vector<Complex>& loop, Complex z0) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < loop.size(); ++i) {
        const Complex a = loop[i] - z0;
        const Complex b = loop[i + 1] - z0;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace cpnsurf
