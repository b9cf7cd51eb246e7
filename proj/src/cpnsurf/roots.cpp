#include "cpnsurf/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cpnsurf {

int poly_degree(const std::vector<Complex>& coeffs) {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (coeffs[i] != Complex(0.0)) return i;
    return -1;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    const int deg = poly_degree(coeffs);
    if (deg < 0) fail(Errc::root_finding_failure, "zero polynomial has no isolated roots");
    if (deg == 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        fail(Errc::root_finding_failure, "companion eigenvalue iteration failed");
    std::vector<Complex> roots(deg);
    const std::vector<Complex> deriv = poly_derivative(coeffs);
    for (int i = 0; i < deg; ++i) {
        Complex r = solver.eigenvalues()(i);
        const Complex dp = poly_eval(deriv, r);
        if (std::abs(dp) > 1e-12) r -= poly_eval(coeffs, r) / dp;
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            fail(Errc::root_finding_failure, "non-finite root estimate");
        roots[i] = r;
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace cpnsurf
