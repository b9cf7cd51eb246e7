#include <doctest.h>

#include <cmath>
#include <random>

#include "cpnsurf/geometry.hpp"
#include "cpnsurf/immersion.hpp"

using namespace cpnsurf;

namespace {

std::vector<Complex> sample_points(unsigned seed, int count, double span = 2.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-span, span);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) out.emplace_back(uni(rng), uni(rng));
    return out;
}

}  // namespace

TEST_CASE("metric of the CP^2 tower") {
    const VectorSpec f = veronese_vector(3);

    // k = 0: g12 = 1/(1+s)^2, off-diagonal terms vanish
    for (const Complex& xi : {Complex(1.0), Complex(0.3, -0.8), Complex(-1.2, 0.4)}) {
        const MetricSample g = metric(tower(f, 0, xi, 3));
        const double s = std::norm(xi);
        CHECK(std::abs(g.g12 - 1.0 / ((1.0 + s) * (1.0 + s))) < 1e-12);
        CHECK(std::abs(g.g11) < 1e-12);
        CHECK(std::abs(g.g22) < 1e-12);
    }
    CHECK(std::abs(metric(tower(f, 0, Complex(1.0), 3)).g12 - 0.25) < 1e-13);

    // k = 1: g12 doubles
    for (const Complex& xi : sample_points(61, 10)) {
        const MetricSample g = metric(tower(f, 1, xi, 4));
        const double s = std::norm(xi);
        CHECK(std::abs(g.g12 - 2.0 / ((1.0 + s) * (1.0 + s))) < 1e-11);
    }

    // general dimension: 2 g12 (1+s)^2 = N-1
    for (int n = 2; n <= 6; ++n) {
        const VectorSpec fn = veronese_vector(n);
        for (const Complex& xi : sample_points(67 + n, 5)) {
            const MetricSample g = metric(tower(fn, 0, xi, 3));
            const double s = std::norm(xi);
            CHECK(std::abs(2.0 * g.g12.real() * (1.0 + s) * (1.0 + s) - (n - 1.0)) < 1e-10);
        }
    }
}

TEST_CASE("projector trace route agrees with the tower-ratio route") {
    const VectorSpec f = veronese_vector(4);
    for (int k = 0; k < 4; ++k) {
        for (const Complex& xi : sample_points(71 + k, 12)) {
            const double via_trace = metric(tower(f, k, xi, required_order(k))).g12.real();
            const double via_ratios = g12_from_tower_ratios(f, k, xi);
            CHECK(std::abs(via_trace - via_ratios) < 1e-11 * std::max(1.0, via_trace));
        }
    }
}

TEST_CASE("connection coefficients of the holomorphic CP^2 solution") {
    const VectorSpec f = veronese_vector(3);
    const ChristoffelSymbols at_one = christoffel(projector_full(tower(f, 0, Complex(1.0), 3)));
    CHECK(std::abs(at_one.g1_11 - Complex(-1.0)) < 1e-11);
    CHECK(std::abs(at_one.g2_11) < 1e-11);
    CHECK(std::abs(at_one.g1_12) == 0.0);
    CHECK(std::abs(at_one.g2_12) == 0.0);

    const ChristoffelSymbols at_zero = christoffel(projector_full(tower(f, 0, Complex(0.0), 3)));
    CHECK(std::abs(at_zero.g1_11) < 1e-12);
    CHECK(std::abs(at_zero.g2_22) < 1e-12);

    // against the closed forms -2 conj(xi)/(1+s) and -2 xi/(1+s)
    for (const Complex& xi : sample_points(73, 10)) {
        const ChristoffelSymbols cs = christoffel(projector_full(tower(f, 0, xi, 3)));
        const double s = std::norm(xi);
        CHECK(std::abs(cs.g1_11 - (-2.0 * std::conj(xi) / (1.0 + s))) < 1e-10);
        CHECK(std::abs(cs.g2_22 - (-2.0 * xi / (1.0 + s))) < 1e-10);
    }
}

TEST_CASE("Gaussian curvature constants") {
    for (int n = 2; n <= 6; ++n) {
        const VectorSpec f = veronese_vector(n);
        for (const Complex& xi : sample_points(79 + n, 8)) {
            CHECK(std::abs(gaussian_curvature(tower(f, 0, xi, 3)) - 4.0 / (n - 1.0)) < 1e-9);
        }
    }
    const VectorSpec f3 = veronese_vector(3);
    CHECK(std::abs(gaussian_curvature(tower(f3, 0, Complex(0.4, 0.2), 3)) - 2.0) < 1e-10);
    CHECK(std::abs(gaussian_curvature(tower(f3, 1, Complex(0.4, 0.2), 4)) - 1.0) < 1e-10);

    // spread over 50 random points stays tiny
    double lo = 1e30, hi = -1e30;
    for (const Complex& xi : sample_points(83, 50)) {
        const double curv = gaussian_curvature(tower(f3, 0, xi, 3));
        lo = std::min(lo, curv);
        hi = std::max(hi, curv);
    }
    CHECK(hi - lo < 1e-9);
}

TEST_CASE("analytic mixed derivative of ln g12 matches finite differences") {
    const VectorSpec f = veronese_vector(3);
    const Complex xi(0.7, -0.3);
    const BiJet g = g12_jet(tower(f, 0, xi, 3));
    const Complex analytic = g.logarithm().deriv(Var::xi).deriv(Var::xibar).value();

    const double h = 1e-4;
    const auto lng = [&](double dx, double dy) {
        const Complex p = xi + Complex(dx, dy);
        return std::log(metric(tower(f, 0, p, 3)).g12.real());
    };
    // d dbar = (1/4)(dxx + dyy)
    const double lap = (lng(h, 0) + lng(-h, 0) + lng(0, h) + lng(0, -h) - 4.0 * lng(0, 0)) /
                       (h * h);
    CHECK(std::abs(analytic.real() - 0.25 * lap) < 1e-5 * std::max(1.0, std::abs(lap)));
}

TEST_CASE("second fundamental form against the component tables") {
    const VectorSpec f = veronese_vector(3);
    const ProjectorJet p0 = projector_full(tower(f, 0, Complex(0.0), 3));
    const SecondFundamentalForm ii = second_fundamental_form(p0, -1);
    CHECK(std::abs(ii.dxi2(0, 2) - Complex(0.0, 2.0)) < 1e-12);
    CHECK(std::abs(ii.dxi_dxibar(0, 0) - Complex(0.0, -4.0)) < 1e-12);

    // the dxibar^2 block is minus the adjoint of the dxi^2 block
    for (const Complex& xi : sample_points(89, 10)) {
        const ProjectorJet p = projector_full(tower(f, 0, xi, 3));
        const SecondFundamentalForm s = second_fundamental_form(p, -1);
        CHECK((s.dxibar2 + s.dxi2.adjoint()).norm() < 1e-10);
    }

    // epsilon flips every coefficient
    const SecondFundamentalForm plus = second_fundamental_form(p0, 1);
    CHECK((plus.dxi2 + ii.dxi2).norm() < 1e-14);
}

TEST_CASE("second fundamental form table at a generic point") {
    // At xi = 1 the dxi^2 coefficient of the (1,3) entry is
    // 2i/(1+s)^4 evaluated with s = 1, i.e. i/8, and the (1,1) mixed
    // coefficient is 2i(4s-2)/(1+s)^4 = i/4.
    const VectorSpec f = veronese_vector(3);
    const ProjectorJet p = projector_full(tower(f, 0, Complex(1.0), 3));
    const SecondFundamentalForm s = second_fundamental_form(p, -1);
    CHECK(std::abs(s.dxi2(0, 2) - Complex(0.0, 0.125)) < 1e-11);
    CHECK(std::abs(s.dxi_dxibar(0, 0) - Complex(0.0, 0.25)) < 1e-11);
    // (1,2) mixed coefficient: (2 sqrt2 i/(1+s)^4) * 2 xi (s-2) at xi = 1
    CHECK(std::abs(s.dxi_dxibar(0, 1) - Complex(0.0, -std::sqrt(2.0) / 4.0)) < 1e-11);
}

TEST_CASE("mean curvature matrix, trace and rank") {
    const VectorSpec f = veronese_vector(3);
    const Eigen::MatrixXcd h0 = mean_curvature(f, 0, Complex(0.0));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(0, 0) = Complex(0.0, -4.0);
    expected(1, 1) = Complex(0.0, 4.0);
    CHECK((h0 - expected).norm() < 1e-12);
    CHECK(std::abs(h0.trace()) < 1e-12);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h0);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
        if (svd.singularValues()(i) > 1e-10) ++rank;
    CHECK(rank == 2);

    // full matrix against the closed form at a generic point
    for (const Complex& xi : sample_points(97, 6)) {
        const double s = std::norm(xi);
        const double pre = 4.0 / ((1.0 + s) * (1.0 + s));
        Eigen::MatrixXcd table(3, 3);
        const double r2 = std::sqrt(2.0);
        table << Complex(2.0 * s - 1.0), r2 * xi * (s - 2.0), -3.0 * xi * xi,
            r2 * std::conj(xi) * (s - 2.0), Complex(1.0 + s * (s - 4.0)),
            -r2 * xi * (2.0 * s - 1.0), -3.0 * std::conj(xi) * std::conj(xi),
            -r2 * std::conj(xi) * (2.0 * s - 1.0), Complex(-s * (s - 2.0));
        table *= Complex(0.0, pre);
        CHECK((mean_curvature(f, 0, xi) - table).norm() < 1e-9);
    }

    for (const Complex& xi : sample_points(101, 5))
        CHECK(std::abs(mean_curvature(f, 1, xi).trace()) < 1e-10);
}

TEST_CASE("mixed-derivative consistency of the immersion jet") {
    // value(d dbar X) = eps i d dbar P for the closed-form immersion jet
    const VectorSpec f = veronese_vector(3);
    for (const Complex& xi : sample_points(103, 5)) {
        const ProjectorJet p = projector_full(tower(f, 0, xi, 3));
        for (int eps : {1, -1}) {
            const Eigen::MatrixXcd ddbx =
                Complex(0.0, double(eps)) * p.p.deriv(Var::xi).deriv(Var::xibar).value();
            const Eigen::MatrixXcd ddbp = p.p.deriv(Var::xi).deriv(Var::xibar).value();
            CHECK((ddbx - Complex(0.0, double(eps)) * ddbp).norm() < 1e-12);
        }
    }
}

TEST_CASE("energy density of the holomorphic CP^2 solution") {
    const VectorSpec f = veronese_vector(3);
    CHECK(std::abs(energy_density(f, Complex(0.0)) - std::log(2.0)) < 1e-12);
    CHECK(std::abs(energy_density(f, Complex(0.0, 1.0)) - std::log(0.5)) < 1e-12);
    CHECK(std::abs(energy_density(f, Complex(1.0)) - std::log(0.5)) < 1e-12);
    // decreasing along growing |xi|
    const double u1 = energy_density(f, Complex(1.0));
    const double u2 = energy_density(f, Complex(2.0));
    const double u4 = energy_density(f, Complex(4.0));
    CHECK(u1 > u2);
    CHECK(u2 > u4);
}

TEST_CASE("degenerate metric is reported, not fabricated") {
    JetVector flat;
    flat.entries.push_back(BiJet::constant(1.0, Complex(0.0), 3));
    flat.entries.push_back(BiJet::constant(0.5, Complex(0.0), 3));
    CHECK_THROWS_WITH_AS(gaussian_curvature(flat), doctest::Contains("DegenerateMetric"),
                         Error);
    CHECK_THROWS_WITH_AS(christoffel(projector_full(flat)),
                         doctest::Contains("DegenerateMetric"), Error);
}
