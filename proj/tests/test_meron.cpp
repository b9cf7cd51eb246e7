#include <doctest.h>

#include <cmath>
#include <random>

#include "cpnsurf/immersion.hpp"
#include "cpnsurf/meron.hpp"
#include "cpnsurf/quadrature.hpp"

using namespace cpnsurf;

namespace {

const double kPi = std::acos(-1.0);

MeronSpec linear_spec(int branch = 1) {
    MeronSpec spec;
    spec.F = RationalFunction::polynomial({Complex(0.0), Complex(1.0)});  // F = xi
    spec.c = Complex(0.6, 0.8);
    spec.branch = branch;
    return spec;
}

std::vector<Complex> right_half_points(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> re(0.2, 2.0);
    std::uniform_real_distribution<double> im(-2.0, 2.0);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) out.emplace_back(re(rng), im(rng));
    return out;
}

}  // namespace

TEST_CASE("scaling-invariant solutions have unit modulus") {
    for (int branch : {1, -1}) {
        const MeronSpec spec = linear_spec(branch);
        for (const Complex& xi : right_half_points(301, 20)) {
            const auto [w1, w2] = meron_solution(spec, xi);
            CHECK(std::abs(std::abs(w1) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(w2) - 1.0) < 1e-12);
        }
    }
    // F real positive makes w1 = 1
    CHECK(std::abs(meron_solution(linear_spec(), Complex(2.0)).first - Complex(1.0)) <
          1e-14);
    CHECK_THROWS_WITH_AS(meron_solution(linear_spec(), Complex(0.0)),
                         doctest::Contains("ZeroOfF"), Error);
    CHECK_THROWS_WITH_AS(meron_solution(linear_spec(), Complex(-1.0, 0.0)),
                         doctest::Contains("BranchCut"), Error);
}

TEST_CASE("field equations hold on the admissible phases only") {
    const MeronSpec spec = linear_spec();
    for (const Complex& xi : right_half_points(307, 5)) {
        for (double psi : {kPi / 3.0, -kPi / 3.0}) {
            const auto [w1, w2] = meron_w_jets(spec, xi, 2, psi);
            CHECK(cp2_equation_residual(w1, w2) < 1e-9);
        }
        const auto [w1q, w2q] = meron_w_jets(spec, xi, 2, kPi / 4.0);
        CHECK(cp2_equation_residual(w1q, w2q) > 1e-3);
    }
}

TEST_CASE("radius vector identities and spot values") {
    for (int branch : {1, -1}) {
        const MeronSpec spec = linear_spec(branch);
        for (const Complex& xi : right_half_points(311, 20)) {
            const auto v = meron_radius(spec, xi);
            const double third = 1.0 / 27.0;
            CHECK(std::abs(v(0) * v(0) + v(1) * v(1) - third) < 1e-12);
            CHECK(std::abs(v(4) * v(4) + v(6) * v(6) - third) < 1e-12);
            CHECK(std::abs(v(5) * v(5) + v(7) * v(7) - third) < 1e-12);
        }
    }
    // F = xi at xi = 1 with real c: X5 = -1/(3 sqrt3), X7 = 0
    MeronSpec real_c = linear_spec();
    real_c.c = Complex(1.0);
    const auto v = meron_radius(real_c, Complex(1.0));
    CHECK(std::abs(v(4) + 1.0 / (3.0 * std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(v(6)) < 1e-14);
}

TEST_CASE("radius vector differentiates to the CP^2 1-forms") {
    // The closed form and the 1-forms of the inhomogeneous coordinates
    // describe the same surface, so directional finite differences of the
    // former match the latter.
    for (int branch : {1, -1}) {
        const MeronSpec spec = linear_spec(branch);
        for (const Complex& xi : right_half_points(313, 6)) {
            const auto [w1, w2] = meron_w_jets(spec, xi, 2, branch * kPi / 3.0);
            for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                const Eigen::Matrix<double, 8, 1> form = cp2_one_forms_from_w(w1, w2, dir);
                const double h = 1e-5;
                const Eigen::Matrix<double, 8, 1> fd =
                    (meron_radius(spec, xi + h * dir) - meron_radius(spec, xi - h * dir)) /
                    (2.0 * h);
                CHECK((form - fd).norm() < 1e-7 * std::max(1.0, fd.norm()));
            }
        }
    }
}

TEST_CASE("flat conformal factor") {
    const MeronSpec spec = linear_spec();
    const MetricSample g = meron_metric(spec, Complex(1.0));
    CHECK(std::abs(g.g12 - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(g.g11) == 0.0);
    CHECK(std::abs(g.g22) == 0.0);
    for (const Complex& xi : right_half_points(317, 10)) {
        CHECK(std::abs(meron_metric(spec, xi).g12.real() - 1.0 / (3.0 * std::norm(xi))) <
              1e-13);
        CHECK(std::abs(gaussian_curvature_from_g12(meron_g12_jet(spec, xi, 2))) < 1e-10);
    }
}

TEST_CASE("meron metric agrees with the general metric on the solution jets") {
    const MeronSpec spec = linear_spec();
    for (const Complex& xi : right_half_points(319, 8)) {
        const auto [w1, w2] = meron_w_jets(spec, xi, 2, kPi / 3.0);
        JetVector v;
        v.entries.push_back(BiJet::constant(1.0, xi, 2));
        v.entries.push_back(w1);
        v.entries.push_back(w2);
        const MetricSample general = metric(v);
        const MetricSample flat = meron_metric(spec, xi);
        CHECK(std::abs(general.g12 - flat.g12) < 1e-9);
        CHECK(std::abs(general.g11) < 1e-9);
    }
}

TEST_CASE("pole structure of the logarithmic derivative") {
    // F = xi(xi-1)
    RationalFunction f =
        RationalFunction::polynomial({Complex(0.0), Complex(-1.0), Complex(1.0)});
    const QuadDiffReport report = quad_diff_report(f);
    REQUIRE(report.finite_poles.size() == 2);
    CHECK(std::abs(report.finite_poles[0].location) < 1e-12);
    CHECK(std::abs(report.finite_poles[1].location - Complex(1.0)) < 1e-12);
    CHECK(report.finite_poles[0].residue == Complex(1.0));
    CHECK(report.finite_poles[1].residue == Complex(1.0));
    CHECK(report.residue_at_infinity == Complex(-2.0));
    REQUIRE(report.zeros.size() == 1);
    CHECK(std::abs(report.zeros[0] - Complex(0.5)) < 1e-12);
    REQUIRE(report.cylinders.size() == 3);
    CHECK(std::abs(report.cylinders[0].perimeter - 2.0 * kPi) < 1e-12);
    CHECK(std::abs(report.cylinders[1].perimeter - 2.0 * kPi) < 1e-12);
    CHECK(report.cylinders[2].is_infinite);
    CHECK(std::abs(report.cylinders[2].perimeter - 4.0 * kPi) < 1e-12);

    // F = xi
    const QuadDiffReport lin =
        quad_diff_report(RationalFunction::polynomial({Complex(0.0), Complex(1.0)}));
    REQUIRE(lin.finite_poles.size() == 1);
    CHECK(lin.finite_poles[0].residue == Complex(1.0));
    CHECK(lin.residue_at_infinity == Complex(-1.0));

    // multiple root: F = xi^2 keeps an integer residue
    const QuadDiffReport sq = quad_diff_report(
        RationalFunction::polynomial({Complex(0.0), Complex(0.0), Complex(1.0)}));
    REQUIRE(sq.finite_poles.size() == 1);
    CHECK(sq.finite_poles[0].residue == Complex(2.0));

    // rational F: pole of F contributes a negative residue
    RationalFunction rat{{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(1.0)}};
    const QuadDiffReport ratrep = quad_diff_report(rat);
    REQUIRE(ratrep.finite_poles.size() == 2);
    CHECK(ratrep.finite_poles[0].residue == Complex(-1.0));  // at -1
    CHECK(ratrep.finite_poles[1].residue == Complex(1.0));   // at 0
    CHECK(ratrep.residue_at_infinity == Complex(0.0));

    // residue sum vanishes for a random cubic
    RationalFunction cubic = RationalFunction::polynomial(
        {Complex(0.3, 0.1), Complex(-1.2, 0.4), Complex(0.7, -0.3), Complex(1.0)});
    const QuadDiffReport c = quad_diff_report(cubic);
    Complex total = c.residue_at_infinity;
    for (const auto& p : c.finite_poles) total += p.residue;
    CHECK(total == Complex(0.0));

    // nearly-coincident distinct roots are refused
    RationalFunction clustered = RationalFunction::polynomial(
        {Complex(1.0 * (1.0 + 3e-7)), Complex(-(2.0 + 3e-7)), Complex(1.0)});
    CHECK_THROWS_WITH_AS(quad_diff_report(clustered), doctest::Contains("ClusteredRoots"),
                         Error);
}

TEST_CASE("trajectories: circle, loop winding, critical-point guards") {
    const RationalFunction lin = RationalFunction::polynomial({Complex(0.0), Complex(1.0)});
    const Trajectory circle = trace_trajectory(lin, Complex(1.0), 1e-3, 20000);
    CHECK(circle.closed);
    CHECK(circle.period_error < 1e-6);
    for (const Complex& p : circle.points) CHECK(std::abs(std::abs(p) - 1.0) < 1e-9);
    CHECK(std::abs(omega_perimeter(lin, circle.points) - 2.0 * kPi) < 1e-4);

    RationalFunction quad =
        RationalFunction::polynomial({Complex(0.0), Complex(-1.0), Complex(1.0)});
    const Trajectory loop = trace_trajectory(quad, Complex(0.1, 0.0), 2e-5, 100000);
    CHECK(loop.closed);
    const int w0 = winding_number(loop.points, Complex(0.0));
    CHECK(std::abs(w0) == 1);
    CHECK(winding_number(loop.points, Complex(1.0)) == 0);
    CHECK(std::abs(omega_perimeter(quad, loop.points) - 2.0 * kPi) < 1e-4);

    CHECK_THROWS_WITH_AS(trace_trajectory(quad, Complex(0.5, 0.0), 1e-3, 1000),
                         doctest::Contains("SeedAtCriticalPoint"), Error);
}
