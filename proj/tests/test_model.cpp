#include <doctest.h>

#include <cmath>
#include <random>

#include "cpnsurf/model.hpp"

using namespace cpnsurf;

namespace {

std::vector<Complex> sample_points(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) out.emplace_back(uni(rng), uni(rng));
    return out;
}

JetVector constant_vector(const std::vector<Complex>& vals, Complex base, int order) {
    JetVector v;
    for (const Complex& c : vals) v.entries.push_back(BiJet::constant(c, base, order));
    return v;
}

// Hand-built non-harmonic probe (1, xi + 2 xibar, 0) at a point.
JetVector non_harmonic_vector(Complex base, int order) {
    JetVector v;
    v.entries.push_back(BiJet::constant(1.0, base, order));
    v.entries.push_back(BiJet::variable(base, order) +
                        BiJet::variable_conj(base, order) * Complex(2.0));
    v.entries.push_back(BiJet::constant(0.0, base, order));
    return v;
}

}  // namespace

TEST_CASE("binomial components of the canonical inputs") {
    const VectorSpec f3 = veronese_vector(3);
    CHECK(f3.components[0].numerator.size() == 1);
    CHECK(std::abs(f3.components[1].numerator[1] - Complex(std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(f3.components[2].numerator[2] - Complex(1.0)) < 1e-15);

    const VectorSpec f2 = veronese_vector(2);
    CHECK(std::abs(f2.components[0].numerator[0] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(f2.components[1].numerator[1] - Complex(1.0)) < 1e-15);

    const VectorSpec f4 = veronese_vector(4);
    CHECK(std::abs(f4.components[1].numerator[1] - Complex(std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(f4.components[2].numerator[2] - Complex(std::sqrt(3.0))) < 1e-15);
    CHECK(std::abs(f4.components[3].numerator[3] - Complex(1.0)) < 1e-15);

    CHECK_THROWS_WITH_AS(veronese_vector(1), doctest::Contains("InvalidDimension"), Error);
}

TEST_CASE("raising operator: constants, direction, nilpotency") {
    // constant vector -> zero
    const JetVector constant = constant_vector({1.0, 2.0, Complex(0.0, 1.0)}, Complex(0.4), 2);
    CHECK(p_plus_apply(constant).value().norm() < 1e-15);

    // direction at xi = 1 is (-sqrt2, 0, sqrt2)
    const VectorSpec f = veronese_vector(3);
    const JetVector v1 = p_plus_apply(jets_of(f, Complex(1.0), 2));
    const Eigen::VectorXcd val = v1.value();
    Eigen::VectorXcd dir(3);
    dir << -std::sqrt(2.0), 0.0, std::sqrt(2.0);
    const Complex ratio = val(0) / dir(0);
    CHECK((val - ratio * dir).norm() < 1e-12 * val.norm());

    // and at xi = i the direction rotates with the conjugate
    const JetVector v1i = p_plus_apply(jets_of(f, Complex(0.0, 1.0), 2));
    const Eigen::VectorXcd vali = v1i.value();
    Eigen::VectorXcd diri(3);
    diri << Complex(0.0, std::sqrt(2.0)), 0.0, Complex(0.0, std::sqrt(2.0));
    const Complex ratioi = vali(0) / diri(0);
    CHECK((vali - ratioi * diri).norm() < 1e-12 * vali.norm());

    // P+^3 annihilates the CP^2 input
    for (const Complex& xi : sample_points(31, 10)) {
        JetVector v = jets_of(f, xi, 4);
        for (int i = 0; i < 3; ++i) v = p_plus_apply(v);
        CHECK(v.value().norm() < 1e-10 * (1.0 + jets_of(f, xi, 4).value().norm()));
    }
}

TEST_CASE("tower bookkeeping") {
    const VectorSpec f = veronese_vector(3);
    const JetVector v0 = tower(f, 0, Complex(0.5, 0.5), 3);
    CHECK(v0.order() == 3);
    CHECK((v0.value() - jets_of(f, Complex(0.5, 0.5), 3).value()).norm() == 0.0);

    const JetVector v1 = tower(f, 1, Complex(0.5, 0.5), 4);
    CHECK(v1.order() == 3);

    CHECK_THROWS_WITH_AS(tower(f, 3, Complex(0.0), 6),
                         doctest::Contains("TowerDepthExceeded"), Error);
    CHECK_THROWS_WITH_AS(tower(f, 1, Complex(0.0), 3),
                         doctest::Contains("OrderExhausted"), Error);

    // adjacent members are orthogonal at the value level
    for (const Complex& xi : sample_points(37, 10)) {
        const JetVector a = tower(f, 0, xi, 4);
        const JetVector b = tower(f, 1, xi, 4);
        CHECK(std::abs(dot_dagger(a.truncated(b.order()), b).value()) < 1e-11);
    }
}

TEST_CASE("tower nilpotency P+^N f = 0 for N = 2..5") {
    for (int n = 2; n <= 5; ++n) {
        const VectorSpec f = veronese_vector(n);
        for (const Complex& xi : sample_points(41 + n, 5)) {
            JetVector v = jets_of(f, xi, n + 1);
            for (int i = 0; i < n; ++i) v = p_plus_apply(v);
            const double scale = 1.0 + jets_of(f, xi, 1).value().norm();
            CHECK(v.value().norm() < 1e-9 * scale);
        }
    }
}

TEST_CASE("lowering operator mirrors the raising operator under conjugation") {
    const VectorSpec f = veronese_vector(3);
    for (const Complex& xi : sample_points(43, 10)) {
        const JetVector v = jets_of(f, xi, 3);
        const Eigen::VectorXcd mirrored = p_minus_apply(conjugated(v)).value();
        const Eigen::VectorXcd direct = p_plus_apply(v).value().conjugate();
        CHECK((mirrored - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }
}

TEST_CASE("projectors: values, idempotency, traces") {
    const VectorSpec f = veronese_vector(3);
    const ProjectorJet p0 = projector_full(jets_of(f, Complex(0.0), 2));
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
    expected(1, 1) = 1.0;
    expected(2, 2) = 1.0;
    CHECK((p0.value() - expected).norm() < 1e-14);
    CHECK(std::abs(p0.value().trace() - Complex(2.0)) < 1e-13);

    const JetVector v1 = tower(f, 1, Complex(0.0), 4);
    const ProjectorJet r1 = projector_rank1(v1);
    Eigen::MatrixXcd expected1 = Eigen::MatrixXcd::Zero(3, 3);
    expected1(1, 1) = 1.0;
    CHECK((r1.value() - expected1).norm() < 1e-14);
    CHECK(std::abs(r1.value().trace() - Complex(1.0)) < 1e-13);

    const JetVector e0 = constant_vector({1.0, 0.0, 0.0}, Complex(0.7, -0.1), 2);
    CHECK((projector_rank1(e0).value() -
           Eigen::MatrixXcd(Eigen::Vector3cd(1.0, 0.0, 0.0).asDiagonal())).norm() < 1e-15);

    std::mt19937 rng(47);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const JetVector v = constant_vector(
            {Complex(uni(rng), uni(rng)), Complex(uni(rng), uni(rng)),
             Complex(uni(rng), uni(rng))},
            Complex(0.0), 1);
        const Eigen::MatrixXcd full = projector_full(v).value();
        const Eigen::MatrixXcd rank1 = projector_rank1(v).value();
        CHECK((full * full - full).norm() < 1e-12);
        CHECK((rank1 * rank1 - rank1).norm() < 1e-12);
        CHECK((full - full.adjoint()).norm() < 1e-13);
    }

    const JetVector null = constant_vector({0.0, 0.0, 0.0}, Complex(0.0), 1);
    CHECK_THROWS_WITH_AS(projector_full(null), doctest::Contains("NullVector"), Error);
}

TEST_CASE("field-equation residual separates harmonic from generic maps") {
    const VectorSpec f = veronese_vector(3);
    for (int k = 0; k <= 2; ++k) {
        const JetVector v = tower(f, k, Complex(0.6, -0.4), required_order(k));
        CHECK(el_residual(projector_full(v)) < 1e-10);
        CHECK(el_residual(projector_rank1(v)) < 1e-10);
    }
    const double bad = el_residual(projector_full(non_harmonic_vector(Complex(1.0), 2)));
    CHECK(bad > 1e-3);
}

TEST_CASE("J invariants vanish exactly on the tower") {
    const VectorSpec f = veronese_vector(3);
    for (int k = 0; k <= 2; ++k) {
        const auto [j, jbar] = j_invariants(tower(f, k, Complex(0.3, 1.1), required_order(k)));
        CHECK(std::abs(j) < 1e-11);
        CHECK(std::abs(jbar) < 1e-11);
    }
    JetVector probe;
    probe.entries.push_back(BiJet::constant(1.0, Complex(1.0), 2));
    probe.entries.push_back(BiJet::variable(Complex(1.0), 2) +
                            BiJet::variable_conj(Complex(1.0), 2) * Complex(2.0));
    const auto [j, jbar] = j_invariants(probe);
    (void)jbar;
    CHECK(std::abs(j) > 1e-3);
}

TEST_CASE("covariant data: gauge field imaginary, derivative orthogonal") {
    const JetVector e0 = constant_vector({1.0, 0.0, 0.0}, Complex(0.2), 2);
    const CovariantData trivial = covariant_data(e0);
    CHECK(std::abs(trivial.gauge) < 1e-15);
    CHECK(trivial.dz.norm() < 1e-15);

    const VectorSpec f = veronese_vector(3);
    for (const Complex& xi : sample_points(53, 10)) {
        const JetVector v = jets_of(f, xi, 2);
        const CovariantData data = covariant_data(v);
        CHECK(std::abs(data.gauge.real()) < 1e-12);
        CHECK(std::abs(data.gauge + std::conj(data.gauge)) < 1e-12);
        const Eigen::VectorXcd z = v.value() / v.value().norm();
        CHECK(std::abs(z.dot(data.dz)) < 1e-12);
    }
}

TEST_CASE("degree and action for the CP^2 tower") {
    const VectorSpec f = veronese_vector(3);
    const ChargeActionReport hol = charge_and_action(f, 0, 12);
    CHECK(std::abs(hol.charge - 1.0) < 1e-6);
    CHECK(std::abs(hol.action_energy - 2.0 * std::acos(-1.0)) < 1e-6);
    CHECK(hol.quadrature_order == 12);
    CHECK(hol.charts_used == 2);

    const ChargeActionReport mixed = charge_and_action(f, 1, 12);
    CHECK(std::abs(mixed.charge - 2.0) < 1e-6);

    CHECK_THROWS_WITH_AS(charge_and_action(f, 0, 4),
                         doctest::Contains("InvalidArgument"), Error);
}

TEST_CASE("g12 density stays positive off degeneracies") {
    const VectorSpec f = veronese_vector(4);
    for (const Complex& xi : sample_points(59, 20)) {
        for (int k = 0; k < 4; ++k) CHECK(g12_density(f, k, xi) > 0.0);
    }
}
