#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cpnsurf/geometry.hpp"
#include "cpnsurf/jet.hpp"

namespace cpnsurf {

/// Dilation-invariant CP^2 input: one generating function F, a unit-free
/// constant c, and the branch selecting psi = +-pi/3.
struct MeronSpec {
    RationalFunction F;
    Complex c{1.0};
    int branch = 1;  // +1 -> psi = pi/3, -1 -> psi = -pi/3
};

/// Inhomogeneous coordinates (w1, w2) of the scaling-invariant solution at a
/// point; both have unit modulus.
std::pair<Complex, Complex> meron_solution(const MeronSpec& spec, Complex xi);

/// Bivariate jets of (w1, w2) with an arbitrary phase angle psi; used to
/// probe the field equations on and off the admissible branch angles.
std::pair<BiJet, BiJet> meron_w_jets(const MeronSpec& spec, Complex xi, int order,
                                     double psi);

/// The eight closed-form radius components of the flat meron surface. The
/// branch enters through the sign of the logarithmic phase factor so both
/// branches produce real components.
Eigen::Matrix<double, 8, 1> meron_radius(const MeronSpec& spec, Complex xi);

/// Conformal factor g12 = |F'/F|^2 / 3; g11 = g22 = 0.
MetricSample meron_metric(const MeronSpec& spec, Complex xi);

/// g12 as a jet (for curvature checks; the curvature vanishes identically).
BiJet meron_g12_jet(const MeronSpec& spec, Complex xi, int order);

struct QuadDiffPole {
    Complex location;
    Complex residue;  // integer-valued
};

struct QuadDiffCylinder {
    Complex pole;  // finite pole location; infinity encoded by is_infinite
    bool is_infinite = false;
    double perimeter = 0.0;
};

/// Pole/zero structure of the logarithmic derivative F'/F together with the
/// semi-infinite cylinder inventory (one per pole, perimeter 2 pi |residue|).
struct QuadDiffReport {
    std::vector<QuadDiffPole> finite_poles;
    Complex residue_at_infinity;
    std::vector<Complex> zeros;
    std::vector<QuadDiffCylinder> cylinders;
};

QuadDiffReport quad_diff_report(const RationalFunction& f);

/// Vertical trajectory of the induced flat metric traced with fixed-step
/// classic Runge-Kutta.
struct Trajectory {
    Complex seed;
    std::vector<Complex> points;
    bool closed = false;
    double period_error = 0.0;
};

Trajectory trace_trajectory(const RationalFunction& f, Complex seed, double step,
                            int max_steps);

/// Length of a polygonal loop in the |F'/F| |dxi| metric.
double omega_perimeter(const RationalFunction& f, const std::vector<Complex>& loop);

/// Winding number of a closed polygon around z0.
int winding_number(const std::vector<Complex>& loop, Complex z0);

}  // namespace cpnsurf
