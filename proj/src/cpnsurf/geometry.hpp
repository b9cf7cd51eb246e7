#pragma once

#include <Eigen/Dense>

#include "cpnsurf/model.hpp"

namespace cpnsurf {

/// Coefficients of I = g11 dxi^2 + 2 g12 dxi dxibar + g22 dxibar^2 at a point.
struct MetricSample {
    Complex g11;  // = -J
    Complex g12;  // = tr(dP dbarP)/2, real positive off degeneracies
    Complex g22;  // = -Jbar
};

/// Metric of the surface attached to v through its full projector.
MetricSample metric(const JetVector& v);

/// Same g12 through the neighbour-norm ratios of the raising tower; an
/// algebraically independent route used to cross-check the projector trace.
double g12_from_tower_ratios(const VectorSpec& f, int k, Complex xi);

/// The six connection coefficients; the mixed ones vanish identically.
struct ChristoffelSymbols {
    Complex g1_11;
    Complex g2_11;
    Complex g1_12;  // identically zero
    Complex g2_12;  // identically zero
    Complex g1_22;
    Complex g2_22;
};

ChristoffelSymbols christoffel(const ProjectorJet& p);

/// Gaussian curvature -(1/g12) d dbar ln g12 from the g12 jet of v.
double gaussian_curvature(const JetVector& v);

/// Same, for a caller-supplied conformal factor jet (order >= 2, value > 0).
double gaussian_curvature_from_g12(const BiJet& g12_jet);

/// Builds the g12 jet of v (order drops by one).
BiJet g12_jet(const JetVector& v);

struct SecondFundamentalForm {
    Eigen::MatrixXcd dxi2;       // coefficient of dxi^2
    Eigen::MatrixXcd dxi_dxibar; // coefficient of dxi dxibar
    Eigen::MatrixXcd dxibar2;    // coefficient of dxibar^2
};

/// Extrinsic curvature coefficients, reported in the same row/column
/// orientation as the radius-vector component tables.
SecondFundamentalForm second_fundamental_form(const ProjectorJet& p, int epsilon);

/// Mean-curvature matrix of the depth-k surface, normalised to the component
/// tables (traceless, rank two for the constant-curvature solutions).
Eigen::MatrixXcd mean_curvature(const VectorSpec& f, int k, Complex base);

/// Logarithmic energy density of a CP^2 input in inhomogeneous coordinates.
double energy_density(const VectorSpec& f, Complex base);

}  // namespace cpnsurf
