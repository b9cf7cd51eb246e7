#pragma once

#include <functional>
#include <vector>

#include "cpnsurf/jet.hpp"

namespace cpnsurf {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending, computed once per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

/// Fixed node layout for integrals over the full plane seen as two
/// stereographic charts: the disk |xi| <= chart_radius directly, and the
/// complement through xi -> 1/xi with the |xi|^-4 Jacobian.
struct QuadratureScheme {
    int order = 16;            // Gauss-Legendre points per axis
    double chart_radius = 1.0;
    int subdivisions = 4;      // radial/angular panels per chart
    double theta_offset = 0.0; // rotation of the angular node layout
};

struct PlaneIntegral {
    double value;
    double refinement_error;
};

/// Integrate a real density over the whole plane. The density is evaluated
/// at plane points on both charts; refinement_error compares the scheme with
/// the order-doubled one, and a relative disagreement above 1e-4 is reported
/// as QuadratureDivergence.
PlaneIntegral integrate_plane(const std::function<double(Complex)>& density,
                              const QuadratureScheme& scheme);

/// Deterministic pairwise summation used by all quadrature accumulators.
double pairwise_sum(std::vector<double> terms);

}  // namespace cpnsurf
