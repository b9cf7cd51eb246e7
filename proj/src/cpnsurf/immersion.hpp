#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

#include "cpnsurf/model.hpp"

namespace cpnsurf {

struct KmlMatrices {
    Eigen::MatrixXcd k;         // [dbarP, P]
    Eigen::MatrixXcd k_dagger;  // -[dP, P]
    Eigen::MatrixXcd m;         // (I - P) dbarP
    Eigen::MatrixXcd l;         // -dbarP (I - P)
};

KmlMatrices k_matrices(const ProjectorJet& p);

/// Norms of dM - dbar(M-dagger) and dL - dbar(L-dagger) for the depth-k
/// solution; both vanish on harmonic maps.
std::pair<double, double> conservation_check_ml(const VectorSpec& f, int k, Complex base);

/// Closed-form surface point eps*i*((1-N)/N I + P) for (anti)holomorphic
/// solutions.
Eigen::MatrixXcd immersion_closed_form(const ProjectorJet& p, int epsilon);

/// Path integral of i(-[dP,P] dxi + [dbarP,P] dxibar) along a straight
/// segment, composite Gauss-Legendre, with a half-step refinement
/// certificate.
Eigen::MatrixXcd immersion_line_integral(const VectorSpec& f, int k, Complex start,
                                         Complex end, int segments, int nodes_per_segment);

/// Same integral along a polyline.
Eigen::MatrixXcd immersion_polyline_integral(const VectorSpec& f, int k,
                                             const std::vector<Complex>& waypoints,
                                             int segments, int nodes_per_segment);

/// Orthonormal su(N) generator set: Hermitian traceless T_a with
/// tr(T_a T_b) = 2 delta_ab, ordered pairwise-symmetric, pairwise-
/// antisymmetric and diagonal generators, blockwise in the dimension.
std::vector<Eigen::MatrixXcd> sun_basis(int n);

/// Coordinates of an anti-Hermitian traceless x: coords_a = -tr(x i T_a)/2.
Eigen::VectorXd sun_coordinates(const Eigen::MatrixXcd& x,
                                const std::vector<Eigen::MatrixXcd>& basis);

/// Reassemble sum_a coords_a (i T_a).
Eigen::MatrixXcd sun_from_coordinates(const Eigen::VectorXd& coords,
                                      const std::vector<Eigen::MatrixXcd>& basis);

/// Affine recoordinatisation fitted once against the closed-form CP^2 radius
/// vector: paper_order = rotation * generic_coords + offset. The rotation is
/// orthogonal; the offset pins the integration constants so the origin of the
/// w-plane maps to the origin of R^8.
struct Cp2CoordinateMap {
    Eigen::Matrix<double, 8, 8> rotation;
    Eigen::Matrix<double, 8, 1> offset;
    double fit_residual;
};

const Cp2CoordinateMap& cp2_coordinate_map();

/// su(3) point -> R^8 in table order (offset optional).
Eigen::VectorXd cp2_paper_coordinates(const Eigen::MatrixXcd& x, bool with_offset);

/// Closed-form radius vector of a holomorphic CP^2 solution in
/// inhomogeneous coordinates (w1, w2).
Eigen::Matrix<double, 8, 1> cp2_radius_holomorphic(Complex w1, Complex w2);

/// Radius vector of the depth-1 CP^2 solution by integrating the eight real
/// 1-forms of the inhomogeneous coordinates from the anchor point xi = 1.
Eigen::Matrix<double, 8, 1> cp2_radius_mixed(const VectorSpec& f, Complex xi, int segments,
                                             int nodes_per_segment);

/// Values of the eight real 1-forms contracted with a path velocity, for the
/// depth-k inhomogeneous coordinates at a point. Exposed for tests.
Eigen::Matrix<double, 8, 1> cp2_one_forms(const VectorSpec& f, int k, Complex xi,
                                          Complex velocity);

/// Same, from caller-supplied jets of the inhomogeneous coordinates
/// (order >= 1); accepts any CP^2 solution, not just tower members.
Eigen::Matrix<double, 8, 1> cp2_one_forms_from_w(const BiJet& w1, const BiJet& w2,
                                                 Complex velocity);

/// Commutator data of the rank-one projector at depth k plus the raising
/// identity check: [dP_k, P_k] = dP_k + 2 V_k (x) V_{k-1}^dagger/|V_{k-1}|^2.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> rank1_weierstrass_data(const VectorSpec& f,
                                                                     int k, Complex base);

/// The rank-one projector embedded directly as a surface point
/// i (P_k - I/N); spans five coordinate directions for the CP^2 tower.
Eigen::MatrixXcd rank1_projector_embedding(const VectorSpec& f, int k, Complex xi);

}  // namespace cpnsurf
