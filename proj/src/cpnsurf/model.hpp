#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cpnsurf/jet.hpp"
#include "cpnsurf/quadrature.hpp"

namespace cpnsurf {

/// Holomorphic input vector f: N rational components of xi.
struct VectorSpec {
    int n = 0;
    std::vector<RationalFunction> components;
};

/// The canonical constant-curvature input with binomial components.
VectorSpec veronese_vector(int n);

/// N jets sharing one base point and order.
struct JetVector {
    std::vector<BiJet> entries;

    int size() const { return static_cast<int>(entries.size()); }
    int order() const { return entries.empty() ? 0 : entries.front().order(); }
    Complex base() const { return entries.empty() ? Complex(0.0) : entries.front().base(); }

    Eigen::VectorXcd value() const {
        Eigen::VectorXcd v(size());
        for (int i = 0; i < size(); ++i) v(i) = entries[i].value();
        return v;
    }

    JetVector truncated(int new_order) const {
        JetVector out;
        out.entries.reserve(entries.size());
        for (const auto& e : entries) out.entries.push_back(e.truncated(new_order));
        return out;
    }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.sup_norm());
        return m;
    }
};

/// N x N matrix of jets (row-major); the carrier for projectors and their
/// derivatives.
struct JetMatrix {
    int n = 0;
    std::vector<BiJet> m;

    BiJet& at(int i, int j) { return m[static_cast<size_t>(i) * n + j]; }
    const BiJet& at(int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }

    static JetMatrix zero(int n, Complex base, int order);
    static JetMatrix identity(int n, Complex base, int order);

    int order() const { return m.empty() ? 0 : m.front().order(); }

    Eigen::MatrixXcd value() const {
        Eigen::MatrixXcd v(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(i, j) = at(i, j).value();
        return v;
    }

    JetMatrix deriv(Var which) const;
    JetMatrix dagger() const;  // conjugate transpose, entrywise conjugated jets
    JetMatrix truncated(int new_order) const;
    BiJet trace() const;

    JetMatrix operator-() const;
    friend JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
    friend JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
    friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
};

/// outer(a, b)_ij = a_i conj(b_j), jets truncated to the common order.
JetMatrix outer_dagger(const JetVector& a, const JetVector& b);

/// a-dagger . b = sum_i conj(a_i) b_i.
BiJet dot_dagger(const JetVector& a, const JetVector& b);

JetVector jets_of(const VectorSpec& f, Complex base, int order);
JetVector conjugated(const JetVector& v);

/// Raising operator: P+ v = dv - v (vter . dv)/(vter . v); order drops by one.
JetVector p_plus_apply(const JetVector& v);
/// Antiholomorphic mirror of the raising operator.
JetVector p_minus_apply(const JetVector& v);

/// V_k = P+^k f expanded at `base`; the input jets carry `order`, the result
/// carries order - k. Callers needing curvature output must pass
/// order >= k + 3, which this operation enforces.
JetVector tower(const VectorSpec& f, int k, Complex base, int order);

/// Jet order the analysis pipeline needs for depth k with curvature output.
inline int required_order(int k) { return k + 3; }

struct ProjectorJet {
    JetMatrix p;

    int n() const { return p.n; }
    int order() const { return p.order(); }
    Eigen::MatrixXcd value() const { return p.value(); }
};

/// Rank (N-1) projector I - v v-dagger / (v-dagger v) as jets.
ProjectorJet projector_full(const JetVector& v);
/// Rank-one projector v v-dagger / (v-dagger v) as jets.
ProjectorJet projector_rank1(const JetVector& v);

/// Frobenius norm of the value of d[dbar P, P] + dbar[d P, P]; vanishes on
/// harmonic maps.
double el_residual(const ProjectorJet& p);

/// The pair (J, Jbar) built from the full projector of v; both vanish for
/// every tower member.
std::pair<Complex, Complex> j_invariants(const JetVector& v);

struct CovariantData {
    Complex gauge;        // composite gauge potential along the first real
                          // coordinate direction; purely imaginary
    Eigen::VectorXcd dz;  // covariant derivative, orthogonal to z = v/|v|
};
CovariantData covariant_data(const JetVector& v);

struct ChargeActionReport {
    double charge = 0.0;
    double action_energy = 0.0;
    int quadrature_order = 0;
    int charts_used = 2;
    double charge_refinement_error = 0.0;
    double action_refinement_error = 0.0;
};

/// Degree and action of the depth-k solution, integrated over both
/// stereographic charts.
ChargeActionReport charge_and_action(const VectorSpec& f, int k, int quad_order);

/// Residual of the two CP^2 field equations on bivariate jets of the
/// inhomogeneous coordinates (w1, w2); order >= 2 required.
double cp2_equation_residual(const BiJet& w1, const BiJet& w2);

/// g12 density evaluated from tower jets; shared by charge_and_action and the
/// metric pipeline. Internal entry point without the public order floor.
double g12_density(const VectorSpec& f, int k, Complex xi);

/// Tower without the k+3 order floor (integrators need only first
/// derivatives); still requires order >= k + 1.
JetVector tower_lean(const VectorSpec& f, int k, Complex base, int order);

}  // namespace cpnsurf
