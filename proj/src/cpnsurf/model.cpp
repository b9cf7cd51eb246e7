#include "cpnsurf/model.hpp"

#include <cmath>

namespace cpnsurf {

namespace {

double binomial(int n, int r) {
    double acc = 1.0;
    for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
}

constexpr double kNullNorm = 1e-300;

void require_nonnull(const BiJet& norm2) {
    if (!(std::abs(norm2.value()) > kNullNorm))
        fail(Errc::null_vector, "vector has numerically zero norm at the base point");
}

}  // namespace

VectorSpec veronese_vector(int n) {
    if (n < 2) fail(Errc::invalid_dimension, "Veronese vector needs N >= 2");
    VectorSpec f;
    f.n = n;
    f.components.reserve(n);
    for (int r = 0; r < n; ++r) {
        std::vector<Complex> coeffs(static_cast<size_t>(r) + 1, Complex(0.0));
        coeffs[r] = std::sqrt(binomial(n - 1, r));
        f.components.push_back(RationalFunction::polynomial(std::move(coeffs)));
    }
    return f;
}

JetMatrix JetMatrix::zero(int n, Complex base, int order) {
    JetMatrix out;
    out.n = n;
    out.m.assign(static_cast<size_t>(n) * n, BiJet(base, order));
    return out;
}

JetMatrix JetMatrix::identity(int n, Complex base, int order) {
    JetMatrix out = zero(n, base, order);
    for (int i = 0; i < n; ++i) out.at(i, i) = BiJet::constant(1.0, base, order);
    return out;
}

JetMatrix JetMatrix::deriv(Var which) const {
    JetMatrix out;
    out.n = n;
    out.m.reserve(m.size());
    for (const auto& e : m) out.m.push_back(e.deriv(which));
    return out;
}

JetMatrix JetMatrix::dagger() const {
    JetMatrix out = *this;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = at(j, i).conjugated();
    return out;
}

JetMatrix JetMatrix::truncated(int new_order) const {
    JetMatrix out;
    out.n = n;
    out.m.reserve(m.size());
    for (const auto& e : m) out.m.push_back(e.truncated(new_order));
    return out;
}

BiJet JetMatrix::trace() const {
    BiJet acc = at(0, 0);
    for (int i = 1; i < n; ++i) acc += at(i, i);
    return acc;
}

JetMatrix JetMatrix::operator-() const {
    JetMatrix out = *this;
    for (auto& e : out.m) e = -e;
    return out;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix out = a;
    for (size_t i = 0; i < out.m.size(); ++i) out.m[i] += b.m[i];
    return out;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix out = a;
    for (size_t i = 0; i < out.m.size(); ++i) out.m[i] -= b.m[i];
    return out;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix out = JetMatrix::zero(a.n, a.m.front().base(), a.order());
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const BiJet& aik = a.at(i, k);
            for (int j = 0; j < a.n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

JetMatrix outer_dagger(const JetVector& a, const JetVector& b) {
    JetMatrix out;
    out.n = a.size();
    out.m.reserve(static_cast<size_t>(out.n) * out.n);
    for (int i = 0; i < out.n; ++i) {
        for (int j = 0; j < out.n; ++j) out.m.push_back(a.entries[i] * b.entries[j].conjugated());
    }
    return out;
}

BiJet dot_dagger(const JetVector& a, const JetVector& b) {
    BiJet acc = a.entries[0].conjugated() * b.entries[0];
    for (int i = 1; i < a.size(); ++i) acc += a.entries[i].conjugated() * b.entries[i];
    return acc;
}

JetVector jets_of(const VectorSpec& f, Complex base, int order) {
    if (f.n < 2 || static_cast<int>(f.components.size()) != f.n)
        fail(Errc::invalid_dimension, "vector spec needs N >= 2 matching components");
    JetVector v;
    v.entries.reserve(f.components.size());
    for (const auto& c : f.components) v.entries.push_back(jet_from_rational(c, base, order));
    bool all_zero = true;
    for (const auto& e : v.entries)
        if (e.sup_norm() > 0.0) all_zero = false;
    if (all_zero) fail(Errc::null_vector, "input vector is identically zero");
    return v;
}

JetVector conjugated(const JetVector& v) {
    JetVector out;
    out.entries.reserve(v.entries.size());
    for (const auto& e : v.entries) out.entries.push_back(e.conjugated());
    return out;
}

namespace {

JetVector raising_step(const JetVector& v, Var which) {
    if (v.order() < 1) fail(Errc::order_exhausted, "raising operator needs jet order >= 1");
    const int out_order = v.order() - 1;
    JetVector dv;
    dv.entries.reserve(v.entries.size());
    for (const auto& e : v.entries) dv.entries.push_back(e.deriv(which));
    const JetVector vt = v.truncated(out_order);
    BiJet n2 = dot_dagger(vt, vt);
    require_nonnull(n2);
    const BiJet coef = dot_dagger(vt, dv) / n2;
    JetVector out;
    out.entries.reserve(v.entries.size());
    for (int i = 0; i < v.size(); ++i)
        out.entries.push_back(dv.entries[i] - vt.entries[i] * coef);
    return out;
}

}  // namespace

JetVector p_plus_apply(const JetVector& v) { return raising_step(v, Var::xi); }
JetVector p_minus_apply(const JetVector& v) { return raising_step(v, Var::xibar); }

JetVector tower_lean(const VectorSpec& f, int k, Complex base, int order) {
    if (k < 0 || k >= f.n) fail(Errc::tower_depth_exceeded, "tower depth must satisfy 0 <= k < N");
    if (order < k + 1 && k > 0) fail(Errc::order_exhausted, "base jet order too small for depth");
    JetVector v = jets_of(f, base, order);
    for (int i = 0; i < k; ++i) v = p_plus_apply(v);
    return v;
}

JetVector tower(const VectorSpec& f, int k, Complex base, int order) {
    if (k < 0 || k >= f.n) fail(Errc::tower_depth_exceeded, "tower depth must satisfy 0 <= k < N");
    if (order < required_order(k))
        fail(Errc::order_exhausted, "tower requires base jet order >= k + 3");
    return tower_lean(f, k, base, order);
}

ProjectorJet projector_full(const JetVector& v) {
    BiJet n2 = dot_dagger(v, v);
    require_nonnull(n2);
    JetMatrix outer = outer_dagger(v, v);
    JetMatrix p = JetMatrix::identity(v.size(), v.base(), v.order());
    for (auto& e : outer.m) e = e / n2;
    return ProjectorJet{p - outer};
}

ProjectorJet projector_rank1(const JetVector& v) {
    BiJet n2 = dot_dagger(v, v);
    require_nonnull(n2);
    JetMatrix outer = outer_dagger(v, v);
    for (auto& e : outer.m) e = e / n2;
    return ProjectorJet{outer};
}

namespace {

JetMatrix commutator(const JetMatrix& a, const JetMatrix& b) { return a * b - b * a; }

}  // namespace

double el_residual(const ProjectorJet& p) {
    if (p.order() < 2) fail(Errc::order_exhausted, "residual needs projector jets of order >= 2");
    const JetMatrix& pj = p.p;
    const JetMatrix pt = pj.truncated(pj.order() - 1);
    const JetMatrix lhs = commutator(pj.deriv(Var::xibar), pt).deriv(Var::xi) +
                          commutator(pj.deriv(Var::xi), pt).deriv(Var::xibar);
    return lhs.value().norm();
}

std::pair<Complex, Complex> j_invariants(const JetVector& v) {
    if (v.order() < 1) fail(Errc::order_exhausted, "J invariants need order >= 1");
    const Eigen::MatrixXcd p = projector_full(v).value();
    Eigen::VectorXcd dv(v.size()), dbv(v.size());
    for (int i = 0; i < v.size(); ++i) {
        dv(i) = v.entries[i].deriv(Var::xi).value();
        dbv(i) = v.entries[i].deriv(Var::xibar).value();
    }
    const Complex n2 = dot_dagger(v, v).value();
    // d(f-dagger) rows are conjugates of the opposite-type derivatives.
    const Complex j = (dbv.conjugate().transpose() * p * dv).value() / n2;
    const Complex jbar = (dv.conjugate().transpose() * p * dbv).value() / n2;
    return {j, jbar};
}

CovariantData covariant_data(const JetVector& v) {
    if (v.order() < 1) fail(Errc::order_exhausted, "covariant data needs order >= 1");
    BiJet n2 = dot_dagger(v, v);
    require_nonnull(n2);
    const BiJet inv_norm = n2.power(Complex(-0.5));
    JetVector z;
    z.entries.reserve(v.entries.size());
    for (const auto& e : v.entries) z.entries.push_back(e * inv_norm);
    const int m = v.order() - 1;
    // Derivative along the first real coordinate direction; z-dagger z = 1
    // makes the resulting gauge potential purely imaginary.
    JetVector dz;
    dz.entries.reserve(z.entries.size());
    for (const auto& e : z.entries)
        dz.entries.push_back(e.deriv(Var::xi) + e.deriv(Var::xibar));
    const BiJet gauge = dot_dagger(z.truncated(m), dz);
    CovariantData out;
    out.gauge = gauge.value();
    out.dz.resize(v.size());
    for (int i = 0; i < v.size(); ++i)
        out.dz(i) = (dz.entries[i] - z.entries[i].truncated(m) * gauge).value();
    return out;
}

double g12_density(const VectorSpec& f, int k, Complex xi) {
    const JetVector v = tower_lean(f, k, xi, k + 1);
    const ProjectorJet proj = projector_full(v);
    const JetMatrix dp = proj.p.deriv(Var::xi);
    const JetMatrix dbp = proj.p.deriv(Var::xibar);
    return 0.5 * (dp * dbp).trace().value().real();
}

ChargeActionReport charge_and_action(const VectorSpec& f, int k, int quad_order) {
    if (quad_order < 8) fail(Errc::invalid_argument, "charge quadrature order must be >= 8");
    const double pi = std::acos(-1.0);
    QuadratureScheme scheme;
    scheme.order = quad_order;
    auto density = [&](Complex xi) { return g12_density(f, k, xi); };
    const PlaneIntegral g12_integral = integrate_plane(density, scheme);
    ChargeActionReport report;
    report.charge = g12_integral.value / pi;
    report.charge_refinement_error = g12_integral.refinement_error / pi;
    report.action_energy = 2.0 * g12_integral.value;  // tr(dP dbarP) = 2 g12
    report.action_refinement_error = 2.0 * g12_integral.refinement_error;
    report.quadrature_order = quad_order;
    report.charts_used = 2;
    return report;
}

double cp2_equation_residual(const BiJet& w1, const BiJet& w2) {
    if (w1.order() < 2) fail(Errc::order_exhausted, "field equations need order >= 2");
    const auto residual_one = [](const BiJet& wa, const BiJet& wb) {
        const Complex dwa = wa.deriv(Var::xi).value();
        const Complex dbwa = wa.deriv(Var::xibar).value();
        const Complex dwb = wb.deriv(Var::xi).value();
        const Complex dbwb = wb.deriv(Var::xibar).value();
        const Complex ddb = wa.deriv(Var::xi).deriv(Var::xibar).value();
        const Complex a2 = 1.0 + std::norm(wa.value()) + std::norm(wb.value());
        return ddb - 2.0 * std::conj(wa.value()) / a2 * dwa * dbwa -
               std::conj(wb.value()) / a2 * (dwa * dbwb + dbwa * dwb);
    };
    return std::abs(residual_one(w1, w2)) + std::abs(residual_one(w2, w1));
}

}  // namespace cpnsurf
