#pragma once

#include <complex>
#include <vector>

#include "cpnsurf/errors.hpp"

namespace cpnsurf {

using Complex = std::complex<double>;

/// Which of the two independent variables a derivative acts on.
enum class Var { xi, xibar };

/// Truncated bivariate Taylor expansion around a point xi0 of the plane.
///
/// A BiJet of order m stores the coefficients c(a,b) of
///     sum_{a+b <= m} c(a,b) (xi - xi0)^a (conj(xi) - conj(xi0))^b,
/// i.e. the two expansion variables are u = xi - xi0 and its conjugate.
/// Arithmetic is exact ring arithmetic truncated at total degree m, so a
/// BiJet carries the function value together with every mixed Wirtinger
/// derivative up to total order m at the base point.
///
/// Two jets combine only when base point and order agree.
class BiJet {
public:
    BiJet() : base_(0.0), order_(0), c_(1, Complex(0.0)) {}

    BiJet(Complex base, int order)
        : base_(base), order_(check_order(order)), c_(size_for(order_), Complex(0.0)) {}

    static BiJet constant(Complex value, Complex base, int order) {
        BiJet j(base, order);
        j.c_[0] = value;
        return j;
    }

    /// Jet of the identity function xi.
    static BiJet variable(Complex base, int order) {
        BiJet j = constant(base, base, order);
        if (order >= 1) j.set_coeff(1, 0, 1.0);
        return j;
    }

    /// Jet of the conjugate coordinate.
    static BiJet variable_conj(Complex base, int order) {
        BiJet j = constant(std::conj(base), base, order);
        if (order >= 1) j.set_coeff(0, 1, 1.0);
        return j;
    }

    Complex base() const { return base_; }
    int order() const { return order_; }
    int coefficient_count() const { return static_cast<int>(c_.size()); }

    Complex value() const { return c_[0]; }

    Complex coeff(int a, int b) const {
        if (a < 0 || b < 0 || a + b > order_) return Complex(0.0);
        return c_[index(a, b)];
    }

    void set_coeff(int a, int b, Complex v) {
        if (a < 0 || b < 0 || a + b > order_)
            fail(Errc::invalid_argument, "coefficient index outside jet order");
        c_[index(a, b)] = v;
    }

    /// Value of the Wirtinger derivative d^a d-bar^b at the base point.
    Complex derivative_value(int a, int b) const {
        double scale = 1.0;
        for (int i = 2; i <= a; ++i) scale *= i;
        for (int i = 2; i <= b; ++i) scale *= i;
        return coeff(a, b) * scale;
    }

    BiJet truncated(int new_order) const {
        if (new_order > order_) fail(Errc::order_exhausted, "cannot extend a jet");
        BiJet out(base_, new_order);
        for (int d = 0; d <= new_order; ++d)
            for (int b = 0; b <= d; ++b) out.c_[index(d - b, b)] = c_[index(d - b, b)];
        return out;
    }

    BiJet operator-() const {
        BiJet out = *this;
        for (auto& v : out.c_) v = -v;
        return out;
    }

    BiJet& operator+=(const BiJet& rhs) {
        require_compatible(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
        return *this;
    }
    BiJet& operator-=(const BiJet& rhs) {
        require_compatible(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
        return *this;
    }
    BiJet& operator*=(Complex s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend BiJet operator+(BiJet a, const BiJet& b) { return a += b; }
    friend BiJet operator-(BiJet a, const BiJet& b) { return a -= b; }
    friend BiJet operator*(BiJet a, Complex s) { return a *= s; }
    friend BiJet operator*(Complex s, BiJet a) { return a *= s; }

    friend BiJet operator*(const BiJet& a, const BiJet& b) {
        a.require_compatible(b);
        const int m = a.order_;
        BiJet out(a.base_, m);
        for (int d1 = 0; d1 <= m; ++d1)
            for (int b1 = 0; b1 <= d1; ++b1) {
                const Complex x = a.c_[index(d1 - b1, b1)];
                if (x == Complex(0.0)) continue;
                for (int d2 = 0; d2 + d1 <= m; ++d2)
                    for (int b2 = 0; b2 <= d2; ++b2)
                        out.c_[index(d1 - b1 + d2 - b2, b1 + b2)] +=
                            x * b.c_[index(d2 - b2, b2)];
            }
        return out;
    }

    /// Truncated ring division; requires a nonzero constant term in b.
    friend BiJet operator/(const BiJet& a, const BiJet& b) {
        a.require_compatible(b);
        if (b.c_[0] == Complex(0.0))
            fail(Errc::division_by_singular_jet, "jet divisor has zero constant term");
        const int m = a.order_;
        BiJet out(a.base_, m);
        for (int d = 0; d <= m; ++d)
            for (int bu = 0; bu <= d; ++bu) {
                const int au = d - bu;
                Complex acc = a.c_[index(au, bu)];
                // subtract contributions of already-known lower-degree quotient terms
                for (int d2 = 0; d2 < d; ++d2)
                    for (int b2 = 0; b2 <= d2; ++b2) {
                        const int a2 = d2 - b2;
                        if (a2 > au || b2 > bu) continue;
                        acc -= out.c_[index(a2, b2)] * b.c_[index(au - a2, bu - b2)];
                    }
                out.c_[index(au, bu)] = acc / b.c_[0];
            }
        return out;
    }

    /// Wirtinger derivative; lowers the order by one.
    BiJet deriv(Var which) const {
        if (order_ < 1) fail(Errc::order_exhausted, "cannot differentiate an order-0 jet");
        BiJet out(base_, order_ - 1);
        for (int d = 0; d <= order_ - 1; ++d)
            for (int b = 0; b <= d; ++b) {
                const int a = d - b;
                if (which == Var::xi)
                    out.c_[index(a, b)] = c_[index(a + 1, b)] * double(a + 1);
                else
                    out.c_[index(a, b)] = c_[index(a, b + 1)] * double(b + 1);
            }
        return out;
    }

    /// Jet of the complex-conjugated function at the same point of the plane.
    BiJet conjugated() const {
        BiJet out(base_, order_);
        for (int d = 0; d <= order_; ++d)
            for (int b = 0; b <= d; ++b)
                out.c_[index(d - b, b)] = std::conj(c_[index(b, d - b)]);
        return out;
    }

    /// exp of the jet (value may be anything).
    BiJet exponential() const {
        BiJet u = *this;
        const Complex u0 = u.c_[0];
        u.c_[0] = 0.0;
        BiJet out = BiJet::constant(1.0, base_, order_);
        BiJet term = BiJet::constant(1.0, base_, order_);
        for (int k = 1; k <= order_; ++k) {
            term = term * u;
            term *= Complex(1.0 / k);
            out += term;
        }
        out *= std::exp(u0);
        return out;
    }

    /// Principal-branch log; the constant term must avoid (-inf, 0].
    BiJet logarithm() const {
        const Complex a0 = c_[0];
        if (a0 == Complex(0.0)) fail(Errc::zero_base, "log of a jet with zero value");
        if (a0.imag() == 0.0 && a0.real() < 0.0)
            fail(Errc::branch_cut, "jet value on the negative real axis");
        BiJet w = *this;
        w *= Complex(1.0) / a0;
        w.c_[0] = 0.0;  // w = a/a0 - 1
        BiJet out = BiJet::constant(std::log(a0), base_, order_);
        BiJet term = BiJet::constant(1.0, base_, order_);
        for (int k = 1; k <= order_; ++k) {
            term = term * w;
            BiJet contrib = term;
            contrib *= Complex((k % 2 == 1 ? 1.0 : -1.0) / k);
            out += contrib;
        }
        return out;
    }

    /// a^sigma = exp(sigma log a) on the principal branch.
    BiJet power(Complex sigma) const {
        const Complex a0 = c_[0];
        if (a0 == Complex(0.0)) fail(Errc::zero_base, "power of a jet with zero value");
        if (a0.imag() == 0.0 && a0.real() < 0.0)
            fail(Errc::branch_cut, "jet value on the negative real axis");
        BiJet lg = logarithm();
        lg *= sigma;
        return lg.exponential();
    }

    /// Largest coefficient magnitude, useful for relative comparisons.
    double sup_norm() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    static int check_order(int order) {
        if (order < 0) fail(Errc::invalid_argument, "jet order must be non-negative");
        return order;
    }
    static int size_for(int order) { return (order + 1) * (order + 2) / 2; }
    static int index(int a, int b) {
        const int d = a + b;
        return d * (d + 1) / 2 + b;
    }
    void require_compatible(const BiJet& rhs) const {
        if (order_ != rhs.order_ || base_ != rhs.base_)
            fail(Errc::shape_mismatch, "jet base points or orders differ");
    }

    Complex base_;
    int order_;
    std::vector<Complex> c_;
};

/// Rational function of one complex variable, coefficients in ascending powers.
struct RationalFunction {
    std::vector<Complex> numerator;
    std::vector<Complex> denominator{Complex(1.0)};

    static RationalFunction polynomial(std::vector<Complex> coeffs) {
        return RationalFunction{std::move(coeffs), {Complex(1.0)}};
    }
};

Complex poly_eval(const std::vector<Complex>& coeffs, Complex x);
std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs);

/// Taylor-expand a univariate polynomial at `base` as a holomorphic BiJet.
BiJet jet_from_polynomial(const std::vector<Complex>& coeffs, Complex base, int order);

/// Taylor-expand a rational function at `base`; fails on a pole at the base.
BiJet jet_from_rational(const RationalFunction& r, Complex base, int order);

/// Value of the rational function at a point (pole reported as PoleAtBase).
Complex rational_eval(const RationalFunction& r, Complex x);

}  // namespace cpnsurf
