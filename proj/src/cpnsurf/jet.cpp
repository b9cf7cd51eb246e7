#include "cpnsurf/jet.hpp"

#include <algorithm>

namespace cpnsurf {

Complex poly_eval(const std::vector<Complex>& coeffs, Complex x) {
    Complex acc(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Complex> poly_derivative(const std::vector<Complex>& coeffs) {
    if (coeffs.size() <= 1) return {Complex(0.0)};
    std::vector<Complex> out(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) out[i - 1] = coeffs[i] * double(i);
    return out;
}

BiJet jet_from_polynomial(const std::vector<Complex>& coeffs, Complex base, int order) {
    // Taylor shift by repeated synthetic division: after each Horner pass the
    // leading entry is the next shifted coefficient and the rest is the quotient.
    std::vector<Complex> w = coeffs;
    if (w.empty()) w.push_back(Complex(0.0));
    BiJet out(base, order);
    for (int a = 0; a <= order && !w.empty(); ++a) {
        for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i) w[i] += w[i + 1] * base;
        out.set_coeff(a, 0, w.front());
        w.erase(w.begin());
    }
    return out;
}

BiJet jet_from_rational(const RationalFunction& r, Complex base, int order) {
    bool den_zero = true;
    for (const auto& c : r.denominator)
        if (c != Complex(0.0)) den_zero = false;
    if (den_zero) fail(Errc::invalid_argument, "denominator is the zero polynomial");
    const Complex den0 = poly_eval(r.denominator, base);
    if (den0 == Complex(0.0))
        fail(Errc::pole_at_base, "denominator vanishes at the expansion point");
    const BiJet num = jet_from_polynomial(r.numerator, base, order);
    const BiJet den = jet_from_polynomial(r.denominator, base, order);
    return num / den;
}

Complex rational_eval(const RationalFunction& r, Complex x) {
    const Complex d = poly_eval(r.denominator, x);
    if (d == Complex(0.0)) fail(Errc::pole_at_base, "rational function evaluated at a pole");
    return poly_eval(r.numerator, x) / d;
}

}  // namespace cpnsurf
