#include "cpnsurf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace cpnsurf {

namespace {

GaussLegendreRule compute_rule(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < order; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double integrate_both_charts(const std::function<double(Complex)>& density,
                             const QuadratureScheme& s, int order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    const double pi = std::acos(-1.0);
    const int rp = s.subdivisions;
    const int tp = 2 * s.subdivisions;
    std::vector<double> terms;
    terms.reserve(static_cast<size_t>(2 * rp * tp * order * order));
    for (int chart = 0; chart < 2; ++chart) {
        const double radius = chart == 0 ? s.chart_radius : 1.0 / s.chart_radius;
        for (int ir = 0; ir < rp; ++ir) {
            const double r0 = radius * ir / rp;
            const double r1 = radius * (ir + 1) / rp;
            for (int it = 0; it < tp; ++it) {
                const double t0 = s.theta_offset + 2.0 * pi * it / tp;
                const double t1 = s.theta_offset + 2.0 * pi * (it + 1) / tp;
                for (int a = 0; a < order; ++a) {
                    const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * rule.nodes[a];
                    const double wr = 0.5 * (r1 - r0) * rule.weights[a];
                    for (int b = 0; b < order; ++b) {
                        const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rule.nodes[b];
                        const double wt = 0.5 * (t1 - t0) * rule.weights[b];
                        const Complex node = std::polar(r, t);
                        double val;
                        if (chart == 0) {
                            val = density(node);
                        } else {
                            const Complex xi = 1.0 / node;
                            val = density(xi) / (r * r * r * r);
                        }
                        terms.push_back(val * wr * wt * r);
                    }
                }
            }
        }
    }
    return pairwise_sum(std::move(terms));
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    if (order < 2) fail(Errc::invalid_argument, "Gauss-Legendre order must be >= 2");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double pairwise_sum(std::vector<double> terms) {
    if (terms.empty()) return 0.0;
    size_t n = terms.size();
    while (n > 1) {
        const size_t half = n / 2;
        for (size_t i = 0; i < half; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (n % 2 == 1) {
            terms[half] = terms[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return terms[0];
}

PlaneIntegral integrate_plane(const std::function<double(Complex)>& density,
                              const QuadratureScheme& scheme) {
    if (scheme.order < 4) fail(Errc::invalid_argument, "quadrature order must be >= 4");
    if (scheme.subdivisions < 1) fail(Errc::invalid_argument, "subdivisions must be >= 1");
    if (!(scheme.chart_radius > 0.0)) fail(Errc::invalid_argument, "chart radius must be > 0");
    const double coarse = integrate_both_charts(density, scheme, scheme.order);
    const double fine = integrate_both_charts(density, scheme, 2 * scheme.order);
    const double err = std::abs(coarse - fine);
    if (!std::isfinite(fine) || err > 1e-4 * std::abs(fine))
        fail(Errc::quadrature_divergence, "chart integrals do not converge under refinement");
    return PlaneIntegral{fine, err};
}

}  // namespace cpnsurf
