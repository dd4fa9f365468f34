#include "tva/quadrature.hpp"

#include <numbers>
#include <stdexcept>

namespace tva {

GaussLegendre::GaussLegendre(std::size_t n) : nodes_(n), weights_(n) {
    if (n == 0) throw std::invalid_argument("GaussLegendre: need at least one node");
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            derivative = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / derivative;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
}

const GaussLegendre& gauss_legendre_64() {
    static const GaussLegendre rule(64);
    return rule;
}

CompositeRule composite_rule(double lo, double hi, const GaussLegendre& rule,
                             double panel_length) {
    CompositeRule out;
    if (hi <= lo) return out;
    const auto panels = static_cast<std::size_t>(
        std::max(1.0, std::ceil((hi - lo) / panel_length - 1e-12)));
    const double width = (hi - lo) / static_cast<double>(panels);
    out.points.reserve(panels * rule.size());
    out.weights.reserve(panels * rule.size());
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        for (std::size_t k = 0; k < rule.size(); ++k) {
            out.points.push_back(mid + half * rule.nodes()[k]);
            out.weights.push_back(half * rule.weights()[k]);
        }
    }
    return out;
}

}  // namespace tva
