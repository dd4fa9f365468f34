#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace tva {

/// Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(std::size_t nodes);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// Shared 64-point rule (built once).
const GaussLegendre& gauss_legendre_64();

/// Abscissae and weights of a composite rule on [lo, hi]: one panel per year of
/// span (at least one panel), each panel carrying the given rule.
struct CompositeRule {
    std::vector<double> points;
    std::vector<double> weights;
};

CompositeRule composite_rule(double lo, double hi, const GaussLegendre& rule,
                             double panel_length = 1.0);

/// Integrate f over [lo, hi] with the composite rule above.
template <class F>
double integrate(F&& f, double lo, double hi, const GaussLegendre& rule,
                 double panel_length = 1.0) {
    if (hi <= lo) return 0.0;
    const auto panels = static_cast<std::size_t>(
        std::max(1.0, std::ceil((hi - lo) / panel_length - 1e-12)));
    const double width = (hi - lo) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + (static_cast<double>(p) + 0.5) * width;
        const double half = 0.5 * width;
        double panel = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
            panel += rule.weights()[k] * f(mid + half * rule.nodes()[k]);
        total += half * panel;
    }
    return total;
}

template <class F>
double integrate(F&& f, double lo, double hi) {
    return integrate(std::forward<F>(f), lo, hi, gauss_legendre_64());
}

}  // namespace tva
