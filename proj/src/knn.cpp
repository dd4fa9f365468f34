#include "tva/knn.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tva {

std::vector<double> KnnRegressor::operator()(std::span<const double> x, std::span<const double> y) {
    const std::size_t m = x.size();
    if (y.size() != m) throw std::invalid_argument("knn: x and y sizes differ");
    if (q_ < 1 || q_ > m) throw std::invalid_argument("knn: neighbour count must lie in [1, m]");

    order_.resize(m);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    sorted_x_.resize(m);
    prefix_.assign(m + 1, 0.0);
    for (std::size_t p = 0; p < m; ++p) {
        sorted_x_[p] = x[order_[p]];
        prefix_[p + 1] = prefix_[p] + y[order_[p]];
    }

    std::vector<double> out(m);
    const double inv_q = 1.0 / static_cast<double>(q_);
    // Window [lo, hi) grows from {p}: take the nearer side, on equal distance the
    // side closer in sorted position, then the left side.
    for (std::size_t p = 0; p < m; ++p) {
        std::size_t lo = p;
        std::size_t hi = p + 1;
        const double centre = sorted_x_[p];
        while (hi - lo < q_) {
            if (lo == 0) { ++hi; continue; }
            if (hi == m) { --lo; continue; }
            const double left = centre - sorted_x_[lo - 1];
            const double right = sorted_x_[hi] - centre;
            if (left < right) {
                --lo;
            } else if (right < left) {
                ++hi;
            } else if (p - (lo - 1) <= hi - p) {
                --lo;
            } else {
                ++hi;
            }
        }
        double sum = 0.0;
        if (q_ <= 32) {
            for (std::size_t w = lo; w < hi; ++w) sum += y[order_[w]];
        } else {
            sum = prefix_[hi] - prefix_[lo];
        }
        out[order_[p]] = sum * inv_q;
    }
    return out;
}

std::vector<double> knn_regress(std::span<const double> x, std::span<const double> y, std::size_t q) {
    KnnRegressor regressor(q);
    return regressor(x, y);
}

}  // namespace tva
