#include "tva/bsde.hpp"

#include <cmath>
#include <stdexcept>

#include "tva/clean_pricing.hpp"
#include "tva/knn.hpp"

namespace tva {

namespace {

void check_shape(const PathSet& paths, const Matrix& prices) {
    if (prices.rows() != paths.paths() || prices.cols() != paths.steps() + 1)
        throw std::invalid_argument("TVA: clean price matrix does not match the path set");
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

TvaSurface solve_backward(const PathSet& paths, const Driver& driver, std::size_t q) {
    const std::size_t m = paths.paths();
    const std::size_t n = paths.steps();
    if (q < 1 || q > m) throw std::invalid_argument("TVA BSDE: neighbour count must lie in [1, paths]");
    const double h = paths.step();

    TvaSurface out;
    out.theta = Matrix(m, n + 1, 0.0);
    KnnRegressor regress(q);
    std::vector<double> target(m);
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            const double next = out.theta(j, i + 1);
            target[j] = next + h * driver(i + 1, j, next);
        }
        out.theta.set_column(i, regress(paths.rates.column(i), target));
    }
    out.theta0 = mean(out.theta.column(0));
    return out;
}

TvaSurface solve_tva_bsde(const PathSet& paths, const Matrix& clean_prices, const CsaSpec& csa,
                          std::size_t q) {
    csa.validate();
    check_shape(paths, clean_prices);
    return solve_backward(
        paths,
        [&](std::size_t i, std::size_t j, double theta) {
            return tva_coefficient(csa, paths.rates(j, i), clean_prices(j, i), theta);
        },
        q);
}

TvaSurface solve_tva_bsde(const PathSet& paths, const CsaSpec& csa, const SwapSpec& swap,
                          const ShortRateModel& model, std::size_t q) {
    return solve_tva_bsde(paths, clean_price_matrix(paths, swap, model), csa, q);
}

LinearTvaEstimate linear_tva_mc(const PathSet& paths, const Matrix& clean_prices, const CsaSpec& csa) {
    csa.validate();
    check_shape(paths, clean_prices);
    if (linear_route(csa) == LinearRoute::None)
        throw std::invalid_argument("linear TVA: CSA " + csa.id + " is not linear-eligible");
    const std::size_t m = paths.paths();
    const std::size_t n = paths.steps();
    const double h = paths.step();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double path_value = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const auto g = linear_coefficient(csa, clean_prices(j, i));
            path_value += h * paths.scheme_discount(j, i, g.spread) * g.value;
        }
        sum += path_value;
        sum_sq += path_value * path_value;
    }
    const double md = static_cast<double>(m);
    LinearTvaEstimate out;
    out.theta0 = sum / md;
    const double var = m > 1 ? std::max(0.0, (sum_sq / md - out.theta0 * out.theta0) * md / (md - 1.0)) : 0.0;
    out.std_error = std::sqrt(var / md);
    out.ci_low = out.theta0 - 1.96 * out.std_error;
    out.ci_high = out.theta0 + 1.96 * out.std_error;
    return out;
}

LinearTvaEstimate linear_tva_mc(const PathSet& paths, const CsaSpec& csa, const SwapSpec& swap,
                                const ShortRateModel& model) {
    return linear_tva_mc(paths, clean_price_matrix(paths, swap, model), csa);
}

TvaDecomposition decompose_tva(const PathSet& paths, const Matrix& clean_prices,
                               const TvaSurface& surface, const CsaSpec& csa) {
    csa.validate();
    check_shape(paths, clean_prices);
    const std::size_t m = paths.paths();
    const std::size_t n = paths.steps();
    const double h = paths.step();
    TvaDecomposition out;
    for (TermProfiles* p : {&out.discounted, &out.undiscounted}) {
        p->cva.assign(n + 1, 0.0);
        p->dva.assign(n + 1, 0.0);
        p->lva.assign(n + 1, 0.0);
        p->rc.assign(n + 1, 0.0);
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i <= n; ++i) {
        TvaTerms disc, raw;
        for (std::size_t j = 0; j < m; ++j) {
            const TvaTerms t = tva_terms(csa, clean_prices(j, i), surface.theta(j, i));
            const double w = paths.scheme_discount(j, i);
            raw.cva += t.cva;
            raw.dva += t.dva;
            raw.lva += t.lva;
            raw.rc += t.rc;
            disc.cva += w * t.cva;
            disc.dva += w * t.dva;
            disc.lva += w * t.lva;
            disc.rc += w * t.rc;
        }
        // + 0.0 folds -0.0 from identically-zero terms into +0.0
        out.discounted.cva[i] = disc.cva * inv_m + 0.0;
        out.discounted.dva[i] = disc.dva * inv_m + 0.0;
        out.discounted.lva[i] = disc.lva * inv_m + 0.0;
        out.discounted.rc[i] = disc.rc * inv_m + 0.0;
        out.undiscounted.cva[i] = raw.cva * inv_m + 0.0;
        out.undiscounted.dva[i] = raw.dva * inv_m + 0.0;
        out.undiscounted.lva[i] = raw.lva * inv_m + 0.0;
        out.undiscounted.rc[i] = raw.rc * inv_m + 0.0;
    }
    for (std::size_t i = 1; i <= n; ++i) {
        out.cva += h * out.discounted.cva[i];
        out.dva += h * out.discounted.dva[i];
        out.lva += h * out.discounted.lva[i];
        out.rc += h * out.discounted.rc[i];
    }
    out.cva += 0.0;
    out.dva += 0.0;
    out.rc += 0.0;
    return out;
}

}  // namespace tva
