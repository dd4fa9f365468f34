#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tva/csa.hpp"
#include "tva/matrix.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/simulation.hpp"
#include "tva/swap.hpp"

namespace tva {

/// Regression estimate of the pre-default TVA on the simulated grid.
struct TvaSurface {
    Matrix theta;       ///< paths x (steps + 1); last column is 0
    double theta0 = 0;  ///< mean of column 0
};

/// driver(step, path, theta) evaluated at grid step i + 1 during the backward pass.
using Driver = std::function<double(std::size_t, std::size_t, double)>;

/// Explicit backward regression: theta_n = 0 and
/// theta_i = E_i[theta_{i+1} + h driver(i+1, theta_{i+1})], with E_i the q-nearest-
/// neighbour average in the short rate r_i.
TvaSurface solve_backward(const PathSet& paths, const Driver& driver, std::size_t q = 5);

/// TVA BSDE for a CSA given path-wise clean prices (already signed by direction).
TvaSurface solve_tva_bsde(const PathSet& paths, const Matrix& clean_prices, const CsaSpec& csa,
                          std::size_t q = 5);
TvaSurface solve_tva_bsde(const PathSet& paths, const CsaSpec& csa, const SwapSpec& swap,
                          const ShortRateModel& model, std::size_t q = 5);

struct LinearTvaEstimate {
    double theta0 = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Plain Monte Carlo of the linear representation (right-endpoint time rule, same
/// discount weights as the backward scheme), with a normal 95% confidence interval.
/// Throws std::invalid_argument for CSAs without a linear route.
LinearTvaEstimate linear_tva_mc(const PathSet& paths, const Matrix& clean_prices, const CsaSpec& csa);
LinearTvaEstimate linear_tva_mc(const PathSet& paths, const CsaSpec& csa, const SwapSpec& swap,
                                const ShortRateModel& model);

/// Path averages of one term on the grid (index = grid step).
struct TermProfiles {
    std::vector<double> cva, dva, lva, rc;
};

struct TvaDecomposition {
    double cva = 0.0;
    double dva = 0.0;
    double lva = 0.0;
    double rc = 0.0;
    TermProfiles discounted;    ///< E[beta_i term_i], beta as carried by the scheme
    TermProfiles undiscounted;  ///< E[term_i]

    double total() const { return cva + dva + lva + rc; }
};

/// CVA/DVA/LVA/RC: each total is h * sum_{i=1..n} of the discounted profile.
TvaDecomposition decompose_tva(const PathSet& paths, const Matrix& clean_prices,
                               const TvaSurface& surface, const CsaSpec& csa);

}  // namespace tva
