#pragma once

#include <optional>
#include <vector>

#include "tva/curve.hpp"
#include "tva/matrix.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/simulation.hpp"
#include "tva/swap.hpp"

namespace tva {

/// FRA value N (B_t(T) - Kbar B_t(T + delta)), Kbar = 1 + delta K, given r_t = r.
double fra_price(double t, double T, double delta, double K, double N,
                 const ShortRateModel& model, double r);
/// Time-0 FRA value off the initial curve.
double fra_price(double T, double delta, double K, double N, const InitialCurve& curve);

/// Time-0 par swap rate (B(T0) - B(Tn)) / sum delta_{k-1} B(T_k).
double swap_rate(const SwapSpec& swap, const InitialCurve& curve);

/// Time-0 value of the fixed leg, N K sum delta_{k-1} B(T_k).
double fixed_leg_value(const SwapSpec& swap, const InitialCurve& curve);

/// Time-0 clean value off the curve, signed by direction.
double swap_price(const SwapSpec& swap, const InitialCurve& curve);

/// Clean swap value at (t, r), signed by direction. Before inception no fixing is
/// needed; in life the fixing 1/B_{T_{k_t - 1}}(T_{k_t}) of the running period must
/// be supplied unless t is itself a reset date. Throws for t >= Tn or a missing fixing.
double swap_price(double t, double r, std::optional<double> last_fixing, const SwapSpec& swap,
                  const ShortRateModel& model);

/// Fully collateralized swap value when collateral is remunerated at r + b
/// (equal posting and receiving basis): every cash flow at T_k is discounted with
/// the extra factor e^{-b (T_k - t)}. Coincides with swap_price for b = 0.
double collateralized_swap_price(double t, double r, std::optional<double> last_fixing,
                                 const SwapSpec& swap, const ShortRateModel& model, double basis);

/// Precomputed bond coefficients of the swap schedule on a simulation grid,
/// used to fill path-wise clean prices fast.
class SwapGridPricer {
public:
    SwapGridPricer(const SwapSpec& swap, const ShortRateModel& model, const GridSpec& grid);

    /// Signed clean value at grid step i given the short rate and the fixing of the
    /// running period (ignored before inception). Zero at and after Tn.
    double price(std::size_t step, double r, double fixing) const;

    /// Index into PathSet::fixings of the running period at step i, if any.
    std::optional<std::size_t> running_period(std::size_t step) const;

private:
    struct StepData {
        bool alive = false;
        bool before_start = false;
        std::size_t first = 0;  // k_t (1-based) for in-life steps
        AffineCoefficients start;  // B_t(T0) before inception
        std::vector<AffineCoefficients> payment;  // B_t(T_k) for k = first..n
    };
    SwapSpec swap_;
    std::vector<StepData> steps_;
};

/// Path-wise clean prices P(t_i, r_i^j) (signed by direction) for a PathSet carrying fixings.
Matrix clean_price_matrix(const PathSet& paths, const SwapSpec& swap, const ShortRateModel& model);

}  // namespace tva
