#include "tva/calibration.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tva {

CalibrationResult calibrate_varsigma(double target_cap, double alpha, const InitialCurve& curve,
                                     const CapSpec& cap, CalibrationBounds bounds,
                                     const FourierSettings& fourier) {
    if (!(target_cap > 0.0)) throw std::invalid_argument("calibration: target cap price must be > 0");
    if (!(bounds.lower > 0.0) || !(bounds.upper > bounds.lower))
        throw std::invalid_argument("calibration: invalid varsigma bounds");

    CalibrationResult result;
    result.target_price = target_cap;
    // log price against log varsigma is close to linear, which keeps the root search short
    auto objective = [&](double x) {
        ++result.evaluations;
        return std::log(cap_lhw(cap, LhwParams{alpha, std::exp(x), curve}, fourier) / target_cap);
    };

    const double x_lo = std::log(bounds.lower);
    const double x_hi = std::log(bounds.upper);
    const double f_lo = objective(x_lo);
    const double f_hi = objective(x_hi);
    if (f_lo == 0.0) return result.varsigma = bounds.lower, result.model_price = target_cap, result;
    if (f_hi == 0.0) return result.varsigma = bounds.upper, result.model_price = target_cap, result;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw std::runtime_error("calibration: no root of cap_lhw(varsigma) - target in [" +
                                 std::to_string(bounds.lower) + ", " + std::to_string(bounds.upper) + "]");

    // Bracketing with inverse-quadratic/cubic steps (TOMS 748).
    std::uintmax_t max_iter = 100;
    const auto [a, b] = boost::math::tools::toms748_solve(
        objective, x_lo, x_hi, f_lo, f_hi, [](double x, double y) { return std::abs(x - y) <= 1e-10; },
        max_iter);
    result.varsigma = std::exp(0.5 * (a + b));
    result.model_price = cap_lhw(cap, LhwParams{alpha, result.varsigma, curve}, fourier);
    ++result.evaluations;
    if (std::abs(result.model_price - target_cap) > 1e-4)
        throw std::runtime_error("calibration: residual above tolerance after root search");
    return result;
}

}  // namespace tva
