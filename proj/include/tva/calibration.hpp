#pragma once

#include "tva/caplet.hpp"
#include "tva/curve.hpp"

namespace tva {

struct CalibrationBounds {
    double lower = 1.0;
    double upper = 100.0;
};

struct CalibrationResult {
    double varsigma = 0.0;
    double model_price = 0.0;
    double target_price = 0.0;
    int evaluations = 0;
};

/// Fits the IG parameter varsigma so that the LHW cap (Fourier caplets) matches
/// target_cap, with alpha and the initial curve held fixed. The cap price is
/// decreasing in varsigma, so a bracketing root finder is used. Throws
/// std::runtime_error when the bounds do not bracket the target.
CalibrationResult calibrate_varsigma(double target_cap, double alpha, const InitialCurve& curve,
                                     const CapSpec& cap, CalibrationBounds bounds = {},
                                     const FourierSettings& fourier = {});

}  // namespace tva
