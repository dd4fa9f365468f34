#pragma once

#include "tva/curve.hpp"

namespace tva {

/// Exponential-affine bond coefficients: B_t(T) = exp(m + n r_t).
struct AffineCoefficients {
    double m = 0.0;
    double n = 0.0;

    double bond(double r) const;
};

class VasicekModel {
public:
    explicit VasicekModel(const VasicekParams& params);

    const VasicekParams& params() const { return params_; }
    const InitialCurve& curve() const { return curve_; }

    /// m_va(t, T) and n_va(t, T); throws std::invalid_argument for t > T.
    AffineCoefficients coefficients(double t, double T) const;

    /// Zero-coupon bond price B_t(T) given r_t = r.
    double bond(double t, double T, double r) const;

private:
    VasicekParams params_;
    InitialCurve curve_;
};

}  // namespace tva
