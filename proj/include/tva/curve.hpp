#pragma once

namespace tva {

/// Vasicek short-rate parameters: dr = a(k - r)dt + sigma dW.
struct VasicekParams {
    double a = 0.25;       ///< mean-reversion speed (1/y)
    double k = 0.05;       ///< long-run level
    double sigma = 0.004;  ///< absolute volatility
    double r0 = 0.02;      ///< initial short rate

    /// Throws std::invalid_argument unless a > 0 and sigma >= 0.
    void validate() const;

    /// Long-run zero rate R_inf = k - sigma^2 / (2 a^2).
    double long_rate() const { return k - sigma * sigma / (2.0 * a * a); }
};

/// Initial zero-coupon term structure generated by a Vasicek parameter set.
///
/// The same curve is shared by both short-rate models: the Vasicek model
/// reproduces it by construction and the Levy Hull-White model is fitted to it
/// through its forward curve.
class InitialCurve {
public:
    explicit InitialCurve(const VasicekParams& params);

    /// Zero rate R0(T); tends to r0 as T -> 0.
    double zero_rate(double T) const;
    /// Discount factor B0(T) = exp(-T R0(T)).
    double discount(double T) const;
    /// Instantaneous forward f0(T) = d/dT (T R0(T)).
    double forward(double T) const;
    /// Slope d/dT f0(T).
    double forward_slope(double T) const;

    const VasicekParams& params() const { return params_; }

private:
    VasicekParams params_;
};

InitialCurve vasicek_initial_curve(const VasicekParams& params);

}  // namespace tva
