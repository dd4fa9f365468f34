#pragma once

#include <complex>

#include "tva/curve.hpp"
#include "tva/vasicek.hpp"

namespace tva {

class GaussLegendre;

/// Cumulant of the inverse Gaussian subordinator per unit time,
/// psi(z) = s (1 - sqrt(1 - 2 z / s^2)), defined for z <= s^2 / 2.
/// Throws std::domain_error outside that half-line.
double ig_cumulant(double z, double varsigma);

/// Analytic derivative 1 / (s sqrt(1 - 2 z / s^2)); domain z < s^2 / 2.
double ig_cumulant_derivative(double z, double varsigma);

/// Complex extension on Re z <= s^2 / 2 (principal square root).
std::complex<double> ig_cumulant(std::complex<double> z, double varsigma);

/// Levy Hull-White (inverse Gaussian driven) parameters.
struct LhwParams {
    double alpha = 0.25;
    double varsigma = 17.570728;
    InitialCurve curve{VasicekParams{}};

    void validate() const;
};

/// dr = alpha (kappa(t) - r) dt + dZ with Z an IG subordinator; the mean-reversion
/// target kappa is chosen so that bond prices fit the initial curve.
class LhwModel {
public:
    explicit LhwModel(const LhwParams& params);

    const LhwParams& params() const { return params_; }
    const InitialCurve& curve() const { return params_.curve; }

    double kappa(double t) const;

    /// m_le(t, T), n_le(t, T). The time integral in m is computed with composite
    /// 64-node Gauss-Legendre per year of span. Throws for t > T.
    AffineCoefficients coefficients(double t, double T) const;
    AffineCoefficients coefficients(double t, double T, const GaussLegendre& rule) const;

    double bond(double t, double T, double r) const;

    /// Sigma_s(t) = (1 - e^{-alpha (t - s)}) / alpha.
    double integrated_vol(double s, double t) const;

private:
    LhwParams params_;
};

}  // namespace tva
