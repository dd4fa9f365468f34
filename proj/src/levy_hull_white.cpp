#include "tva/levy_hull_white.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tva/quadrature.hpp"

namespace tva {

double ig_cumulant(double z, double varsigma) {
    const double s2 = varsigma * varsigma;
    const double radicand = 1.0 - 2.0 * z / s2;
    if (radicand < 0.0)
        throw std::domain_error("IG cumulant: argument " + std::to_string(z) +
                                " exceeds varsigma^2/2 = " + std::to_string(0.5 * s2));
    // s (1 - sqrt(1 - x)) written as s x / (1 + sqrt(1 - x)) to avoid cancellation near 0
    const double x = 2.0 * z / s2;
    return varsigma * x / (1.0 + std::sqrt(radicand));
}

double ig_cumulant_derivative(double z, double varsigma) {
    const double radicand = 1.0 - 2.0 * z / (varsigma * varsigma);
    if (radicand <= 0.0) throw std::domain_error("IG cumulant derivative: argument outside domain");
    return 1.0 / (varsigma * std::sqrt(radicand));
}

std::complex<double> ig_cumulant(std::complex<double> z, double varsigma) {
    const double s2 = varsigma * varsigma;
    if (z.real() > 0.5 * s2)
        throw std::domain_error("IG cumulant: real part " + std::to_string(z.real()) +
                                " exceeds varsigma^2/2");
    const std::complex<double> x = 2.0 * z / s2;
    return varsigma * x / (1.0 + std::sqrt(1.0 - x));
}

void LhwParams::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("LHW: alpha must be > 0");
    if (!(varsigma > 0.0)) throw std::invalid_argument("LHW: varsigma must be > 0");
}

LhwModel::LhwModel(const LhwParams& params) : params_(params) { params_.validate(); }

double LhwModel::integrated_vol(double s, double t) const {
    return -std::expm1(-params_.alpha * (t - s)) / params_.alpha;
}

double LhwModel::kappa(double t) const {
    const double alpha = params_.alpha;
    const double vs = params_.varsigma;
    const double z = -integrated_vol(0.0, t);  // (e^{-alpha t} - 1) / alpha <= 0
    const auto& c = params_.curve;
    return c.forward(t) + c.forward_slope(t) / alpha + ig_cumulant(z, vs) -
           ig_cumulant_derivative(z, vs) * std::exp(-alpha * t) / alpha;
}

AffineCoefficients LhwModel::coefficients(double t, double T) const {
    return coefficients(t, T, gauss_legendre_64());
}

AffineCoefficients LhwModel::coefficients(double t, double T, const GaussLegendre& rule) const {
    if (t > T) throw std::invalid_argument("LHW bond: valuation time after maturity");
    const double vs = params_.varsigma;
    const auto& c = params_.curve;
    AffineCoefficients out;
    out.n = -integrated_vol(t, T);
    const double drift_part = c.forward(t) + ig_cumulant(-integrated_vol(0.0, t), vs);
    const double convexity = integrate(
        [&](double s) {
            return ig_cumulant(-integrated_vol(s, T), vs) - ig_cumulant(-integrated_vol(s, t), vs);
        },
        0.0, t, rule);
    out.m = std::log(c.discount(T) / c.discount(t)) - out.n * drift_part - convexity;
    return out;
}

double LhwModel::bond(double t, double T, double r) const { return coefficients(t, T).bond(r); }

}  // namespace tva
