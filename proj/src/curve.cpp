#include "tva/curve.hpp"
#include "tva/vasicek.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tva {

void VasicekParams::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("Vasicek: mean reversion a must be > 0, got " + std::to_string(a));
    if (!(sigma >= 0.0)) throw std::invalid_argument("Vasicek: sigma must be >= 0, got " + std::to_string(sigma));
    if (!std::isfinite(k) || !std::isfinite(r0)) throw std::invalid_argument("Vasicek: k and r0 must be finite");
}

InitialCurve::InitialCurve(const VasicekParams& params) : params_(params) { params_.validate(); }

InitialCurve vasicek_initial_curve(const VasicekParams& params) { return InitialCurve(params); }

namespace {

// log B0(T) = -R_inf T + (R_inf - r0)(1 - e^{-aT})/a - sigma^2/(4a^3)(1 - e^{-aT})^2
double log_discount(const VasicekParams& p, double T) {
    const double decay = -std::expm1(-p.a * T);
    const double rinf = p.long_rate();
    return -rinf * T + (rinf - p.r0) * decay / p.a -
           p.sigma * p.sigma / (4.0 * p.a * p.a * p.a) * decay * decay;
}

}  // namespace

double InitialCurve::zero_rate(double T) const {
    if (T <= 0.0) return params_.r0;
    return -log_discount(params_, T) / T;
}

double InitialCurve::discount(double T) const {
    if (T <= 0.0) return 1.0;
    return std::exp(log_discount(params_, T));
}

double InitialCurve::forward(double T) const {
    const auto& p = params_;
    const double e = std::exp(-p.a * T);
    const double decay = 1.0 - e;
    return p.k + e * (p.r0 - p.k) - p.sigma * p.sigma / (2.0 * p.a * p.a) * decay * decay;
}

double InitialCurve::forward_slope(double T) const {
    const auto& p = params_;
    const double e = std::exp(-p.a * T);
    return -p.a * e * (p.r0 - p.k) - p.sigma * p.sigma / p.a * (1.0 - e) * e;
}

double AffineCoefficients::bond(double r) const { return std::exp(m + n * r); }

VasicekModel::VasicekModel(const VasicekParams& params) : params_(params), curve_(params) {}

AffineCoefficients VasicekModel::coefficients(double t, double T) const {
    if (t > T) throw std::invalid_argument("Vasicek bond: valuation time after maturity");
    const auto& p = params_;
    const double decay = -std::expm1(-p.a * (T - t));
    AffineCoefficients c;
    c.m = p.long_rate() * (decay / p.a - (T - t)) -
          p.sigma * p.sigma / (4.0 * p.a * p.a * p.a) * decay * decay;
    c.n = -decay / p.a;
    return c;
}

double VasicekModel::bond(double t, double T, double r) const { return coefficients(t, T).bond(r); }

}  // namespace tva
