#include "tva/caplet.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tva/quadrature.hpp"
#include "tva/simulation.hpp"

namespace tva {

void CapSpec::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("cap: delta must be > 0");
    if (resets.empty()) throw std::invalid_argument("cap: no caplets");
    for (double T : resets)
        if (T < 0.0) throw std::invalid_argument("cap: negative reset date");
}

CapSpec CapSpec::regular(double first_reset, double last_reset, double delta, double strike,
                         double notional) {
    CapSpec cap;
    cap.delta = delta;
    cap.strike = strike;
    cap.notional = notional;
    const auto count = static_cast<std::size_t>(std::llround((last_reset - first_reset) / delta)) + 1;
    for (std::size_t i = 0; i < count; ++i) cap.resets.push_back(first_reset + static_cast<double>(i) * delta);
    cap.validate();
    return cap;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double caplet_vasicek(double T, double delta, double K, const VasicekParams& p) {
    if (T < 0.0) throw std::invalid_argument("caplet: negative reset date");
    const InitialCurve curve(p);
    const double kbar = 1.0 + delta * K;
    const double b_reset = curve.discount(T);
    const double b_pay = curve.discount(T + delta);
    const double decay = -std::expm1(-p.a * delta);
    const double variance =
        p.sigma * p.sigma / (2.0 * p.a * p.a * p.a) * (-std::expm1(-2.0 * p.a * T)) * decay * decay;
    if (!(variance > 0.0)) return std::max(b_reset - kbar * b_pay, 0.0);
    const double vol = std::sqrt(variance);
    const double d_plus = std::log(b_pay * kbar / b_reset) / vol + 0.5 * vol;
    const double d_minus = d_plus - vol;
    return b_reset * normal_cdf(-d_minus) - kbar * b_pay * normal_cdf(-d_plus);
}

double cap_vasicek(const CapSpec& cap, const VasicekParams& params) {
    cap.validate();
    double sum = 0.0;
    for (double T : cap.resets) sum += caplet_vasicek(T, cap.delta, cap.strike, params);
    return cap.notional * sum;
}

namespace {

// Quadrature data of the MGF over s in [0, T].
struct MgfKernel {
    double base = 0.0;       // -int psi(-Sigma_s(T + delta)) ds
    double linear = 0.0;     // log(B0(T)/B0(T+delta)) + int (psi(-Sigma_s(T+delta)) - psi(-Sigma_s(T))) ds
    std::vector<double> weight;
    std::vector<double> sigma_pay;    // Sigma_s(T + delta)
    std::vector<double> sigma_reset;  // Sigma_s(T)
    double varsigma = 0.0;

    MgfKernel(double T, double delta, const LhwParams& params) : varsigma(params.varsigma) {
        const LhwModel model(params);
        static const GaussLegendre s_rule(24);
        const auto rule = composite_rule(0.0, T, s_rule, 2.0);
        weight = rule.weights;
        double int_pay = 0.0;
        double int_reset = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double s = rule.points[q];
            sigma_pay.push_back(model.integrated_vol(s, T + delta));
            sigma_reset.push_back(model.integrated_vol(s, T));
            int_pay += weight[q] * ig_cumulant(-sigma_pay.back(), varsigma);
            int_reset += weight[q] * ig_cumulant(-sigma_reset.back(), varsigma);
        }
        base = -int_pay;
        linear = std::log(params.curve.discount(T) / params.curve.discount(T + delta)) + int_pay - int_reset;
    }

    std::complex<double> log_mgf(std::complex<double> z) const {
        std::complex<double> acc = base + z * linear;
        for (std::size_t q = 0; q < weight.size(); ++q)
            acc += weight[q] * ig_cumulant((z - 1.0) * sigma_pay[q] - z * sigma_reset[q], varsigma);
        return acc;
    }

    // Largest real part of the cumulant argument at z = R (attained at s = T).
    double max_argument(double R) const {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < weight.size(); ++q)
            worst = std::max(worst, (R - 1.0) * sigma_pay[q] - R * sigma_reset[q]);
        return worst;
    }
};

}  // namespace

std::complex<double> caplet_mgf(double T, double delta, std::complex<double> z, const LhwParams& params) {
    params.validate();
    return std::exp(MgfKernel(T, delta, params).log_mgf(z));
}

double caplet_lhw_fourier(double T, double delta, double K, const LhwParams& params,
                          const FourierSettings& settings) {
    params.validate();
    if (T < 0.0) throw std::invalid_argument("caplet: negative reset date");
    const double R = settings.damping;
    if (!(R > 1.0)) throw std::invalid_argument("caplet Fourier: damping must exceed 1");
    const auto& curve = params.curve;
    const double kbar = 1.0 + delta * K;
    const double b_pay = curve.discount(T + delta);
    if (T == 0.0) return std::max(curve.discount(0.0) - kbar * b_pay, 0.0);

    const MgfKernel kernel(T, delta, params);
    // Sigma_s(T) -> 0 and Sigma_s(T + delta) -> (1 - e^{-alpha delta})/alpha as s -> T.
    const double edge = (R - 1.0) * LhwModel(params).integrated_vol(T, T + delta);
    if (std::max(edge, kernel.max_argument(R)) > 0.5 * params.varsigma * params.varsigma)
        throw std::domain_error("caplet Fourier: damping R too large for the IG cumulant domain");

    const double log_kbar = std::log(kbar);
    auto integrand = [&](double v) {
        const std::complex<double> iv(0.0, v);
        const std::complex<double> numerator =
            std::exp((1.0 + iv - R) * log_kbar + kernel.log_mgf(R - iv));
        return (numerator / ((iv - R) * (1.0 + iv - R))).real();
    };

    static const GaussLegendre panel_rule(32);
    double total = 0.0;
    double lo = 0.0;
    // the factor 1/(1 + iv - R) peaks over a width of about R - 1 around v = 0
    const double near_width = std::min(settings.panel_width, 2.0 * (R - 1.0));
    const double near_end = std::min(settings.min_truncation, 20.0 * (R - 1.0) + 10.0);
    while (true) {
        const double width = lo < near_end ? near_width : settings.panel_width;
        const double hi = lo + width;
        const double panel = integrate(integrand, lo, hi, panel_rule, width);
        total += panel;
        lo = hi;
        if (lo >= settings.min_truncation && std::abs(panel) < settings.tail_tolerance) break;
        if (lo >= settings.max_truncation)
            throw std::runtime_error("caplet Fourier: integrand did not decay before the truncation limit");
    }
    return b_pay / std::numbers::pi * total;
}

double cap_lhw(const CapSpec& cap, const LhwParams& params, const FourierSettings& settings) {
    cap.validate();
    double sum = 0.0;
    for (double T : cap.resets) sum += caplet_lhw_fourier(T, cap.delta, cap.strike, params, settings);
    return cap.notional * sum;
}

std::vector<McEstimate> caplets_lhw_mc(const CapSpec& cap, const LhwParams& params,
                                       std::size_t paths, std::uint64_t seed, double steps_per_year) {
    cap.validate();
    if (paths < 2) throw std::invalid_argument("caplet MC: need at least two paths");
    const LhwModel model(params);
    double last = 0.0;
    for (double T : cap.resets) last = std::max(last, T);

    const double h = 1.0 / steps_per_year;
    const auto steps = static_cast<std::size_t>(std::llround(last * steps_per_year));
    std::vector<std::size_t> reset_step;
    std::vector<AffineCoefficients> bond;
    for (double T : cap.resets) {
        const double x = T * steps_per_year;
        if (std::abs(x - std::round(x)) > 1e-9) throw std::invalid_argument("caplet MC: reset off the grid");
        reset_step.push_back(static_cast<std::size_t>(std::llround(x)));
        bond.push_back(model.coefficients(T, T + cap.delta));
    }
    std::vector<double> kappa(steps);
    for (std::size_t i = 0; i < steps; ++i) kappa[i] = model.kappa(static_cast<double>(i) * h);

    const double kbar = cap.kbar();
    const std::size_t count = cap.resets.size();
    std::vector<double> sum(count, 0.0), sum_sq(count, 0.0);
    std::vector<double> payoff(count);
    const double r0 = params.curve.params().r0;
    for (std::size_t j = 0; j < paths; ++j) {
        Rng rng = make_stream(seed, j);
        IgSampler jump(h, params.varsigma);
        double r = r0;
        double integral = 0.0;  // trapezoidal int_0^{t_i} r ds
        std::size_t i = 0;
        auto settle = [&](std::size_t upto) {
            for (std::size_t c = 0; c < count; ++c)
                if (reset_step[c] == upto)
                    payoff[c] = kbar * std::exp(-integral) * std::max(1.0 / kbar - bond[c].bond(r), 0.0);
        };
        settle(0);
        for (; i < steps; ++i) {
            const double next = r + params.alpha * (kappa[i] - r) * h + jump(rng);
            integral += 0.5 * h * (r + next);
            r = next;
            settle(i + 1);
        }
        for (std::size_t c = 0; c < count; ++c) {
            sum[c] += payoff[c];
            sum_sq[c] += payoff[c] * payoff[c];
        }
    }
    std::vector<McEstimate> out(count);
    const double m = static_cast<double>(paths);
    for (std::size_t c = 0; c < count; ++c) {
        const double mean = sum[c] / m;
        const double var = std::max(0.0, (sum_sq[c] / m - mean * mean) * m / (m - 1.0));
        out[c] = {mean, std::sqrt(var / m)};
    }
    return out;
}

McEstimate caplet_lhw_mc(double T, double delta, double K, const LhwParams& params,
                         std::size_t paths, std::uint64_t seed, double steps_per_year) {
    CapSpec cap;
    cap.resets = {T};
    cap.delta = delta;
    cap.strike = K;
    return caplets_lhw_mc(cap, params, paths, seed, steps_per_year).front();
}

}  // namespace tva
