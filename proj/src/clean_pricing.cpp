#include "tva/clean_pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace tva {

double fra_price(double t, double T, double delta, double K, double N,
                 const ShortRateModel& model, double r) {
    if (t > T) throw std::invalid_argument("FRA: valuation time after the period start");
    const double kbar = 1.0 + delta * K;
    return N * (model.bond(t, T, r) - kbar * model.bond(t, T + delta, r));
}

double fra_price(double T, double delta, double K, double N, const InitialCurve& curve) {
    if (T < 0.0) throw std::invalid_argument("FRA: period start before valuation date");
    const double kbar = 1.0 + delta * K;
    return N * (curve.discount(T) - kbar * curve.discount(T + delta));
}

namespace {

double annuity(const SwapSpec& swap, const InitialCurve& curve) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= swap.periods(); ++k)
        sum += swap.accrual(k) * curve.discount(swap.payment_dates[k - 1]);
    return sum;
}

// First k (1-based) with T_k > t.
std::size_t running_index(const SwapSpec& swap, double t) {
    std::size_t k = 1;
    while (k <= swap.periods() && !(swap.payment_dates[k - 1] > t)) ++k;
    return k;
}

}  // namespace

double swap_rate(const SwapSpec& swap, const InitialCurve& curve) {
    swap.validate();
    const double a = annuity(swap, curve);
    if (!(a > 0.0)) throw std::domain_error("swap rate: zero annuity");
    return (curve.discount(swap.start) - curve.discount(swap.maturity())) / a;
}

double fixed_leg_value(const SwapSpec& swap, const InitialCurve& curve) {
    swap.validate();
    return swap.notional * swap.fixed_rate * annuity(swap, curve);
}

double swap_price(const SwapSpec& swap, const InitialCurve& curve) {
    swap.validate();
    const double floating = curve.discount(swap.start) - curve.discount(swap.maturity());
    return swap.sign() * swap.notional * (floating - swap.fixed_rate * annuity(swap, curve));
}

double swap_price(double t, double r, std::optional<double> last_fixing, const SwapSpec& swap,
                  const ShortRateModel& model) {
    return collateralized_swap_price(t, r, last_fixing, swap, model, 0.0);
}

double collateralized_swap_price(double t, double r, std::optional<double> last_fixing,
                                 const SwapSpec& swap, const ShortRateModel& model, double basis) {
    swap.validate();
    if (t >= swap.maturity()) throw std::invalid_argument("swap: valuation at or after the last payment");
    if (t < 0.0) throw std::invalid_argument("swap: negative valuation time");
    const double K = swap.fixed_rate;
    auto bond = [&](double T) { return model.bond(t, T, r); };
    auto shift = [&](double T) { return std::exp(-basis * (T - t)); };

    double value = 0.0;
    std::size_t first = 1;
    if (t > swap.start) {
        first = running_index(swap, t);
        const double reset = swap.reset_date(first - 1);
        const double pay = swap.payment_dates[first - 1];
        double fixing = 0.0;
        if (last_fixing) {
            fixing = *last_fixing;
        } else if (std::abs(reset - t) < 1e-12) {
            fixing = 1.0 / model.bond(reset, pay, r);
        } else {
            throw std::invalid_argument("swap: in-life valuation needs the running fixing");
        }
        const double accrual = swap.accrual(first);
        if (basis == 0.0) {
            // Telescoped form: (fixing - K delta) B(T_kt) - B(Tn) - K sum_{k > kt} delta B(T_k)
            value = (fixing - K * accrual) * bond(pay) - bond(swap.maturity());
            for (std::size_t k = first + 1; k <= swap.periods(); ++k)
                value -= K * swap.accrual(k) * bond(swap.payment_dates[k - 1]);
            return swap.sign() * swap.notional * value;
        }
        value = shift(pay) * bond(pay) * (fixing - 1.0 - K * accrual);
        ++first;
    } else if (basis == 0.0) {
        value = bond(swap.start) - bond(swap.maturity());
        for (std::size_t k = 1; k <= swap.periods(); ++k)
            value -= K * swap.accrual(k) * bond(swap.payment_dates[k - 1]);
        return swap.sign() * swap.notional * value;
    }
    // Period k pays 1/B_{T_{k-1}}(T_k) - 1 - K delta at T_k; its shifted value is
    // e^{-b(T_k - t)} (B_t(T_{k-1}) - (1 + K delta) B_t(T_k)).
    for (std::size_t k = first; k <= swap.periods(); ++k) {
        const double pay = swap.payment_dates[k - 1];
        value += shift(pay) * (bond(swap.reset_date(k - 1)) - (1.0 + K * swap.accrual(k)) * bond(pay));
    }
    return swap.sign() * swap.notional * value;
}

SwapGridPricer::SwapGridPricer(const SwapSpec& swap, const ShortRateModel& model, const GridSpec& grid)
    : swap_(swap), steps_(grid.steps + 1) {
    swap.validate();
    for (std::size_t i = 0; i <= grid.steps; ++i) {
        const double t = grid.time(i);
        StepData& d = steps_[i];
        if (t >= swap.maturity() - 1e-12) continue;
        d.alive = true;
        d.before_start = t <= swap.start + 1e-12;
        d.first = d.before_start ? 1 : running_index(swap, t + 1e-12);
        if (d.before_start) d.start = model.coefficients(t, swap.start);
        for (std::size_t k = d.first; k <= swap.periods(); ++k)
            d.payment.push_back(model.coefficients(t, swap.payment_dates[k - 1]));
    }
}

std::optional<std::size_t> SwapGridPricer::running_period(std::size_t step) const {
    const StepData& d = steps_.at(step);
    if (!d.alive || d.before_start) return std::nullopt;
    return d.first - 1;
}

double SwapGridPricer::price(std::size_t step, double r, double fixing) const {
    const StepData& d = steps_[step];
    if (!d.alive) return 0.0;
    const double K = swap_.fixed_rate;
    const std::size_t n = swap_.periods();
    double value;
    if (d.before_start) {
        value = d.start.bond(r) - d.payment.back().bond(r);
        for (std::size_t k = 1; k <= n; ++k) value -= K * swap_.accrual(k) * d.payment[k - 1].bond(r);
    } else {
        value = (fixing - K * swap_.accrual(d.first)) * d.payment.front().bond(r) - d.payment.back().bond(r);
        for (std::size_t k = d.first + 1; k <= n; ++k)
            value -= K * swap_.accrual(k) * d.payment[k - d.first].bond(r);
    }
    return swap_.sign() * swap_.notional * value;
}

Matrix clean_price_matrix(const PathSet& paths, const SwapSpec& swap, const ShortRateModel& model) {
    if (paths.fixings.rows() != paths.paths() || paths.fixings.cols() != swap.periods())
        throw std::invalid_argument("clean prices: paths carry no fixings for this swap");
    const SwapGridPricer pricer(swap, model, paths.grid);
    Matrix out(paths.paths(), paths.steps() + 1);
    for (std::size_t i = 0; i <= paths.steps(); ++i) {
        const auto period = pricer.running_period(i);
        for (std::size_t j = 0; j < paths.paths(); ++j) {
            const double fixing = period ? paths.fixings(j, *period) : 0.0;
            out(j, i) = pricer.price(i, paths.rates(j, i), fixing);
        }
    }
    return out;
}

}  // namespace tva
