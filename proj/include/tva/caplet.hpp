#pragma once

#include <cstddef>
#include <complex>
#include <cstdint>
#include <vector>

#include "tva/curve.hpp"
#include "tva/levy_hull_white.hpp"

namespace tva {

/// Cap as a strip of caplets resetting at `resets` and paying delta later.
struct CapSpec {
    std::vector<double> resets;
    double delta = 1.0;
    double strike = 0.0;
    double notional = 1.0;

    void validate() const;
    double kbar() const { return 1.0 + delta * strike; }

    /// Resets first, first + delta, ..., up to last (inclusive).
    static CapSpec regular(double first_reset, double last_reset, double delta, double strike,
                           double notional);
};

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Time-0 Vasicek caplet per unit notional (put on the T + delta bond, scaled by Kbar).
/// Falls back to the intrinsic value when the bond-price volatility is zero.
double caplet_vasicek(double T, double delta, double K, const VasicekParams& params);
double cap_vasicek(const CapSpec& cap, const VasicekParams& params);

struct FourierSettings {
    double damping = 1.5;        ///< R > 1
    double min_truncation = 200.0;
    double max_truncation = 1e5;
    double panel_width = 10.0;   ///< panels of 32 Gauss-Legendre nodes in v
    double tail_tolerance = 1e-14;
};

/// Time-0 LHW caplet per unit notional by damped Fourier inversion of the
/// forward-measure moment generating function of Y = -log B_T(T + delta).
/// Throws std::domain_error when the damping violates the cumulant domain.
double caplet_lhw_fourier(double T, double delta, double K, const LhwParams& params,
                          const FourierSettings& settings = {});
double cap_lhw(const CapSpec& cap, const LhwParams& params, const FourierSettings& settings = {});

/// Moment generating function of Y under the T + delta forward measure.
std::complex<double> caplet_mgf(double T, double delta, std::complex<double> z, const LhwParams& params);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Caplet price as Kbar E[exp(-int_0^T r) (1/Kbar - B_T(T + delta))^+] with an Euler
/// simulation of the LHW short rate, per unit notional.
McEstimate caplet_lhw_mc(double T, double delta, double K, const LhwParams& params,
                         std::size_t paths, std::uint64_t seed, double steps_per_year = 100.0);

/// All caplets of a cap from one set of simulated paths (per unit notional).
std::vector<McEstimate> caplets_lhw_mc(const CapSpec& cap, const LhwParams& params,
                                       std::size_t paths, std::uint64_t seed,
                                       double steps_per_year = 100.0);

}  // namespace tva
