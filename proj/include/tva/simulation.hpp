#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "tva/matrix.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/swap.hpp"

namespace tva {

/// Uniform time grid on [0, horizon] with `steps` intervals.
struct GridSpec {
    double horizon = 10.0;
    std::size_t steps = 200;

    void validate() const;
    double step() const { return horizon / static_cast<double>(steps); }
    double time(std::size_t i) const { return horizon * static_cast<double>(i) / static_cast<double>(steps); }
    /// Grid index of t when t is a grid point (to 1e-9 y), otherwise nullopt.
    std::optional<std::size_t> index_of(double t) const;
};

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream); streams are path indices.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Inverse Gaussian increment of the subordinator over a step h:
/// IG(mean h/varsigma, shape h^2), drawn with the transformation method
/// (one normal, one uniform, no rejection loop).
class IgSampler {
public:
    IgSampler(double h, double varsigma);
    double operator()(Rng& rng);

    double mean() const { return mean_; }
    double shape() const { return shape_; }

private:
    double mean_;
    double shape_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

double sample_ig_increment(double h, double varsigma, Rng& rng);

/// Simulated short-rate paths on a uniform grid.
struct PathSet {
    GridSpec grid;
    ModelKind model = ModelKind::Vasicek;
    std::vector<double> times;  ///< steps + 1 grid times
    Matrix rates;               ///< paths x (steps + 1); column 0 is r0
    Matrix integrated_rate;     ///< h * sum_{k < i} r_k (left-endpoint integral of r up to t_i)

    /// Reset-date grid indices and per-path fixings 1/B_{T_{k-1}}(T_k), filled by record_fixings.
    std::vector<std::size_t> reset_steps;
    Matrix fixings;  ///< paths x resets

    std::size_t paths() const { return rates.rows(); }
    std::size_t steps() const { return grid.steps; }
    double step() const { return grid.step(); }

    /// exp(-int_0^{t_i} (r + spread) ds), left-endpoint Euler accumulation.
    double discount(std::size_t path, std::size_t i, double spread = 0.0) const;

    /// Weight carried by the step-i driver in the explicit backward recursion,
    /// exp(-h sum_{k=1}^{i-1} (r_k + spread)); the same weight the BSDE scheme
    /// implicitly applies, so forward and backward estimators share their bias.
    double scheme_discount(std::size_t path, std::size_t i, double spread = 0.0) const;
};

/// Euler scheme r_{i+1} = r_i + a(k - r_i)h + sigma sqrt(h) xi.
PathSet simulate_vasicek(const VasicekParams& params, const GridSpec& grid, std::size_t paths,
                         std::uint64_t seed);

/// Euler scheme r_{i+1} = r_i + alpha(kappa(t_i) - r_i)h + dZ_i, dZ_i ~ IG(h/varsigma, h^2).
PathSet simulate_lhw(const LhwParams& params, const GridSpec& grid, std::size_t paths,
                     std::uint64_t seed);

PathSet simulate(const ShortRateModel& model, const GridSpec& grid, std::size_t paths,
                 std::uint64_t seed);

/// Stores 1/B_{T_{k-1}}(T_k) at every reset date of the swap for every path.
/// Throws std::invalid_argument when a schedule date is not a grid point.
PathSet record_fixings(PathSet paths, const SwapSpec& swap, const ShortRateModel& model);

/// Debug dump with header `path,step,time,rate`.
void write_paths_csv(std::ostream& out, const PathSet& paths, std::size_t max_paths);

}  // namespace tva
