#include "tva/simulation.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tva/parallel.hpp"

namespace tva {

void GridSpec::validate() const {
    if (steps < 1) throw std::invalid_argument("grid: need at least one step");
    if (!(horizon > 0.0)) throw std::invalid_argument("grid: horizon must be > 0");
}

std::optional<std::size_t> GridSpec::index_of(double t) const {
    const double x = t / step();
    const double rounded = std::round(x);
    if (rounded < 0.0 || rounded > static_cast<double>(steps)) return std::nullopt;
    if (std::abs(t - time(static_cast<std::size_t>(rounded))) > 1e-9) return std::nullopt;
    return static_cast<std::size_t>(rounded);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x7456u};
    return Rng(seq);
}

IgSampler::IgSampler(double h, double varsigma) : mean_(h / varsigma), shape_(h * h) {
    if (!(h > 0.0) || !(varsigma > 0.0))
        throw std::invalid_argument("IG sampler: h and varsigma must be > 0");
}

double IgSampler::operator()(Rng& rng) {
    const double xi = normal_(rng);
    const double y = xi * xi;
    // Smaller root of the quadratic: mean * (1 + w/2 - sqrt(w + w^2/4)), w = mean*y/shape,
    // written as mean / (1 + w/2 + sqrt(w + w^2/4)).
    const double w = mean_ * y / shape_;
    const double x = mean_ / (1.0 + 0.5 * w + std::sqrt(w + 0.25 * w * w));
    const double u = uniform_(rng);
    return u * (mean_ + x) <= mean_ ? x : mean_ * mean_ / x;
}

double sample_ig_increment(double h, double varsigma, Rng& rng) {
    IgSampler sampler(h, varsigma);
    return sampler(rng);
}

double PathSet::discount(std::size_t path, std::size_t i, double spread) const {
    return std::exp(-integrated_rate(path, i) - spread * times[i]);
}

double PathSet::scheme_discount(std::size_t path, std::size_t i, double spread) const {
    if (i <= 1) return 1.0;
    const double h = step();
    const double accrued = integrated_rate(path, i) - h * rates(path, 0);
    return std::exp(-accrued - spread * h * static_cast<double>(i - 1));
}

namespace {

PathSet empty_paths(const GridSpec& grid, std::size_t paths, ModelKind kind) {
    grid.validate();
    if (paths < 1) throw std::invalid_argument("simulation: need at least one path");
    PathSet out;
    out.grid = grid;
    out.model = kind;
    out.times.resize(grid.steps + 1);
    for (std::size_t i = 0; i <= grid.steps; ++i) out.times[i] = grid.time(i);
    out.rates = Matrix(paths, grid.steps + 1);
    out.integrated_rate = Matrix(paths, grid.steps + 1);
    return out;
}

void accumulate(PathSet& out, std::size_t j) {
    const double h = out.step();
    auto r = out.rates.row(j);
    auto integral = out.integrated_rate.row(j);
    integral[0] = 0.0;
    for (std::size_t i = 0; i < out.grid.steps; ++i) integral[i + 1] = integral[i] + h * r[i];
}

}  // namespace

PathSet simulate_vasicek(const VasicekParams& params, const GridSpec& grid, std::size_t paths,
                         std::uint64_t seed) {
    params.validate();
    PathSet out = empty_paths(grid, paths, ModelKind::Vasicek);
    const double h = grid.step();
    const double vol = params.sigma * std::sqrt(h);
    parallel_for(paths, [&](std::size_t j) {
        Rng rng = make_stream(seed, j);
        std::normal_distribution<double> normal(0.0, 1.0);
        auto r = out.rates.row(j);
        r[0] = params.r0;
        for (std::size_t i = 0; i < grid.steps; ++i)
            r[i + 1] = r[i] + params.a * (params.k - r[i]) * h + vol * normal(rng);
        accumulate(out, j);
    });
    return out;
}

PathSet simulate_lhw(const LhwParams& params, const GridSpec& grid, std::size_t paths,
                     std::uint64_t seed) {
    const LhwModel model(params);
    PathSet out = empty_paths(grid, paths, ModelKind::Lhw);
    const double h = grid.step();
    std::vector<double> kappa(grid.steps);
    for (std::size_t i = 0; i < grid.steps; ++i) kappa[i] = model.kappa(out.times[i]);
    const double r0 = params.curve.params().r0;
    parallel_for(paths, [&](std::size_t j) {
        Rng rng = make_stream(seed, j);
        IgSampler jump(h, params.varsigma);
        auto r = out.rates.row(j);
        r[0] = r0;
        for (std::size_t i = 0; i < grid.steps; ++i)
            r[i + 1] = r[i] + params.alpha * (kappa[i] - r[i]) * h + jump(rng);
        accumulate(out, j);
    });
    return out;
}

PathSet simulate(const ShortRateModel& model, const GridSpec& grid, std::size_t paths,
                 std::uint64_t seed) {
    if (const auto* v = model.vasicek()) return simulate_vasicek(v->params(), grid, paths, seed);
    return simulate_lhw(model.lhw()->params(), grid, paths, seed);
}

PathSet record_fixings(PathSet paths, const SwapSpec& swap, const ShortRateModel& model) {
    swap.validate();
    const auto& grid = paths.grid;
    for (std::size_t k = 0; k <= swap.periods(); ++k) {
        const double date = swap.reset_date(k);
        if (!grid.index_of(date))
            throw std::invalid_argument("fixings: schedule date " + std::to_string(date) +
                                        " is not on the simulation grid");
    }
    const std::size_t resets = swap.periods();
    paths.reset_steps.resize(resets);
    std::vector<AffineCoefficients> coeff(resets);
    for (std::size_t k = 1; k <= resets; ++k) {
        paths.reset_steps[k - 1] = *grid.index_of(swap.reset_date(k - 1));
        coeff[k - 1] = model.coefficients(swap.reset_date(k - 1), swap.payment_dates[k - 1]);
    }
    paths.fixings = Matrix(paths.paths(), resets);
    for (std::size_t j = 0; j < paths.paths(); ++j)
        for (std::size_t k = 0; k < resets; ++k)
            paths.fixings(j, k) = 1.0 / coeff[k].bond(paths.rates(j, paths.reset_steps[k]));
    return paths;
}

void write_paths_csv(std::ostream& out, const PathSet& paths, std::size_t max_paths) {
    out << "path,step,time,rate\n";
    const std::size_t count = std::min(max_paths, paths.paths());
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i <= paths.steps(); ++i)
            out << j << ',' << i << ',' << paths.times[i] << ',' << paths.rates(j, i) << '\n';
}

}  // namespace tva
