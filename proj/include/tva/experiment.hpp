#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tva/calibration.hpp"
#include "tva/caplet.hpp"
#include "tva/csa.hpp"
#include "tva/curve.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/simulation.hpp"
#include "tva/swap.hpp"

namespace tva {

/// Bad configuration; line is 0 when the problem is not tied to a line of a file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, std::string field, const std::string& message);
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::vector<ModelKind> models{ModelKind::Vasicek, ModelKind::Lhw};
    std::vector<Direction> directions{Direction::Receiver, Direction::Payer};
    VasicekParams vasicek;
    double alpha = 0.25;
    std::optional<double> varsigma = 17.570728;  ///< empty: calibrate to the Vasicek cap
    CalibrationBounds bounds;

    // swap: regular schedule; empty fixed_rate means par rate, empty notional means
    // the notional giving a fixed leg of fixed_leg_target
    double swap_start = 0.0;
    double swap_end = 10.0;
    double swap_tenor = 1.0;
    std::optional<double> fixed_rate;
    std::optional<double> notional = 310.136066;
    double fixed_leg_target = 100.0;

    double cap_first_reset = 1.0;
    double cap_last_reset = 10.0;

    GridSpec grid;
    std::size_t paths = 10000;
    std::uint64_t seed = 20240101;
    std::size_t neighbours = 5;
    std::vector<CsaSpec> csas;

    std::filesystem::path output_dir = "out";
    int precision = 6;
    std::size_t sample_paths = 20;
    bool dump_paths = false;  ///< also write every simulated path

    void validate() const;
};

/// The five CSA rows and market set-up of the reference study.
ExperimentConfig default_reference_config();

std::vector<CsaSpec> default_csa_specs();

/// key = value lines, '#' comments; see README for the grammar.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = default_reference_config());
ExperimentConfig load_config(const std::filesystem::path& file);

/// Resolved market set-up shared by every case.
struct MarketSetup {
    double fixed_rate = 0.0;
    double notional = 0.0;
    double fixed_leg = 0.0;
    CapSpec cap;
    double cap_vasicek = 0.0;
    double cap_lhw = 0.0;
    double varsigma = 0.0;
    bool calibrated = false;
};

MarketSetup resolve_market(const ExperimentConfig& config);

struct TvaRow {
    ModelKind model = ModelKind::Vasicek;
    Direction direction = Direction::Receiver;
    std::string csa_id;
    double tva = 0.0;
    double cva = 0.0;
    double dva = 0.0;
    double lva = 0.0;
    double rc = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

struct ExperimentReport {
    MarketSetup market;
    std::vector<TvaRow> rows;
    std::vector<std::filesystem::path> files;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Seed of the path set for one model; both directions reuse it.
std::uint64_t model_seed(std::uint64_t seed, ModelKind model);

std::string format_number(double value, int precision);

}  // namespace tva
