#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tva/clean_pricing.hpp"
#include "tva/experiment.hpp"
#include "tva/levy_hull_white.hpp"
#include "tva/vasicek.hpp"

namespace {

enum ExitCode { Ok = 0, Other = 1, Usage = 2, Io = 3, Numerical = 4 };

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    std::optional<std::string> out;
    std::optional<int> precision;
    bool dump_paths = false;
};

void add_common(CLI::App* cmd, Overrides& o, bool with_config) {
    if (with_config) cmd->add_option("--config", o.config, "experiment configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "master seed (overrides TVA_SEED and the config)");
    cmd->add_option("--paths", o.paths, "number of simulated paths")->check(CLI::PositiveNumber);
    cmd->add_option("--steps", o.steps, "time steps over the horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--precision", o.precision, "significant digits in CSV output")->check(CLI::Range(1, 17));
    cmd->add_flag("--dump-paths", o.dump_paths, "write every path with its clean price and TVA");
}

std::optional<std::uint64_t> env_seed() {
    const char* text = std::getenv("TVA_SEED");
    if (!text || !*text) return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != std::string(text).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw tva::ConfigError(0, "TVA_SEED", std::string("not an unsigned integer: '") + text + "'");
    }
}

tva::ExperimentConfig build_config(const Overrides& o, bool use_file) {
    tva::ExperimentConfig c = use_file && !o.config.empty() ? tva::load_config(o.config) : tva::default_reference_config();
    if (auto s = env_seed()) c.seed = *s;
    if (o.seed) c.seed = *o.seed;
    if (o.paths) c.paths = *o.paths;
    if (o.steps) c.grid.steps = *o.steps;
    if (o.out) c.output_dir = *o.out;
    if (o.precision) c.precision = *o.precision;
    if (o.dump_paths) c.dump_paths = true;
    c.validate();
    return c;
}

void print_market(const tva::MarketSetup& m) {
    std::printf("swap rate        %.6f%%\n", 100.0 * m.fixed_rate);
    std::printf("notional         %.6f\n", m.notional);
    std::printf("fixed leg        %.6f\n", m.fixed_leg);
    std::printf("cap (vasicek)    %.6f\n", m.cap_vasicek);
    std::printf("cap (lhw)        %.6f\n", m.cap_lhw);
    std::printf("varsigma         %.6f (%s)\n", m.varsigma, m.calibrated ? "calibrated" : "fixed");
}

void print_report(const tva::ExperimentReport& r) {
    print_market(r.market);
    if (!r.rows.empty()) {
        std::printf("\n%-8s %-9s %-4s %8s %8s %8s %8s %8s   %s\n", "model", "direction", "csa", "TVA", "CVA", "DVA",
                    "LVA", "RC", "linear 95% CI");
        for (const auto& row : r.rows) {
            std::printf("%-8s %-9s %-4s %8.3f %8.3f %8.3f %8.3f %8.3f", std::string(tva::to_string(row.model)).c_str(),
                        std::string(tva::to_string(row.direction)).c_str(), row.csa_id.c_str(), row.tva, row.cva + 0.0,
                        row.dva + 0.0, row.lva, row.rc + 0.0);
            if (row.ci_low) std::printf("   [%.3f, %.3f]", *row.ci_low, *row.ci_high);
            std::printf("\n");
        }
    }
    std::printf("\n");
    for (const auto& f : r.files) std::printf("wrote %s\n", f.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TVA engine for interest-rate swaps under Vasicek and Levy Hull-White short rates"};
    app.require_subcommand(1);

    Overrides calibrate_o, price_o, tva_o, reference_o;
    auto* calibrate = app.add_subcommand("calibrate", "calibrate varsigma to the Vasicek cap and write calibration.csv");
    add_common(calibrate, calibrate_o, true);

    auto* price = app.add_subcommand("price", "print market set-up and clean swap prices at (time, rate)");
    add_common(price, price_o, true);
    double price_time = 0.0;
    std::optional<double> price_rate;
    std::optional<double> price_fixing;
    price->add_option("--time", price_time, "valuation time");
    price->add_option("--rate", price_rate, "short rate at the valuation time (default r0)");
    price->add_option("--fixing", price_fixing, "reset value 1/B(T_{k-1}, T_k) of the running period");

    auto* tva_cmd = app.add_subcommand("tva", "run the TVA study described by the configuration");
    add_common(tva_cmd, tva_o, true);

    auto* reference = app.add_subcommand("reproduce-paper", "run the reference study with built-in parameters");
    add_common(reference, reference_o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (calibrate->parsed()) {
            auto c = build_config(calibrate_o, true);
            c.varsigma.reset();
            c.csas.clear();
            print_report(tva::run_experiment(c));
        } else if (price->parsed()) {
            const auto c = build_config(price_o, true);
            const auto m = tva::resolve_market(c);
            print_market(m);
            const double r = price_rate.value_or(c.vasicek.r0);
            const auto swap = tva::SwapSpec::regular(c.swap_start, c.swap_end, c.swap_tenor, m.fixed_rate, m.notional);
            const tva::ShortRateModel models[] = {
                tva::ShortRateModel(tva::VasicekModel(c.vasicek)),
                tva::ShortRateModel(tva::LhwModel(tva::LhwParams{c.alpha, m.varsigma, tva::InitialCurve(c.vasicek)})),
            };
            for (const auto& model : models) {
                const double v = tva::swap_price(price_time, r, price_fixing, swap, model);
                std::printf("receiver swap (%s) at t=%g, r=%g: %.6f\n", std::string(model.name()).c_str(), price_time,
                            r, v);
            }
        } else if (tva_cmd->parsed()) {
            print_report(tva::run_experiment(build_config(tva_o, true)));
        } else if (reference->parsed()) {
            print_report(tva::run_experiment(build_config(reference_o, false)));
        }
    } catch (const tva::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return Usage;
    } catch (const tva::OutputError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return Io;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Usage;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return Numerical;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return Numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Other;
    }
    return Ok;
}
