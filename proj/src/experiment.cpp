#include "tva/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "tva/bsde.hpp"
#include "tva/calibration.hpp"
#include "tva/clean_pricing.hpp"
#include "tva/levy_hull_white.hpp"
#include "tva/parallel.hpp"
#include "tva/vasicek.hpp"

namespace tva {

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ", field '" + field + "': " + message
                                  : "config field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::vector<CsaSpec> default_csa_specs() {
    struct Row {
        const char* id;
        double r_frak, rho, rho_bar;
        CloseOut close_out;
        Collateral collateral;
    };
    const Row rows[] = {
        {"1", 0.4, 0.4, 0.4, CloseOut::Clean, Collateral::None},
        {"2", 1.0, 0.4, 0.4, CloseOut::Clean, Collateral::None},
        {"3", 1.0, 1.0, 0.4, CloseOut::Clean, Collateral::None},
        {"4", 1.0, 1.0, 0.4, CloseOut::PreDefault, Collateral::None},
        {"5", 1.0, 0.4, 0.4, CloseOut::Clean, Collateral::ContinuousClean},
    };
    std::vector<CsaSpec> out;
    for (const Row& r : rows) {
        CsaSpec c;
        c.id = r.id;
        c.r_frak = r.r_frak;
        c.rho = r.rho;
        c.rho_bar = r.rho_bar;
        c.close_out = r.close_out;
        c.collateral = r.collateral;
        out.push_back(c);
    }
    return out;
}

ExperimentConfig default_reference_config() {
    ExperimentConfig c;
    c.csas = default_csa_specs();
    return c;
}

void ExperimentConfig::validate() const {
    try {
        vasicek.validate();
        grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(0, "model", e.what());
    }
    if (models.empty()) throw ConfigError(0, "models", "at least one model is required");
    if (directions.empty()) throw ConfigError(0, "directions", "at least one direction is required");
    if (!(alpha > 0.0)) throw ConfigError(0, "alpha", "must be > 0");
    if (varsigma && !(*varsigma > 0.0)) throw ConfigError(0, "varsigma", "must be > 0");
    if (!(bounds.lower > 0.0 && bounds.upper > bounds.lower))
        throw ConfigError(0, "varsigma_bounds", "need 0 < lower < upper");
    if (paths < 1) throw ConfigError(0, "paths", "must be >= 1");
    if (neighbours < 1 || (!csas.empty() && neighbours > paths))
        throw ConfigError(0, "neighbours", "must lie in [1, paths]");
    if (precision < 1 || precision > 17) throw ConfigError(0, "precision", "must lie in [1, 17]");
    SwapSpec swap;
    try {
        swap = SwapSpec::regular(swap_start, swap_end, swap_tenor, fixed_rate.value_or(0.0), notional.value_or(1.0));
        CapSpec::regular(cap_first_reset, cap_last_reset, swap_tenor, 0.0, 1.0);
    } catch (const std::exception& e) {
        throw ConfigError(0, "swap", e.what());
    }
    if (!csas.empty()) {
        if (swap.maturity() > grid.horizon + 1e-9) throw ConfigError(0, "horizon", "shorter than the swap");
        for (std::size_t k = 0; k <= swap.periods(); ++k)
            if (!grid.index_of(swap.reset_date(k)))
                throw ConfigError(0, "steps", "grid does not contain every swap date");
    }
    std::map<std::string, int> seen;
    for (const CsaSpec& c : csas) {
        if (seen[c.id]++) throw ConfigError(0, "csa", "duplicate id " + c.id);
        try {
            c.validate();
        } catch (const std::exception& e) {
            throw ConfigError(0, "csa", "csa " + c.id + ": " + e.what());
        }
    }
}

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct LineParser {
    std::size_t line;
    std::string key;

    double number(const std::string& text) const {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            throw ConfigError(line, key, "expected a number, got '" + text + "'");
        return v;
    }

    std::uint64_t integer(const std::string& text) const {
        std::uint64_t v = 0;
        const auto* end = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || ptr != end) throw ConfigError(line, key, "expected a non-negative integer, got '" + text + "'");
        return v;
    }

    bool boolean(const std::string& text) const {
        if (text == "true" || text == "yes" || text == "1") return true;
        if (text == "false" || text == "no" || text == "0") return false;
        throw ConfigError(line, key, "expected true or false, got '" + text + "'");
    }

    template <class Fn>
    auto parse_enum(const std::string& text, Fn&& fn) const {
        try {
            return fn(text);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(line, key, e.what());
        }
    }
};

std::string lower_csa_field(std::size_t i) {
    static const char* names[] = {"id", "r_frak", "rho", "rho_bar", "close_out", "collateral"};
    return std::string("csa.") + names[i];
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ExperimentConfig c) {
    bool csa_reset = false;
    // shared CSA parameters apply to every row, whatever the order of the lines
    std::map<std::string, double> shared;
    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, line, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const LineParser p{line_no, key};
        if (value.empty()) throw ConfigError(line_no, key, "missing value");

        if (key == "models") {
            c.models.clear();
            for (const auto& w : split_words(value)) {
                if (w == "both") {
                    c.models = {ModelKind::Vasicek, ModelKind::Lhw};
                    continue;
                }
                c.models.push_back(p.parse_enum(w, parse_model_kind));
            }
        } else if (key == "directions") {
            c.directions.clear();
            for (const auto& w : split_words(value)) c.directions.push_back(p.parse_enum(w, parse_direction));
        } else if (key == "a") {
            c.vasicek.a = p.number(value);
        } else if (key == "k") {
            c.vasicek.k = p.number(value);
        } else if (key == "sigma") {
            c.vasicek.sigma = p.number(value);
        } else if (key == "r0") {
            c.vasicek.r0 = p.number(value);
        } else if (key == "alpha") {
            c.alpha = p.number(value);
        } else if (key == "varsigma") {
            if (value == "calibrate")
                c.varsigma.reset();
            else
                c.varsigma = p.number(value);
        } else if (key == "varsigma_bounds") {
            const auto w = split_words(value);
            if (w.size() != 2) throw ConfigError(line_no, key, "expected two numbers");
            c.bounds.lower = p.number(w[0]);
            c.bounds.upper = p.number(w[1]);
        } else if (key == "swap_start") {
            c.swap_start = p.number(value);
        } else if (key == "swap_end") {
            c.swap_end = p.number(value);
        } else if (key == "swap_tenor") {
            c.swap_tenor = p.number(value);
        } else if (key == "fixed_rate") {
            if (value == "par")
                c.fixed_rate.reset();
            else
                c.fixed_rate = p.number(value);
        } else if (key == "notional") {
            if (value == "normalized")
                c.notional.reset();
            else
                c.notional = p.number(value);
        } else if (key == "fixed_leg_target") {
            c.fixed_leg_target = p.number(value);
        } else if (key == "cap_resets") {
            const auto w = split_words(value);
            if (w.size() != 2) throw ConfigError(line_no, key, "expected first and last reset");
            c.cap_first_reset = p.number(w[0]);
            c.cap_last_reset = p.number(w[1]);
        } else if (key == "horizon") {
            c.grid.horizon = p.number(value);
        } else if (key == "steps") {
            c.grid.steps = p.integer(value);
        } else if (key == "paths") {
            c.paths = p.integer(value);
        } else if (key == "seed") {
            c.seed = p.integer(value);
        } else if (key == "neighbours") {
            c.neighbours = p.integer(value);
        } else if (key == "output") {
            c.output_dir = value;
        } else if (key == "precision") {
            c.precision = static_cast<int>(p.integer(value));
        } else if (key == "sample_paths") {
            c.sample_paths = p.integer(value);
        } else if (key == "dump_paths") {
            c.dump_paths = p.boolean(value);
        } else if (key == "gamma" || key == "p" || key == "p_bar" || key == "b_plus" || key == "b_minus" ||
                   key == "lambda_plus" || key == "lambda_bar") {
            shared[key] = p.number(value);
        } else if (key == "csa") {
            if (!csa_reset) {
                c.csas.clear();
                csa_reset = true;
            }
            if (value == "none") continue;
            const auto w = split_words(value);
            if (w.size() != 6)
                throw ConfigError(line_no, key,
                                  "expected 'id r_frak rho rho_bar close_out collateral', got " +
                                      std::to_string(w.size()) + " fields");
            CsaSpec s;
            s.id = w[0];
            s.r_frak = LineParser{line_no, lower_csa_field(1)}.number(w[1]);
            s.rho = LineParser{line_no, lower_csa_field(2)}.number(w[2]);
            s.rho_bar = LineParser{line_no, lower_csa_field(3)}.number(w[3]);
            s.close_out = LineParser{line_no, lower_csa_field(4)}.parse_enum(w[4], parse_close_out);
            s.collateral = LineParser{line_no, lower_csa_field(5)}.parse_enum(w[5], parse_collateral);
            try {
                s.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line_no, key, e.what());
            }
            c.csas.push_back(s);
        } else {
            throw ConfigError(line_no, key, "unknown key");
        }
    }
    for (CsaSpec& s : c.csas) {
        for (const auto& [key, v] : shared) {
            if (key == "gamma") s.gamma = v;
            if (key == "p") s.p = v;
            if (key == "p_bar") s.p_bar = v;
            if (key == "b_plus") s.b_plus = v;
            if (key == "b_minus") s.b_minus = v;
            if (key == "lambda_plus") s.lambda_plus = v;
            if (key == "lambda_bar") s.lambda_bar = v;
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw OutputError("cannot read config file " + file.string());
    return parse_config(in);
}

std::uint64_t model_seed(std::uint64_t seed, ModelKind model) {
    // splitmix64 finaliser keeps the two model streams unrelated
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(model) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string format_number(double value, int precision) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

MarketSetup resolve_market(const ExperimentConfig& config) {
    config.validate();
    MarketSetup m;
    const InitialCurve curve(config.vasicek);
    const SwapSpec schedule = SwapSpec::regular(config.swap_start, config.swap_end, config.swap_tenor, 0.0, 1.0);
    m.fixed_rate = config.fixed_rate ? *config.fixed_rate : swap_rate(schedule, curve);
    SwapSpec unit = schedule;
    unit.fixed_rate = m.fixed_rate;
    m.notional = config.notional ? *config.notional : config.fixed_leg_target / fixed_leg_value(unit, curve);
    unit.notional = m.notional;
    m.fixed_leg = fixed_leg_value(unit, curve);
    m.cap = CapSpec::regular(config.cap_first_reset, config.cap_last_reset, config.swap_tenor, m.fixed_rate,
                             m.notional);
    m.cap_vasicek = cap_vasicek(m.cap, config.vasicek);
    if (config.varsigma) {
        m.varsigma = *config.varsigma;
        LhwParams lp{config.alpha, m.varsigma, curve};
        m.cap_lhw = cap_lhw(m.cap, lp);
    } else {
        const auto cal = calibrate_varsigma(m.cap_vasicek, config.alpha, curve, m.cap, config.bounds);
        m.varsigma = cal.varsigma;
        m.cap_lhw = cal.model_price;
        m.calibrated = true;
    }
    return m;
}

namespace {

struct CaseResult {
    TvaRow row;
    TvaDecomposition decomposition;
    std::vector<double> theta_mean;
};

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw OutputError("cannot write " + file.string());
    return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& file) {
    out.close();
    if (!out) throw OutputError("failed writing " + file.string());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    report.market = resolve_market(config);
    const MarketSetup& mk = report.market;
    const InitialCurve curve(config.vasicek);
    const int prec = config.precision;
    const auto num = [prec](double v) { return format_number(v, prec); };

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw OutputError("cannot create " + config.output_dir.string() + ": " + ec.message());

    {
        const auto file = config.output_dir / "calibration.csv";
        auto out = open_output(file);
        out << "swap_rate,notional,fixed_leg,cap_vasicek,cap_lhw,varsigma,varsigma_source\n"
            << num(mk.fixed_rate) << ',' << num(mk.notional) << ',' << num(mk.fixed_leg) << ','
            << num(mk.cap_vasicek) << ',' << num(mk.cap_lhw) << ',' << num(mk.varsigma) << ','
            << (mk.calibrated ? "calibrated" : "fixed") << '\n';
        close_output(out, file);
        report.files.push_back(file);
    }

    const LhwParams lhw_params{config.alpha, mk.varsigma, curve};
    {
        const auto file = config.output_dir / "curve.csv";
        auto out = open_output(file);
        const LhwModel lhw(lhw_params);
        out << "time,zero_rate,forward,discount,kappa_lhw\n";
        for (std::size_t i = 0; i <= config.grid.steps; ++i) {
            const double t = config.grid.time(i);
            out << num(t) << ',' << num(t > 0 ? curve.zero_rate(t) : config.vasicek.r0) << ','
                << num(curve.forward(t)) << ',' << num(curve.discount(t)) << ',' << num(lhw.kappa(t)) << '\n';
        }
        close_output(out, file);
        report.files.push_back(file);
    }

    std::vector<ShortRateModel> models;
    for (ModelKind kind : config.models) {
        if (kind == ModelKind::Vasicek)
            models.emplace_back(VasicekModel(config.vasicek));
        else
            models.emplace_back(LhwModel(lhw_params));
    }

    const auto make_swap = [&](Direction d) {
        return SwapSpec::regular(config.swap_start, config.swap_end, config.swap_tenor, mk.fixed_rate, mk.notional, d);
    };

    std::vector<CaseResult> results;
    const auto tva_file = config.output_dir / "tva_table.csv";
    const auto profile_file = config.output_dir / "exposure_profiles.csv";
    const auto sample_file = config.output_dir / "paths_sample.csv";
    auto tva_out = open_output(tva_file);
    auto profile_out = open_output(profile_file);
    auto sample_out = open_output(sample_file);
    tva_out << "model,direction,csa_id,TVA,CVA,DVA,LVA,RC,ci_low,ci_high\n";
    profile_out << "model,direction,csa_id,term,time,value\n";
    sample_out << "model,path,step,time,rate,clean_price\n";
    std::ofstream dump_out;
    const auto dump_file = config.output_dir / "tva_paths.csv";
    if (config.dump_paths) {
        dump_out = open_output(dump_file);
        dump_out << "model,direction,csa_id,path,step,time,rate,clean_price,theta\n";
    }

    if (!config.csas.empty()) {
        for (const ShortRateModel& model : models) {
            const std::string model_name(model.name());
            const SwapSpec rec = make_swap(Direction::Receiver);
            const PathSet paths =
                record_fixings(simulate(model, config.grid, config.paths, model_seed(config.seed, model.kind())), rec, model);
            const Matrix receiver_prices = clean_price_matrix(paths, rec, model);

            const std::size_t n_sample = std::min(config.sample_paths, paths.paths());
            for (std::size_t j = 0; j < n_sample; ++j)
                for (std::size_t i = 0; i <= paths.steps(); ++i)
                    sample_out << model_name << ',' << j << ',' << i << ',' << num(paths.times[i]) << ','
                               << num(paths.rates(j, i)) << ',' << num(receiver_prices(j, i)) << '\n';

            for (Direction dir : config.directions) {
                Matrix prices = receiver_prices;
                if (dir == Direction::Payer)
                    for (std::size_t j = 0; j < prices.rows(); ++j)
                        for (double& v : prices.row(j)) v = -v;

                std::vector<CaseResult> cases(config.csas.size());
                std::vector<TvaSurface> surfaces(config.csas.size());
                parallel_for(
                    config.csas.size(),
                    [&](std::size_t c) {
                        const CsaSpec& csa = config.csas[c];
                        surfaces[c] = solve_tva_bsde(paths, prices, csa, config.neighbours);
                        CaseResult& r = cases[c];
                        r.decomposition = decompose_tva(paths, prices, surfaces[c], csa);
                        r.row.model = model.kind();
                        r.row.direction = dir;
                        r.row.csa_id = csa.id;
                        r.row.tva = surfaces[c].theta0;
                        r.row.cva = r.decomposition.cva;
                        r.row.dva = r.decomposition.dva;
                        r.row.lva = r.decomposition.lva;
                        r.row.rc = r.decomposition.rc;
                        if (linear_route(csa) != LinearRoute::None) {
                            const auto lin = linear_tva_mc(paths, prices, csa);
                            r.row.ci_low = lin.ci_low;
                            r.row.ci_high = lin.ci_high;
                        }
                        r.theta_mean.assign(paths.steps() + 1, 0.0);
                        for (std::size_t i = 0; i <= paths.steps(); ++i) {
                            double s = 0.0;
                            for (std::size_t j = 0; j < paths.paths(); ++j) s += surfaces[c].theta(j, i);
                            r.theta_mean[i] = s / static_cast<double>(paths.paths());
                        }
                    });

                const std::string dir_name(to_string(dir));
                for (std::size_t c = 0; c < cases.size(); ++c) {
                    const CaseResult& r = cases[c];
                    const std::string prefix = model_name + ',' + dir_name + ',' + r.row.csa_id + ',';
                    tva_out << prefix << num(r.row.tva) << ',' << num(r.row.cva) << ',' << num(r.row.dva) << ','
                            << num(r.row.lva) << ',' << num(r.row.rc) << ','
                            << (r.row.ci_low ? num(*r.row.ci_low) : "") << ','
                            << (r.row.ci_high ? num(*r.row.ci_high) : "") << '\n';
                    const auto& d = r.decomposition;
                    const std::pair<const char*, const std::vector<double>*> terms[] = {
                        {"TVA", &r.theta_mean},
                        {"CVA", &d.discounted.cva},      {"DVA", &d.discounted.dva},
                        {"LVA", &d.discounted.lva},      {"RC", &d.discounted.rc},
                        {"CVA_raw", &d.undiscounted.cva}, {"DVA_raw", &d.undiscounted.dva},
                        {"LVA_raw", &d.undiscounted.lva}, {"RC_raw", &d.undiscounted.rc},
                    };
                    for (const auto& [name, values] : terms)
                        for (std::size_t i = 0; i < values->size(); ++i)
                            profile_out << prefix << name << ',' << num(paths.times[i]) << ',' << num((*values)[i])
                                        << '\n';
                    if (config.dump_paths)
                        for (std::size_t j = 0; j < paths.paths(); ++j)
                            for (std::size_t i = 0; i <= paths.steps(); ++i)
                                dump_out << prefix << j << ',' << i << ',' << num(paths.times[i]) << ','
                                         << num(paths.rates(j, i)) << ',' << num(prices(j, i)) << ','
                                         << num(surfaces[c].theta(j, i)) << '\n';
                    report.rows.push_back(r.row);
                }
            }
        }
    }

    close_output(tva_out, tva_file);
    close_output(profile_out, profile_file);
    close_output(sample_out, sample_file);
    report.files.insert(report.files.end(), {tva_file, profile_file, sample_file});
    if (config.dump_paths) {
        close_output(dump_out, dump_file);
        report.files.push_back(dump_file);
    }
    return report;
}

}  // namespace tva
