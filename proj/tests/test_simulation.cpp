#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "tva/levy_hull_white.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/simulation.hpp"
#include "tva/swap.hpp"

using namespace tva;

namespace {

// Trapezoidal integral of r along path j up to step i.
double trapezoid(const PathSet& p, std::size_t j, std::size_t i) {
    double s = 0.0;
    for (std::size_t k = 0; k < i; ++k) s += 0.5 * p.step() * (p.rates(j, k) + p.rates(j, k + 1));
    return s;
}

}  // namespace

TEST_CASE("grid: step, times and date lookup") {
    const GridSpec g{10.0, 200};
    CHECK(g.step() == doctest::Approx(0.05));
    CHECK(g.time(200) == 10.0);
    CHECK(g.index_of(3.0).value() == 60);
    CHECK(g.index_of(0.0).value() == 0);
    CHECK_FALSE(g.index_of(3.01).has_value());
    CHECK_FALSE(g.index_of(10.05).has_value());
    CHECK_THROWS_AS((GridSpec{10.0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{-1.0, 10}.validate()), std::invalid_argument);
}

TEST_CASE("streams: deterministic per (seed, stream) and distinct across streams") {
    Rng a = make_stream(42, 7);
    Rng b = make_stream(42, 7);
    Rng c = make_stream(42, 8);
    Rng d = make_stream(43, 7);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
}

TEST_CASE("IG increments: moments within 3 standard errors") {
    const double vs = 17.570728;
    const double h = 0.05;
    IgSampler ig(h, vs);
    CHECK(ig.mean() == doctest::Approx(h / vs));
    CHECK(ig.shape() == doctest::Approx(h * h));
    Rng rng = make_stream(1, 0);
    const std::size_t n = 400000;
    std::vector<double> x(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = ig(rng);
        REQUIRE(x[i] > 0.0);
        sq[i] = (x[i] - h / vs) * (x[i] - h / vs);
    }
    const auto m = oracle::summarize(x);
    CHECK(std::abs(m.mean - h / vs) <= 3.0 * m.std_error);
    // IG(mu, lambda) variance mu^3 / lambda = h / vs^3
    const auto v = oracle::summarize(sq);
    CHECK(std::abs(v.mean - h / (vs * vs * vs)) <= 3.0 * v.std_error);
}

TEST_CASE("IG increments: moment generating function within 3 standard errors") {
    const double vs = 17.570728;
    const double h = 0.05;
    for (double z : {-40.0, -5.0, 5.0, 30.0}) {
        IgSampler ig(h, vs);
        Rng rng = make_stream(2, static_cast<std::uint64_t>(z + 100));
        std::vector<double> e(200000);
        for (double& v : e) v = std::exp(z * ig(rng));
        const auto s = oracle::summarize(e);
        const double exact = std::exp(h * ig_cumulant(z, vs));
        CHECK(std::abs(s.mean - exact) <= 3.0 * s.std_error);
    }
}

TEST_CASE("IG sampler rejects bad parameters") {
    CHECK_THROWS_AS(IgSampler(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(IgSampler(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("vasicek Euler paths: OU moments at several horizons") {
    const VasicekParams p;
    const auto paths = simulate_vasicek(p, GridSpec{10.0, 200}, 20000, 11);
    for (std::size_t i : {20u, 100u, 200u}) {
        const double t = paths.times[i];
        const auto s = oracle::summarize(paths.rates.column(i));
        CHECK(std::abs(s.mean - oracle::ou_mean(t, p.r0, p.a, p.k)) <= 3.0 * s.std_error);
        CHECK(s.variance == doctest::Approx(oracle::ou_variance(t, p.a, p.sigma)).epsilon(0.05));
    }
}

TEST_CASE("simulated paths: layout, r0 column and left-endpoint integral") {
    const auto paths = simulate_vasicek(VasicekParams{}, GridSpec{2.0, 40}, 5, 3);
    CHECK(paths.paths() == 5);
    CHECK(paths.steps() == 40);
    CHECK(paths.rates.cols() == 41);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(paths.rates(j, 0) == 0.02);
        CHECK(paths.integrated_rate(j, 0) == 0.0);
        double s = 0.0;
        for (std::size_t i = 0; i < 40; ++i) s += 0.05 * paths.rates(j, i);
        CHECK(paths.integrated_rate(j, 40) == doctest::Approx(s).epsilon(1e-13));
        CHECK(paths.discount(j, 40, 0.01) == doctest::Approx(std::exp(-s - 0.01 * 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("scheme discount skips the initial step") {
    const auto paths = simulate_vasicek(VasicekParams{}, GridSpec{1.0, 10}, 3, 5);
    const double h = 0.1;
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(paths.scheme_discount(j, 0) == 1.0);
        CHECK(paths.scheme_discount(j, 1, 0.5) == 1.0);
        for (std::size_t i = 2; i <= 10; ++i) {
            double s = 0.0;
            for (std::size_t k = 1; k < i; ++k) s += h * (paths.rates(j, k) + 0.03);
            CHECK(paths.scheme_discount(j, i, 0.03) == doctest::Approx(std::exp(-s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("path j does not depend on the number of paths") {
    const auto small = simulate_lhw(LhwParams{}, GridSpec{1.0, 20}, 3, 99);
    const auto large = simulate_lhw(LhwParams{}, GridSpec{1.0, 20}, 50, 99);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i <= 20; ++i) CHECK(small.rates(j, i) == large.rates(j, i));
    const auto again = simulate_lhw(LhwParams{}, GridSpec{1.0, 20}, 50, 99);
    CHECK(again.rates == large.rates);
}

TEST_CASE("LHW paths: discount factors fit the initial curve") {
    const LhwParams p;
    const auto paths = simulate_lhw(p, GridSpec{5.0, 500}, 20000, 21);
    for (std::size_t i : {100u, 300u, 500u}) {
        std::vector<double> d(paths.paths());
        for (std::size_t j = 0; j < paths.paths(); ++j) d[j] = std::exp(-trapezoid(paths, j, i));
        const auto s = oracle::summarize(d);
        CHECK(std::abs(s.mean - p.curve.discount(paths.times[i])) <= 3.0 * s.std_error);
    }
}

TEST_CASE("discounted bond prices are martingales in both models") {
    const ShortRateModel models[] = {ShortRateModel(VasicekModel(VasicekParams{})), ShortRateModel(LhwModel(LhwParams{}))};
    for (const auto& model : models) {
        const auto paths = simulate(model, GridSpec{3.0, 300}, 20000, 8);
        std::vector<double> v(paths.paths());
        for (std::size_t j = 0; j < paths.paths(); ++j)
            v[j] = std::exp(-trapezoid(paths, j, 300)) * model.bond(3.0, 8.0, paths.rates(j, 300));
        const auto s = oracle::summarize(v);
        CHECK(std::abs(s.mean - model.curve().discount(8.0)) <= 3.0 * s.std_error);
    }
}

TEST_CASE("fixings: stored as 1/B(T_{k-1}, T_k) at the reset rate") {
    const ShortRateModel model{VasicekModel{VasicekParams{}}};
    const auto swap = SwapSpec::regular(0.0, 3.0, 1.0, 0.03, 1.0);
    const auto paths = record_fixings(simulate(model, GridSpec{3.0, 60}, 4, 1), swap, model);
    REQUIRE(paths.fixings.cols() == 3);
    CHECK(paths.reset_steps == std::vector<std::size_t>{0, 20, 40});
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(paths.fixings(j, k) ==
                  doctest::Approx(1.0 / model.bond(double(k), double(k + 1), paths.rates(j, 20 * k))).epsilon(1e-14));
    CHECK_THROWS_AS(record_fixings(simulate(model, GridSpec{3.0, 7}, 2, 1), swap, model), std::invalid_argument);
}

TEST_CASE("path CSV has a fixed header and one row per node") {
    const auto paths = simulate_vasicek(VasicekParams{}, GridSpec{1.0, 4}, 3, 1);
    std::ostringstream out;
    write_paths_csv(out, paths, 2);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "path,step,time,rate");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2 * 5);
}
