#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "oracles.hpp"
#include "tva/curve.hpp"
#include "tva/levy_hull_white.hpp"
#include "tva/quadrature.hpp"
#include "tva/short_rate_model.hpp"
#include "tva/vasicek.hpp"

using namespace tva;

TEST_CASE("initial curve: discount at zero and unit conventions") {
    const InitialCurve c{VasicekParams{}};
    CHECK(c.discount(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.forward(0.0) == doctest::Approx(0.02).epsilon(1e-15));
    for (double T : {0.5, 1.0, 5.0, 10.0, 30.0})
        CHECK(c.zero_rate(T) * T == doctest::Approx(-std::log(c.discount(T))).epsilon(1e-13));
}

TEST_CASE("initial curve: discount equals exp of minus the integrated forward") {
    const InitialCurve c{VasicekParams{}};
    for (double T : {1.0, 3.0, 7.5, 10.0, 20.0}) {
        const double integral = oracle::simpson([&](double s) { return c.forward(s); }, 0.0, T);
        CHECK(c.discount(T) == doctest::Approx(std::exp(-integral)).epsilon(1e-10));
    }
}

TEST_CASE("initial curve: forward slope matches finite differences") {
    const InitialCurve c{VasicekParams{}};
    for (double T : {0.1, 1.0, 4.0, 9.0}) {
        const double fd = oracle::central_difference([&](double s) { return c.forward(s); }, T);
        CHECK(c.forward_slope(T) == doctest::Approx(fd).epsilon(1e-7));
        const double fd_log = -oracle::central_difference([&](double s) { return std::log(c.discount(s)); }, T);
        CHECK(c.forward(T) == doctest::Approx(fd_log).epsilon(1e-8));
    }
}

TEST_CASE("initial curve: long end tends to the long rate") {
    const VasicekParams p;
    const InitialCurve c{p};
    CHECK(p.long_rate() == doctest::Approx(0.05 - 0.004 * 0.004 / (2 * 0.25 * 0.25)));
    CHECK(c.zero_rate(2000.0) == doctest::Approx(p.long_rate()).epsilon(2e-3));
}

TEST_CASE("vasicek parameters are validated") {
    VasicekParams p;
    p.a = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = VasicekParams{};
    p.sigma = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("vasicek bond agrees with the textbook affine formula") {
    const VasicekParams p;
    const VasicekModel m(p);
    for (double t : {0.0, 1.0, 4.5})
        for (double tau : {0.25, 1.0, 5.0})
            for (double r : {-0.01, 0.02, 0.07})
                CHECK(m.bond(t, t + tau, r) ==
                      doctest::Approx(oracle::vasicek_bond(tau, r, p.a, p.k, p.sigma)).epsilon(1e-13));
}

TEST_CASE("vasicek bond fits the initial curve and has unit value at maturity") {
    const VasicekModel m{VasicekParams{}};
    for (double T : {0.5, 2.0, 10.0}) {
        CHECK(m.bond(0.0, T, 0.02) == doctest::Approx(m.curve().discount(T)).epsilon(1e-14));
        CHECK(m.bond(T, T, 0.3) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(m.coefficients(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("IG cumulant: values, derivative and domain") {
    const double vs = 17.570728;
    CHECK(ig_cumulant(0.0, vs) == 0.0);
    CHECK(ig_cumulant_derivative(0.0, vs) == doctest::Approx(1.0 / vs));
    for (double z : {-50.0, -1.0, -1e-8, 1e-8, 3.0, 100.0}) {
        CHECK(ig_cumulant(z, vs) == doctest::Approx(vs * (1.0 - std::sqrt(1.0 - 2.0 * z / (vs * vs)))).epsilon(1e-12));
        const double fd = oracle::central_difference([&](double x) { return ig_cumulant(x, vs); }, z, 1e-6);
        CHECK(ig_cumulant_derivative(z, vs) == doctest::Approx(fd).epsilon(1e-6));
        CHECK(ig_cumulant(std::complex<double>(z, 0.0), vs).real() == doctest::Approx(ig_cumulant(z, vs)).epsilon(1e-14));
    }
    // small arguments: psi(z) ~ z / vs without cancellation
    CHECK(ig_cumulant(1e-14, vs) == doctest::Approx(1e-14 / vs).epsilon(1e-10));
    CHECK(ig_cumulant(0.5 * vs * vs, vs) == doctest::Approx(vs));
    CHECK_THROWS_AS(ig_cumulant(0.5 * vs * vs + 1e-6, vs), std::domain_error);
    CHECK_THROWS_AS(ig_cumulant(std::complex<double>(0.6 * vs * vs, 1.0), vs), std::domain_error);
}

TEST_CASE("IG cumulant equals the log-MGF of IG(h/vs, h^2) per unit time") {
    // IG(mu, lambda) has log E[e^{zX}] = lambda/mu (1 - sqrt(1 - 2 mu^2 z / lambda))
    const double vs = 17.570728;
    for (double h : {0.05, 1.0}) {
        const double mu = h / vs;
        const double lambda = h * h;
        for (double z : {-20.0, -0.5, 0.7, 40.0}) {
            const double log_mgf = lambda / mu * (1.0 - std::sqrt(1.0 - 2.0 * mu * mu * z / lambda));
            CHECK(h * ig_cumulant(z, vs) == doctest::Approx(log_mgf).epsilon(1e-12));
        }
    }
}

TEST_CASE("IG cumulant on the complex plane is analytic") {
    const double vs = 10.0;
    const std::complex<double> z(-3.0, 4.0);
    const std::complex<double> d(0.0, 1e-6);
    const auto deriv_im = (ig_cumulant(z + d, vs) - ig_cumulant(z - d, vs)) / (2.0 * d);
    const auto deriv_re = (ig_cumulant(z + 1e-6, vs) - ig_cumulant(z - 1e-6, vs)) / 2e-6;
    CHECK(std::abs(deriv_im - deriv_re) < 1e-7);
}

TEST_CASE("LHW bond fits the initial curve to 1e-6") {
    const LhwModel m{LhwParams{}};
    for (double T : {0.25, 1.0, 2.0, 5.0, 7.0, 10.0, 15.0})
        CHECK(std::abs(m.bond(0.0, T, 0.02) - m.curve().discount(T)) <= 1e-6);
}

TEST_CASE("LHW coefficients: maturity limit, n, and quadrature convergence") {
    const LhwModel m{LhwParams{}};
    const double alpha = 0.25;
    CHECK(m.bond(3.0, 3.0, 0.04) == doctest::Approx(1.0).epsilon(1e-12));
    const auto c = m.coefficients(2.0, 5.0);
    CHECK(c.n == doctest::Approx(-(1.0 - std::exp(-alpha * 3.0)) / alpha));
    const auto fine = m.coefficients(2.0, 5.0, GaussLegendre(128));
    CHECK(c.m == doctest::Approx(fine.m).epsilon(1e-13));
    CHECK(m.integrated_vol(1.0, 1.0) == 0.0);
    CHECK(m.integrated_vol(0.0, 4.0) == doctest::Approx((1.0 - std::exp(-1.0)) / alpha));
}

TEST_CASE("LHW m coefficient agrees with an independent Simpson evaluation") {
    const LhwParams p;
    const LhwModel m(p);
    const double alpha = p.alpha;
    const double vs = p.varsigma;
    const auto psi = [&](double z) { return vs * (1.0 - std::sqrt(1.0 - 2.0 * z / (vs * vs))); };
    const auto Sigma = [&](double s, double t) { return (1.0 - std::exp(-alpha * (t - s))) / alpha; };
    const double t = 3.0;
    const double T = 8.0;
    const double n = -Sigma(t, T);
    const double conv = oracle::simpson([&](double s) { return psi(-Sigma(s, T)) - psi(-Sigma(s, t)); }, 0.0, t);
    const double expected = std::log(p.curve.discount(T) / p.curve.discount(t)) -
                            n * (p.curve.forward(t) + psi(-Sigma(0.0, t))) - conv;
    CHECK(m.coefficients(t, T).m == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("LHW kappa: value at zero and large-varsigma limit") {
    const LhwParams p;
    const LhwModel m(p);
    const auto& c = p.curve;
    CHECK(m.kappa(0.0) == doctest::Approx(c.forward(0.0) + c.forward_slope(0.0) / p.alpha - 1.0 / (p.varsigma * p.alpha)));
    // as varsigma grows the jumps vanish and kappa reduces to f + f'/alpha
    LhwParams big = p;
    big.varsigma = 1e7;
    const LhwModel limit(big);
    for (double t : {0.0, 2.0, 8.0})
        CHECK(limit.kappa(t) == doctest::Approx(c.forward(t) + c.forward_slope(t) / p.alpha).epsilon(1e-6));
}

TEST_CASE("LHW parameters are validated") {
    LhwParams p;
    p.varsigma = 0.0;
    CHECK_THROWS_AS(LhwModel{p}, std::invalid_argument);
    p = LhwParams{};
    p.alpha = -1.0;
    CHECK_THROWS_AS(LhwModel{p}, std::invalid_argument);
}

TEST_CASE("short-rate model wrapper dispatches by kind") {
    const ShortRateModel v{VasicekModel{VasicekParams{}}};
    const ShortRateModel l{LhwModel{LhwParams{}}};
    CHECK(v.kind() == ModelKind::Vasicek);
    CHECK(l.kind() == ModelKind::Lhw);
    CHECK(v.name() == "vasicek");
    CHECK(l.name() == "lhw");
    CHECK(parse_model_kind("lhw") == ModelKind::Lhw);
    CHECK_THROWS_AS(parse_model_kind("cir"), std::invalid_argument);
    CHECK(v.initial_rate() == 0.02);
    CHECK(v.bond(1.0, 4.0, 0.03) == doctest::Approx(v.vasicek()->bond(1.0, 4.0, 0.03)));
    CHECK(l.lhw() != nullptr);
    CHECK(v.lhw() == nullptr);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    const GaussLegendre rule(8);
    double sum_w = 0.0;
    for (double w : rule.weights()) sum_w += w;
    CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
    // degree 15 is exact for 8 nodes
    const double v = integrate([](double x) { return std::pow(x, 15) + 3.0 * std::pow(x, 14); }, 0.0, 2.0, rule, 10.0);
    CHECK(v == doctest::Approx(std::pow(2.0, 16) / 16.0 + 3.0 * std::pow(2.0, 15) / 15.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 3.0) == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-14));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}
