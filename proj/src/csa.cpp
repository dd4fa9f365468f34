#include "tva/csa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tva {

namespace {
double pos(double x) { return std::max(x, 0.0); }
double neg(double x) { return std::max(-x, 0.0); }

void check_unit(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string("CSA: ") + name + " must lie in [0, 1]");
}
}  // namespace

std::string_view to_string(CloseOut c) { return c == CloseOut::Clean ? "clean" : "predefault"; }

std::string_view to_string(Collateral c) {
    switch (c) {
        case Collateral::None: return "none";
        case Collateral::ContinuousClean: return "clean";
        case Collateral::ContinuousPreDefault: return "predefault";
    }
    return "none";
}

CloseOut parse_close_out(std::string_view text) {
    if (text == "clean") return CloseOut::Clean;
    if (text == "predefault") return CloseOut::PreDefault;
    throw std::invalid_argument("unknown close-out '" + std::string(text) + "' (expected clean or predefault)");
}

Collateral parse_collateral(std::string_view text) {
    if (text == "none") return Collateral::None;
    if (text == "clean") return Collateral::ContinuousClean;
    if (text == "predefault") return Collateral::ContinuousPreDefault;
    throw std::invalid_argument("unknown collateral '" + std::string(text) +
                                "' (expected none, clean or predefault)");
}

void CsaSpec::validate() const {
    check_unit(p, "p");
    check_unit(p_bar, "p_bar");
    check_unit(rho, "rho");
    check_unit(rho_bar, "rho_bar");
    check_unit(r_frak, "r_frak");
    if (!(gamma >= 0.0)) throw std::invalid_argument("CSA: gamma must be >= 0");
    for (double x : {b_plus, b_minus, lambda_plus, lambda_bar})
        if (!std::isfinite(x)) throw std::invalid_argument("CSA: bases must be finite");
    if (collateral == Collateral::ContinuousClean && close_out != CloseOut::Clean)
        throw std::invalid_argument("CSA: collateral at the clean value requires a clean close-out");
    if (collateral == Collateral::ContinuousPreDefault && close_out != CloseOut::PreDefault)
        throw std::invalid_argument("CSA: collateral at the pre-default value requires a pre-default close-out");
}

TvaTerms tva_terms(const CsaSpec& c, double P, double Q, double Gamma, double theta) {
    const double exposure = Q - Gamma;
    const double funding = P - theta - Gamma;
    TvaTerms t;
    t.cva = -c.gamma * c.p_bar * (1.0 - c.rho_bar) * neg(exposure);
    t.dva = c.gamma * c.p * (1.0 - c.rho) * pos(exposure);
    t.lva = c.b_plus * pos(Gamma) - c.b_minus * neg(Gamma) + c.lambda_plus * pos(funding) -
            c.lambda_tilde() * neg(funding);
    t.rc = c.gamma * (P - theta - Q);
    return t;
}

double close_out_value(const CsaSpec& c, double P, double theta) {
    return c.close_out == CloseOut::Clean ? P : P - theta;
}

double collateral_value(const CsaSpec& c, double P, double theta) {
    switch (c.collateral) {
        case Collateral::None: return 0.0;
        case Collateral::ContinuousClean: return P;
        case Collateral::ContinuousPreDefault: return P - theta;
    }
    return 0.0;
}

TvaTerms tva_terms(const CsaSpec& c, double P, double theta) {
    return tva_terms(c, P, close_out_value(c, P, theta), collateral_value(c, P, theta), theta);
}

double tva_coefficient(const CsaSpec& c, double r, double P, double theta) {
    return tva_terms(c, P, theta).sum() - r * theta;
}

LinearRoute linear_route(const CsaSpec& c) {
    if (c.close_out == CloseOut::Clean && c.collateral != Collateral::ContinuousPreDefault &&
        std::abs(c.lambda_plus - c.lambda_tilde()) <= 1e-12)
        return LinearRoute::EqualLendingBorrowing;
    if (c.collateral == Collateral::ContinuousPreDefault && std::abs(c.b_plus - c.b_minus) <= 1e-12)
        return LinearRoute::EqualCollateralBasis;
    return LinearRoute::None;
}

LinearCoefficient linear_coefficient(const CsaSpec& c, double P) {
    switch (linear_route(c)) {
        case LinearRoute::EqualLendingBorrowing: {
            const double lambda = c.lambda_plus;
            const double Gamma = collateral_value(c, P, 0.0);
            const double residual = P - Gamma;
            LinearCoefficient out;
            out.spread = c.gamma + lambda;
            out.value = -(c.gamma * c.p_bar * (1.0 - c.rho_bar) + lambda) * neg(residual) +
                        (c.gamma * c.p * (1.0 - c.rho) + lambda) * pos(residual) +
                        c.b_plus * pos(Gamma) - c.b_minus * neg(Gamma);
            return out;
        }
        case LinearRoute::EqualCollateralBasis:
            return {c.b_plus, c.b_plus * P};
        case LinearRoute::None:
            break;
    }
    throw std::invalid_argument("CSA " + c.id + " has no linear TVA representation");
}

}  // namespace tva
