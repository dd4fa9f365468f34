#pragma once

#include <string>
#include <string_view>

namespace tva {

/// Close-out valuation at default: clean (Q = P) or pre-default (Q = P - Theta).
enum class CloseOut { Clean, PreDefault };

/// Collateral: none, continuous at the clean value (Gamma = Q = P), or continuous at
/// the pre-default value (Gamma = Q = P - Theta).
enum class Collateral { None, ContinuousClean, ContinuousPreDefault };

std::string_view to_string(CloseOut c);
std::string_view to_string(Collateral c);
CloseOut parse_close_out(std::string_view text);
Collateral parse_collateral(std::string_view text);

struct CsaSpec {
    std::string id = "1";
    double gamma = 0.10;        ///< first-to-default intensity
    double p = 0.5;             ///< P(first default is the bank)
    double p_bar = 0.7;         ///< P(first default is the counterparty)
    double rho = 0.4;           ///< recovery of the counterparty on bank default
    double rho_bar = 0.4;       ///< recovery of the bank on counterparty default
    double r_frak = 0.4;        ///< recovery of the funder
    double b_plus = 0.015;      ///< collateral basis (posted collateral, Gamma > 0)
    double b_minus = 0.015;     ///< collateral basis (Gamma < 0)
    double lambda_plus = 0.015; ///< external lending basis
    double lambda_bar = 0.045;  ///< external borrowing basis
    CloseOut close_out = CloseOut::Clean;
    Collateral collateral = Collateral::None;

    /// Throws std::invalid_argument on out-of-range probabilities or recoveries, or an
    /// inconsistent close-out/collateral pair.
    void validate() const;

    /// Borrowing basis net of the credit spread, lambda_bar - gamma p (1 - r_frak).
    double lambda_tilde() const { return lambda_bar - gamma * p * (1.0 - r_frak); }
};

/// The four lines of the pre-default TVA coefficient at one node, with theta the
/// candidate TVA. Their sum minus r * theta is the BSDE driver.
struct TvaTerms {
    double cva = 0.0;  ///< -gamma p_bar (1 - rho_bar) (Q - Gamma)^-
    double dva = 0.0;  ///< gamma p (1 - rho) (Q - Gamma)^+
    double lva = 0.0;  ///< b+ Gamma^+ - b- Gamma^- + lambda+ (P - theta - Gamma)^+ - lambda~ (P - theta - Gamma)^-
    double rc = 0.0;   ///< gamma (P - theta - Q)

    double sum() const { return cva + dva + lva + rc; }
};

/// Terms for explicit close-out value Q and collateral Gamma.
TvaTerms tva_terms(const CsaSpec& csa, double P, double Q, double Gamma, double theta);

/// Terms with Q and Gamma resolved from the CSA conventions.
TvaTerms tva_terms(const CsaSpec& csa, double P, double theta);

/// Close-out value and collateral implied by the CSA at (P, theta).
double close_out_value(const CsaSpec& csa, double P, double theta);
double collateral_value(const CsaSpec& csa, double P, double theta);

/// BSDE driver g^(t, r, theta) = sum of the four terms - r theta.
double tva_coefficient(const CsaSpec& csa, double r, double P, double theta);

/// Which closed-form linear representation applies to a CSA, if any.
enum class LinearRoute {
    None,
    EqualLendingBorrowing,  ///< lambda+ = lambda~ with exogenous residual exposure, discount r + gamma + lambda
    EqualCollateralBasis,   ///< b+ = b- with Gamma = Q = P - Theta, discount r + b
};

LinearRoute linear_route(const CsaSpec& csa);

/// Driver of the linear representation (independent of theta) and its extra discount
/// spread over r. Throws std::invalid_argument if the CSA has no linear route.
struct LinearCoefficient {
    double spread = 0.0;
    double value = 0.0;
};
LinearCoefficient linear_coefficient(const CsaSpec& csa, double P);

}  // namespace tva
