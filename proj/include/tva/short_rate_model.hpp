#pragma once

#include <string_view>
#include <variant>

#include "tva/levy_hull_white.hpp"
#include "tva/vasicek.hpp"

namespace tva {

enum class ModelKind { Vasicek, Lhw };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

/// Either of the two affine short-rate models, with a common bond-pricing surface.
class ShortRateModel {
public:
    ShortRateModel(VasicekModel model) : impl_(std::move(model)) {}
    ShortRateModel(LhwModel model) : impl_(std::move(model)) {}

    ModelKind kind() const;
    std::string_view name() const { return to_string(kind()); }

    AffineCoefficients coefficients(double t, double T) const;
    double bond(double t, double T, double r) const { return coefficients(t, T).bond(r); }
    const InitialCurve& curve() const;
    double initial_rate() const { return curve().params().r0; }

    const VasicekModel* vasicek() const { return std::get_if<VasicekModel>(&impl_); }
    const LhwModel* lhw() const { return std::get_if<LhwModel>(&impl_); }

private:
    std::variant<VasicekModel, LhwModel> impl_;
};

}  // namespace tva
