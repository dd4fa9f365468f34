#include "tva/short_rate_model.hpp"

#include <stdexcept>
#include <string>

namespace tva {

std::string_view to_string(ModelKind kind) {
    return kind == ModelKind::Vasicek ? "vasicek" : "lhw";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "vasicek") return ModelKind::Vasicek;
    if (text == "lhw") return ModelKind::Lhw;
    throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected vasicek or lhw)");
}

ModelKind ShortRateModel::kind() const {
    return std::holds_alternative<VasicekModel>(impl_) ? ModelKind::Vasicek : ModelKind::Lhw;
}

AffineCoefficients ShortRateModel::coefficients(double t, double T) const {
    return std::visit([&](const auto& m) { return m.coefficients(t, T); }, impl_);
}

const InitialCurve& ShortRateModel::curve() const {
    return std::visit([](const auto& m) -> const InitialCurve& { return m.curve(); }, impl_);
}

}  // namespace tva
