#include "tva/swap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tva {

std::string_view to_string(Direction d) { return d == Direction::Receiver ? "receiver" : "payer"; }

Direction parse_direction(std::string_view text) {
    if (text == "receiver") return Direction::Receiver;
    if (text == "payer") return Direction::Payer;
    throw std::invalid_argument("unknown direction '" + std::string(text) + "' (expected receiver or payer)");
}

void SwapSpec::validate() const {
    if (payment_dates.empty()) throw std::invalid_argument("swap: no payment dates");
    double previous = start;
    for (double d : payment_dates) {
        if (!(d > previous)) throw std::invalid_argument("swap: dates must be strictly increasing");
        previous = d;
    }
    if (start < 0.0) throw std::invalid_argument("swap: inception must be >= 0");
    if (!std::isfinite(fixed_rate) || !std::isfinite(notional))
        throw std::invalid_argument("swap: fixed rate and notional must be finite");
}

SwapSpec SwapSpec::regular(double start, double end, double tenor, double fixed_rate,
                           double notional, Direction direction) {
    if (!(tenor > 0.0) || !(end > start)) throw std::invalid_argument("swap: bad regular schedule");
    SwapSpec s;
    s.start = start;
    const auto periods = static_cast<std::size_t>(std::llround((end - start) / tenor));
    if (periods == 0 || std::abs(start + static_cast<double>(periods) * tenor - end) > 1e-9)
        throw std::invalid_argument("swap: tenor does not divide the swap length");
    for (std::size_t k = 1; k <= periods; ++k) s.payment_dates.push_back(start + static_cast<double>(k) * tenor);
    s.fixed_rate = fixed_rate;
    s.notional = notional;
    s.direction = direction;
    return s;
}

}  // namespace tva
