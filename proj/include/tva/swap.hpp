#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace tva {

enum class Direction { Receiver, Payer };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

/// Fixed-for-floating swap. Receiver: the bank pays floating and receives fixed.
struct SwapSpec {
    double start = 0.0;                 ///< inception T0
    std::vector<double> payment_dates;  ///< T1 < ... < Tn
    double fixed_rate = 0.0;            ///< K
    double notional = 1.0;              ///< N
    Direction direction = Direction::Receiver;

    /// Throws std::invalid_argument unless T0 < T1 < ... < Tn.
    void validate() const;

    std::size_t periods() const { return payment_dates.size(); }
    double maturity() const { return payment_dates.back(); }
    /// T_{k-1} for k = 1..n, i.e. reset dates T0..T_{n-1}.
    double reset_date(std::size_t k) const { return k == 0 ? start : payment_dates[k - 1]; }
    /// delta_{k-1} = T_k - T_{k-1}, k = 1..n (index k-1).
    double accrual(std::size_t k) const { return payment_dates[k - 1] - reset_date(k - 1); }
    /// Sign applied to the receiver clean price.
    double sign() const { return direction == Direction::Receiver ? 1.0 : -1.0; }

    /// Regular schedule with payments every `tenor` years from start + tenor to end.
    static SwapSpec regular(double start, double end, double tenor, double fixed_rate,
                            double notional, Direction direction = Direction::Receiver);
};

}  // namespace tva
