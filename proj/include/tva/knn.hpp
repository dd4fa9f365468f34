#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tva {

/// One-dimensional q-nearest-neighbour regression evaluated at the sample points.
///
/// out[j] is the mean of y over the q points closest to x[j], j itself included.
/// Candidates are ranked by distance, then by distance in the stable sort order of
/// x, then by lower position, so neighbourhoods are contiguous windows of the sorted
/// sample and ties split evenly around j. Runs in O(m log m).
class KnnRegressor {
public:
    explicit KnnRegressor(std::size_t neighbours) : q_(neighbours) {}

    std::vector<double> operator()(std::span<const double> x, std::span<const double> y);

private:
    std::size_t q_;
    std::vector<std::size_t> order_;
    std::vector<double> sorted_x_;
    std::vector<double> prefix_;
};

std::vector<double> knn_regress(std::span<const double> x, std::span<const double> y, std::size_t q);

}  // namespace tva
