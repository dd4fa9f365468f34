#pragma once

// Independent reference computations shared by the test binaries.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson rule with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals = 2000) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return s * h / 3.0;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

struct Sample {
    double mean = 0.0;
    double std_error = 0.0;
    double variance = 0.0;
};

inline Sample summarize(const std::vector<double>& x) {
    Sample s;
    const double n = static_cast<double>(x.size());
    for (double v : x) s.mean += v;
    s.mean /= n;
    for (double v : x) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= n - 1.0;
    s.std_error = std::sqrt(s.variance / n);
    return s;
}

// Vasicek zero bond from the textbook formula B = A exp(-B r) in Brigo-Mercurio notation.
inline double vasicek_bond(double tau, double r, double a, double k, double sigma) {
    const double B = (1.0 - std::exp(-a * tau)) / a;
    const double logA = (k - sigma * sigma / (2.0 * a * a)) * (B - tau) - sigma * sigma * B * B / (4.0 * a);
    return std::exp(logA - B * r);
}

// Exact OU moments.
inline double ou_mean(double t, double r0, double a, double k) { return k + (r0 - k) * std::exp(-a * t); }
inline double ou_variance(double t, double a, double sigma) {
    return sigma * sigma / (2.0 * a) * (1.0 - std::exp(-2.0 * a * t));
}

}  // namespace oracle
