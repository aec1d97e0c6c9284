#pragma once

#include <cmath>

namespace bai {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599344;
inline constexpr double kInvSqrt2 = 0.7071067811865475244008443621048;

// Density of N(m, sd^2) at x.
inline double norm_pdf(double x, double m, double sd) {
    const double z = (x - m) / sd;
    return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

// CDF of N(m, sd^2) at x; erfc keeps the left tail accurate.
inline double norm_cdf(double x, double m, double sd) {
    const double z = (x - m) / sd;
    return 0.5 * std::erfc(-z * kInvSqrt2);
}

}  // namespace bai
