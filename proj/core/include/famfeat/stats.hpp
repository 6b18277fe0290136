#pragma once

#include <span>

namespace famfeat {

double mean(std::span<const double> x);

/// Population variance (divides by n).
double variance(std::span<const double> x);

/// Pearson correlation. Throws UndefinedError when either input is constant
/// and ParameterError on a length mismatch.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace famfeat
