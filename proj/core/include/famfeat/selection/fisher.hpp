#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "famfeat/selection/feature_matrix.hpp"

namespace famfeat {

/// Denominator of the Fisher discriminant ratio: (var1 + var2)^2 or var1 + var2.
enum class FdrDenominator { squared, linear };

/// (m1 - m2)^2 / denominator. A zero denominator yields +inf when the means
/// differ and 0 otherwise.
double fisher_discriminant_ratio(double m1, double m2, double var1, double var2,
                                 FdrDenominator mode = FdrDenominator::squared);

/// Same from raw values, with population class variances.
double fisher_discriminant_ratio(std::span<const double> col, std::span<const Familiarity> labels,
                                 Familiarity a, Familiarity b,
                                 FdrDenominator mode = FdrDenominator::squared);

struct OrthogonalSelection {
  std::vector<std::size_t> ids;   // column indices in selection order
  std::vector<double> scores;     // FDR of each pick's residual
  bool shortfall = false;         // fewer than k independent columns
};

/// Orthogonal forward selection. Columns are z-scored over the rows of the two
/// classes; each step scores every remaining Gram-Schmidt residual (rescaled to
/// unit RMS) by FDR, keeps the best (lowest index on ties) and projects it out
/// of the rest. Residuals with RMS below 1e-10 are treated as linearly
/// dependent and never picked.
OrthogonalSelection gram_schmidt_fdr_select(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                                            std::size_t k,
                                            FdrDenominator mode = FdrDenominator::squared);

}  // namespace famfeat
