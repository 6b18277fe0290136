#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "famfeat/selection/feature_matrix.hpp"

namespace famfeat {

enum class TTestKind { welch, pooled };

struct PValues {
  std::vector<double> p;          // per column, in (0, 1]
  std::vector<bool> degenerate;   // both classes had zero variance
};

/// Two-sided two-sample t-test of every column, class a against class b.
/// Welch uses Welch-Satterthwaite degrees of freedom.
PValues t_test_pvalues(const FeatureMatrix& fm, Familiarity a, Familiarity b,
                       TTestKind kind = TTestKind::welch);

/// Two-sided p of one sample pair. Exposed for column-free callers.
double t_test_pvalue(std::span<const double> xa, std::span<const double> xb,
                     TTestKind kind = TTestKind::welch, bool* degenerate = nullptr);

/// Columns with p < alpha, the `cap` smallest by p; ties go to the lower
/// column index. Output is ordered by ascending p.
std::vector<std::size_t> pvalue_filter(std::span<const double> pvalues, double alpha, std::size_t cap);

}  // namespace famfeat
