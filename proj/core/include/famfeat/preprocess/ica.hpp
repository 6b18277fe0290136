#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "famfeat/preprocess/recording.hpp"

namespace famfeat {

struct IcaOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-4;
  std::uint64_t seed = 0;
};

/// Linear decomposition of the EEG channels of a recording.
///
/// `unmixing` maps raw channel samples to sources (sources = X * unmixing^T,
/// X being the time x channel EEG block without centering), `mixing` maps them
/// back. mixing * unmixing is the orthogonal projector onto the retained
/// principal subspace, which is the identity when every component is kept.
struct IcaDecomposition {
  Eigen::MatrixXd unmixing;  // components x channels
  Eigen::MatrixXd mixing;    // channels x components
  Eigen::MatrixXd sources;   // time x components
  std::vector<std::size_t> channels;  // recording columns that were decomposed
  std::set<std::size_t> removed;
  std::size_t iterations = 0;

  std::size_t component_count() const noexcept { return static_cast<std::size_t>(unmixing.rows()); }
};

/// Symmetric fixed-point FastICA with the tanh contrast on PCA-whitened data.
/// The EOG reference channel is excluded from the decomposition. Components are
/// ordered by decreasing projected variance with sign fixed so the largest
/// mixing weight is positive.
IcaDecomposition ica_decompose(const Recording& rec, std::size_t n_components,
                               const IcaOptions& options = {});

/// Subtracts the selected components' back-projection from the decomposed
/// channels. Other channels pass through untouched.
Recording remove_components(const Recording& rec, const IcaDecomposition& dec,
                            const std::set<std::size_t>& which);

/// Components whose |Pearson r| with the EOG trace exceeds `threshold`.
std::set<std::size_t> auto_flag_eog(const IcaDecomposition& dec, std::span<const double> eog,
                                    double threshold = 0.7);

}  // namespace famfeat
