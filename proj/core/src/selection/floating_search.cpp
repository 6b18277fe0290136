#include "famfeat/selection/floating_search.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "famfeat/error.hpp"
#include "famfeat/parallel.hpp"

namespace famfeat {
namespace {

using Subset = std::vector<std::size_t>;  // kept sorted

class Search {
 public:
  Search(std::size_t target, const SubsetEvaluator& evaluator, FloatingSearchResult& result)
      : target_(target), evaluator_(evaluator), result_(result) {}

  // Scores every subset (in parallel where uncached) and returns them in order.
  std::vector<double> score(const std::vector<Subset>& subsets) {
    std::vector<std::optional<double>> scores(subsets.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      if (auto it = cache_.find(subsets[i]); it != cache_.end()) {
        scores[i] = it->second;
      } else {
        todo.push_back(i);
      }
    }
    std::vector<std::string> errors(todo.size());
    parallel_for(todo.size(), [&](std::size_t t) {
      const auto& s = subsets[todo[t]];
      try {
        scores[todo[t]] = evaluator_(s);
      } catch (const std::exception& e) {
        scores[todo[t]] = 0.0;
        errors[t] = fmt::format("subset [{}]: {}", fmt::join(s, ","), e.what());
      }
    });
    for (std::size_t t = 0; t < todo.size(); ++t) {
      cache_[subsets[todo[t]]] = *scores[todo[t]];
      if (!errors[t].empty()) result_.failures.push_back(errors[t]);
    }
    std::vector<double> out(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) out[i] = *scores[i];
    return out;
  }

  void visit(const Subset& s, double ccr) {
    if (s.size() != target_) return;
    if (!best_ || ccr > best_ccr_) {
      best_ = s;
      best_ccr_ = ccr;
    }
  }

  // Greedy addition from `pool`; returns the added column, if any remained.
  std::optional<std::size_t> add_best(Subset& current, const std::vector<std::size_t>& pool,
                                      double& ccr) {
    std::vector<std::size_t> options;
    std::vector<Subset> subsets;
    for (auto c : pool) {
      if (std::binary_search(current.begin(), current.end(), c)) continue;
      Subset s = current;
      s.insert(std::upper_bound(s.begin(), s.end(), c), c);
      options.push_back(c);
      subsets.push_back(std::move(s));
    }
    if (options.empty()) return std::nullopt;
    const auto scores = score(subsets);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < options.size(); ++i) {
      if (scores[i] > scores[pick]) pick = i;
    }
    current = subsets[pick];
    ccr = scores[pick];
    visit(current, ccr);
    return options[pick];
  }

  std::optional<std::size_t> remove_worst(Subset& current, double& ccr) {
    if (current.size() <= 1) return std::nullopt;
    std::vector<Subset> subsets;
    for (std::size_t i = 0; i < current.size(); ++i) {
      Subset s = current;
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
      subsets.push_back(std::move(s));
    }
    const auto scores = score(subsets);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < subsets.size(); ++i) {
      if (scores[i] > scores[pick]) pick = i;
    }
    const std::size_t removed = current[pick];
    current = subsets[pick];
    ccr = scores[pick];
    visit(current, ccr);
    return removed;
  }

  const std::optional<Subset>& best() const { return best_; }
  double best_ccr() const { return best_ccr_; }

 private:
  std::size_t target_;
  const SubsetEvaluator& evaluator_;
  FloatingSearchResult& result_;
  std::map<Subset, double> cache_;
  std::optional<Subset> best_;
  double best_ccr_ = 0.0;
};

}  // namespace

FloatingSearchResult plus_r_take_away_l(std::span<const std::size_t> candidates, std::size_t target,
                                        const FloatingSearchOptions& options,
                                        const SubsetEvaluator& evaluator) {
  if (!(options.r > options.l) || options.l < 1) {
    throw ParameterError(fmt::format("plus-r take-away-l needs r > l >= 1 (r = {}, l = {})", options.r,
                                     options.l));
  }
  std::vector<std::size_t> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) {
    throw ParameterError("candidate columns contain duplicates");
  }
  if (target < 1 || target > pool.size()) {
    throw ParameterError(fmt::format("target size {} outside [1, {}]", target, pool.size()));
  }

  FloatingSearchResult result;
  Search search(target, evaluator, result);

  if (target == pool.size()) {
    const double ccr = search.score({pool}).front();
    result.ids = pool;
    result.ccr = ccr;
    result.trace.push_back({SearchStep::Action::start, 0, pool.size(), ccr});
    return result;
  }

  result.trace.push_back({SearchStep::Action::start, 0, 0, 0.0});
  double ccr = 0.0;

  if (options.include_forward_path) {
    Subset current;
    while (current.size() < target) {
      if (!search.add_best(current, pool, ccr)) break;
    }
  }

  Subset current;
  for (;;) {
    bool exhausted = false;
    for (std::size_t i = 0; i < options.r; ++i) {
      const auto added = search.add_best(current, pool, ccr);
      if (!added) {
        exhausted = true;
        break;
      }
      result.trace.push_back({SearchStep::Action::add, *added, current.size(), ccr});
    }
    for (std::size_t i = 0; i < options.l; ++i) {
      const auto removed = search.remove_worst(current, ccr);
      if (!removed) break;
      result.trace.push_back({SearchStep::Action::remove, *removed, current.size(), ccr});
    }
    if (current.size() >= target || exhausted) break;
  }

  result.ids = *search.best();
  result.ccr = search.best_ccr();
  return result;
}

}  // namespace famfeat
