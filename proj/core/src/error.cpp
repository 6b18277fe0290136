#include "famfeat/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace famfeat {

InputError::InputError(std::string file, std::size_t line, const std::string& what)
    : ParameterError(line > 0 ? fmt::format("{}:{}: {}", file, line, what)
                              : fmt::format("{}: {}", file, what)),
      file_(std::move(file)),
      line_(line) {}

ConvergenceError::ConvergenceError(const std::string& what, std::size_t iterations,
                                   std::size_t violations)
    : Error(fmt::format("{} (iterations: {}, violations: {})", what, iterations, violations)),
      iterations_(iterations),
      violations_(violations) {}

EpochWindowError::EpochWindowError(std::vector<std::size_t> onsets)
    : ParameterError(fmt::format("epoch window exceeds recording end for onset(s) {}",
                                 fmt::join(onsets, ", "))),
      onsets_(std::move(onsets)) {}

}  // namespace famfeat
