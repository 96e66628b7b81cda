#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curvfun {

enum class ErrorCode {
  kNonFinite,
  kSingularMetric,
  kDegenerateChart,
  kDegeneratePlane,
  kRankDeficient,
  kBadDimension,
  kNotClosed,
  kNotBiInvariant,
  kNonOrthonormalFrame,
  kChartSingularity,
  kNotLocallyInjective,
  kSingularL,
  kInvalidComplex,
  kParse,
  kNotExact,
  kConfig,
};

const char* to_string(ErrorCode code);

/// Numerical or structural failure raised by the engine. `point` carries the
/// chart coordinates of the failing evaluation when one is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<double> point = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        point_(std::move(point)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  ErrorCode code_;
  std::vector<double> point_;
};

}  // namespace curvfun
