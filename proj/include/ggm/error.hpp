#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ggm {

enum class ErrorKind {
    invalid_argument,
    config,
    non_summable,
    diverged,
    max_iterations,
    unsupported_degree,
    unsupported_period,
    inconclusive,
    non_stochastic,
    reducible,
    out_of_window,
    volume_too_large,
    pin_inside_inner,
    tail_too_fat,
    period_mismatch,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::config: return "ConfigError";
    case ErrorKind::non_summable: return "NonSummable";
    case ErrorKind::diverged: return "Diverged";
    case ErrorKind::max_iterations: return "MaxIterations";
    case ErrorKind::unsupported_degree: return "UnsupportedDegree";
    case ErrorKind::unsupported_period: return "UnsupportedPeriod";
    case ErrorKind::inconclusive: return "Inconclusive";
    case ErrorKind::non_stochastic: return "NonStochastic";
    case ErrorKind::reducible: return "Reducible";
    case ErrorKind::out_of_window: return "OutOfWindow";
    case ErrorKind::volume_too_large: return "VolumeTooLarge";
    case ErrorKind::pin_inside_inner: return "PinInsideInner";
    case ErrorKind::tail_too_fat: return "TailTooFat";
    case ErrorKind::period_mismatch: return "PeriodMismatch";
    }
    return "Unknown";
}

inline void require(bool condition, const std::string& what)
{
    if (!condition) {
        throw Error(ErrorKind::invalid_argument, what);
    }
}

} // namespace ggm
