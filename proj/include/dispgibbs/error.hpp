#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dispgibbs {

enum class ErrorKind {
  InvalidDispersion,
  IllPosed,
  InvalidArgument,
  Parse,
  DegeneratePhase,
  NoConvergence,
  NonFinite,
  PieceTooShallow,
  NotAJump,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDispersion: return "InvalidDispersion";
    case ErrorKind::IllPosed: return "IllPosed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DegeneratePhase: return "DegeneratePhase";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::PieceTooShallow: return "PieceTooShallow";
    case ErrorKind::NotAJump: return "NotAJump";
  }
  return "Unknown";
}

/// Numerical failures (as opposed to bad input).
inline bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::DegeneratePhase || kind == ErrorKind::NoConvergence ||
         kind == ErrorKind::NonFinite;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

/// Adaptive quadrature gave up; carries the last two estimates.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, std::complex<double> previous,
                std::complex<double> last)
      : Error(ErrorKind::NoConvergence, what), previous_(previous), last_(last) {}

  std::complex<double> previous() const noexcept { return previous_; }
  std::complex<double> last() const noexcept { return last_; }

 private:
  std::complex<double> previous_;
  std::complex<double> last_;
};

}  // namespace dispgibbs
