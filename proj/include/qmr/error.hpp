#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmr {

enum class ErrorKind {
  invalid_operand,
  truncation_exceeded,
  internal_corruption,
  pole_collision_unhandled,
  non_invertible_pole_coefficient,
  prescription_violation,
  invalid_query,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_operand: return "invalid-operand";
    case ErrorKind::truncation_exceeded: return "truncation-exceeded";
    case ErrorKind::internal_corruption: return "internal-corruption";
    case ErrorKind::pole_collision_unhandled: return "pole-collision-unhandled";
    case ErrorKind::non_invertible_pole_coefficient: return "non-invertible-pole-coefficient";
    case ErrorKind::prescription_violation: return "prescription-violation";
    case ErrorKind::invalid_query: return "invalid-query";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qmr
