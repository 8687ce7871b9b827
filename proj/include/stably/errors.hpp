#ifndef STABLY_ERRORS_HPP
#define STABLY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stably {

// Stable numeric values: the C API returns these directly.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Parse = 2,
  DivisionByZero = 3,
  MixedDiscriminant = 4,
  NotASquare = 5,
  SignatureMismatch = 6,
  UnknownVariable = 7,
  NotDivisible = 8,
  ResourceLimit = 9,
  ExceededCap = 10,
  NotAMultiple = 11,
  DimensionMismatch = 12,
  InvalidWitness = 13,
  Precondition = 14,
  NonzeroConstantTerm = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::Parse,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace stably

#endif  // STABLY_ERRORS_HPP
