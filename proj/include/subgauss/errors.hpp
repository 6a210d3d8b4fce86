#ifndef SUBGAUSS_ERRORS_HPP
#define SUBGAUSS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subgauss {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// distribution construction
struct LengthMismatch : Error {
  using Error::Error;
};
struct NonPositiveMass : Error {
  using Error::Error;
};
struct MassSumOutOfTolerance : Error {
  using Error::Error;
};
struct UOutOfRange : Error {
  using Error::Error;
};
struct ZeroX1 : Error {
  using Error::Error;
};

// evaluation preconditions
struct NonPositiveK : Error {
  using Error::Error;
};
struct NonPositiveTol : Error {
  using Error::Error;
};
struct UnsupportedLaw : Error {
  using Error::Error;
};
struct DegenerateLaw : Error {
  using Error::Error;
};
struct NotInMomentSet : Error {
  using Error::Error;
};
struct KTooSmall : Error {
  using Error::Error;
};
struct PreconditionNotMet : Error {
  using Error::Error;
};

// CLI / input handling
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos) : Error(what), position(pos) {}
  std::size_t position;
};
struct FileError : Error {
  using Error::Error;
};
struct InvalidDistribution : Error {
  using Error::Error;
};

}  // namespace subgauss

#endif
