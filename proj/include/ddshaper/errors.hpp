#pragma once

#include <stdexcept>
#include <string>

namespace ddshaper {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value is not representable on the sample grid it has to live on.
struct GridMismatch : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct Unsupported : Error {
  using Error::Error;
};

}  // namespace ddshaper
