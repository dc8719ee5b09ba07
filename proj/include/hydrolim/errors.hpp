#pragma once

#include <stdexcept>
#include <string>

namespace hydrolim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Samples handed to a transform do not have the declared vertical parity.
class ParityMismatch : public Error {
 public:
  using Error::Error;
};

/// Two fields combined in one operation live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A homogeneous Besov norm was requested for a field with a nonzero mean.
class HomogeneousDomainError : public Error {
 public:
  using Error::Error;
};

/// Horizontal velocity whose z-mean divergence does not vanish, so no odd
/// periodic vertical velocity exists.
class IncompatibleData : public Error {
 public:
  using Error::Error;
};

/// Initial data violating parity, mean, divergence or smallness requirements.
class InadmissibleData : public Error {
 public:
  using Error::Error;
};

/// A run produced non-finite values.
class DivergedRun : public Error {
 public:
  DivergedRun(long step, const std::string& what)
      : Error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// Malformed or schema-violating configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad magic, truncated body or inconsistent header in a field snapshot.
class SnapshotError : public Error {
 public:
  using Error::Error;
};

}  // namespace hydrolim
