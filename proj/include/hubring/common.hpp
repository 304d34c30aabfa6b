#pragma once

#include <stdexcept>

namespace hubring {

/// A run that cannot meet its numerical contract (eigenpair residuals,
/// Krylov convergence, conservation drift).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Failure to read or write run artifacts.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hubring
