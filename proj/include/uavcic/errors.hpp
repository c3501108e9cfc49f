// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace uavcic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix argument contained NaN or infinite entries.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

/// A stream association admits no zero-forcing beamformer for some stream.
class InfeasibleAssociation : public Error {
 public:
  using Error::Error;
};

/// Every beamformer is zero, so no scaling can make the set strictly feasible.
class ZeroSolution : public Error {
 public:
  using Error::Error;
};

/// Surrogate anchor c must be strictly positive.
class NonPositiveAnchor : public Error {
 public:
  using Error::Error;
};

/// Not even a single stream can be sent under the zero-interference condition.
class NoFeasibleStream : public Error {
 public:
  using Error::Error;
};

/// Configuration file or literal could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavcic
