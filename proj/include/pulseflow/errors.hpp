#pragma once

#include <stdexcept>
#include <string>

namespace pulseflow {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters: geometry, grids, thresholds, config files.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A computation could not be carried out (singular system, no convergence, ...).
class NumericError : public Error {
public:
  using Error::Error;
};

/// File system and serialization failures.
class IoError : public Error {
public:
  using Error::Error;
};

// --- configuration / input validation ---

class InvalidInput : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class DegenerateGeometry : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class UnsupportedGeometry : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidGrid : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class NonMonotonicTime : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// --- numeric failures ---

class DegenerateSeries : public NumericError {
public:
  using NumericError::NumericError;
};

class DegenerateWaveform : public NumericError {
public:
  using NumericError::NumericError;
};

class ArgumentTooLarge : public NumericError {
public:
  using NumericError::NumericError;
};

class SingularTransferFunction : public NumericError {
public:
  using NumericError::NumericError;
};

class SingularDenominator : public NumericError {
public:
  using NumericError::NumericError;
};

class SolverSingular : public NumericError {
public:
  using NumericError::NumericError;
};

class DegenerateReference : public NumericError {
public:
  using NumericError::NumericError;
};

class NoConvergence : public NumericError {
public:
  using NumericError::NumericError;
};

class VanishingDenominator : public NumericError {
public:
  using NumericError::NumericError;
};

class NotPeriodic : public NumericError {
public:
  using NumericError::NumericError;
};

// --- I/O ---

class CsvParseError : public IoError {
public:
  using IoError::IoError;
};

} // namespace pulseflow
