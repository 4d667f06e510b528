#pragma once

#include <stdexcept>
#include <string>

namespace regen {

// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: bad arguments, malformed configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A model whose declared minorization/drift constants do not hold.
class ModelError : public Error {
public:
  using Error::Error;
};

class RatioOutOfRange : public ModelError {
public:
  using ModelError::ModelError;
};

class InvalidRadius : public ModelError {
public:
  using ModelError::ModelError;
};

class DriftInvalid : public ModelError {
public:
  using ModelError::ModelError;
};

class TourLengthOverflow : public ModelError {
public:
  using ModelError::ModelError;
};

class EvenLength : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidAlpha : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class MomentOrderViolation : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class MissingMoments : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class MissingNorm : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class InvalidParameter : public ConfigError {
public:
  using ConfigError::ConfigError;
};

} // namespace regen
