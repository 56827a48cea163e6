#pragma once

#include <stdexcept>
#include <string>

namespace hexhybrid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coordinate outside the board.
class CoordinateError : public Error {
 public:
  using Error::Error;
};

class IllegalActionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Model or replay file could not be read or does not match the expected layout.
class LoadError : public Error {
 public:
  using Error::Error;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

// Statistical input with no variance (t statistic undefined).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace hexhybrid
