#pragma once

#include <stdexcept>
#include <string>

namespace semigen {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the admissible domain (|z| >= 1, zeta outside Z, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class AtomAtPoint : public Error {
public:
  using Error::Error;
};

class NotContactPoint : public Error {
public:
  using Error::Error;
};

class RootFindingFailure : public Error {
public:
  using Error::Error;
};

class QuadratureFailure : public Error {
public:
  using Error::Error;
};

class DegenerateConfig : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public Error {
public:
  using Error::Error;
};

class NormalizationError : public Error {
public:
  using Error::Error;
};

class WeightError : public Error {
public:
  using Error::Error;
};

class StepFailure : public Error {
public:
  using Error::Error;
};

class BoundaryEscape : public Error {
public:
  using Error::Error;
};

class ExtrapolationDivergence : public Error {
public:
  using Error::Error;
};

class TargetMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed or incomplete input document.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace semigen
