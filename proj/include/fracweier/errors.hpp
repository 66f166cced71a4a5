#pragma once

#include <stdexcept>
#include <string>

namespace fw {

/// Base of every error raised by the library. Each subclass maps to one CLI
/// exit code (see tools/fracweier.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Γ requested at a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A series could not reach its tolerance within the term budget or the
/// available working precision.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid model parameters (λ, s, α, K, β ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

/// The derivative series of the fractional Weierstrass function diverges
/// (α ≥ 2 − s). Carries the common ratio λ^{s−2+α} of the series.
class DivergentSeries : public Error {
 public:
  DivergentSeries(const std::string& what, double ratio)
      : Error(what), ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

/// Too few usable scales for a log-log regression.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// Estimator input carries no scaling information (constant signal).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace fw
