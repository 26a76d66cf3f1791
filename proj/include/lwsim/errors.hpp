#pragma once

#include <stdexcept>
#include <string>

namespace lwsim {

/// Argument outside the mathematical domain of a function (u outside (0,1),
/// W below the branch point, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A distribution parameter violates its family's constraint. The message
/// names the violated constraint.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The family has no closed-form or Lambert-W quantile; use numeric_quantile.
class NoAnalyticForm : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bracket expansion could not find a sign change of F(t) - u.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lwsim
