#pragma once

#include <stdexcept>
#include <string>

namespace levy {

//! Parameter outside the domain a family or constructor accepts.
class InvalidParameter : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! Argument outside the domain of a function (q <= 0, Re z <= 0, t <= 0, q == p).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

//! A quadrature that a result depends on did not reach its tolerance.
class NumericFailure : public std::runtime_error
{
public:
  explicit NumericFailure(const std::string& what, double where = 0.0)
    : std::runtime_error(what)
    , where_(where)
  {}

  //! The argument (frequency, q, x or t) at which the failure happened.
  double where() const noexcept { return where_; }

private:
  double where_;
};

} // namespace levy
