#pragma once

#include <stdexcept>
#include <string>

namespace flexbh {

/// A served user's cancellation system has no solution delivering a
/// nonzero desired gain, independent of the realization.
class SchemeInfeasible : public std::runtime_error {
 public:
  SchemeInfeasible(int user, const std::string& what)
      : std::runtime_error(what), user_(user) {}
  int user() const noexcept { return user_; }

 private:
  int user_;
};

/// The desired effective gain of a served user evaluated to exactly zero.
/// Callers re-sample the channel realization.
class GenericityFailure : public std::runtime_error {
 public:
  GenericityFailure(int user, const std::string& what)
      : std::runtime_error(what), user_(user) {}
  int user() const noexcept { return user_; }

 private:
  int user_;
};

}  // namespace flexbh
