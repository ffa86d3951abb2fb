/** @file error.hpp
 *  @brief Exception hierarchy shared by all modules; each category maps to a CLI exit code.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace shellbuckle {

enum class ErrorKind {
  Domain,      // argument outside the admissible range
  Config,      // bad configuration or usage
  Capability,  // field cannot provide the requested derivatives / shape
  Solver,      // numerical failure (Cholesky, CG, ...)
  Check,       // an asserted inequality or identity failed
  Io
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& w) : Error(ErrorKind::Capability, w) {}
};
struct SolverError : Error {
  explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};
struct CheckFailure : Error {
  explicit CheckFailure(const std::string& w) : Error(ErrorKind::Check, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

}  // namespace shellbuckle
