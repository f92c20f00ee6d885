#pragma once

#include <stdexcept>
#include <string>

namespace ergodiclab {

// Error taxonomy shared by all modules. Each class corresponds to one failure
// mode named in the operation contracts; catching `Error` catches them all.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

// Eigenvalue clustering found a chain of eigenvalues each within the cluster
// tolerance of its neighbor but spanning more than 10x that tolerance.
class ClusteringAmbiguous : public Error {
 public:
  using Error::Error;
};

class NotAnEigenvalue : public Error {
 public:
  using Error::Error;
};

// An enumeration or flop budget guard refused the request. The message names
// the guard that fired.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Configuration schema violation; carries the path of the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field_path, const std::string& message)
      : Error(field_path + ": " + message), field_path_(field_path) {}
  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

}  // namespace ergodiclab
