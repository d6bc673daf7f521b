#pragma once

#include <stdexcept>
#include <string>

namespace pcadca {

/// Broad failure classes; the CLI maps each to a distinct exit code.
enum class ErrorKind {
  Config,     // bad configuration or usage
  Data,       // unreadable, malformed or unsuitable input data
  Numerical,  // a numerical routine failed to converge
};

/// Every library failure is reported as an Error tagged with the pipeline
/// stage that raised it ("ingest", "prep", "pca", ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorKind kind_;
  std::string stage_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Data: return 3;
    case ErrorKind::Numerical: return 4;
  }
  return 1;
}

}  // namespace pcadca
