#pragma once

#include <stdexcept>
#include <string>

namespace aivalue {

// Every library failure derives from Error; the kind drives CLI exit codes.
enum class ErrorKind {
  validation,     // input violates a type invariant or file schema
  domain,         // mathematically undefined request (n = 1 normalization, I = 0 break-even)
  usage,          // caller misuse: mismatched lengths, unsorted grid, unknown column
  degenerate,     // statistically degenerate data: zero variance, < 3 distinct x
  singular,       // rank-deficient design matrix
  split,          // moderation split produced an unusable group
  configuration,  // inconsistent thresholds or options
  consistency,    // AHP judgments above the CR cutoff
  numeric,        // iteration failed to converge
  resource,       // request exceeds a size budget
  capability,     // dataset grade does not support the operation
  format,         // report cannot be rendered in the requested format
  integrity,      // internally inconsistent value (tampered breakdown)
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace aivalue
