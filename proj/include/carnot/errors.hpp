// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidAlgebra : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotNilpotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotStratifiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotConformal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoIsometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (polynomial strings, spec files). `where` names the
/// offending field or position.
struct SpecError : std::runtime_error {
  SpecError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace carnot
