// Copyright 2026 The patchpeps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace patchpeps {

// Process exit codes double as error categories.
enum class ErrorCategory : int {
  kInput = 1,
  kBudget = 2,
  kNumerical = 3,
};

/// Base of every library error. `kind()` is a stable machine-readable tag
/// that ends up in result documents.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(message), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error(ErrorCategory::kInput, "dimension_error", message) {}
};

class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string& message)
      : Error(ErrorCategory::kInput, "bounds_error", message) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error(ErrorCategory::kInput, "argument_error", message) {}
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& message)
      : Error(ErrorCategory::kInput, "model_error", message) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message)
      : Error(ErrorCategory::kInput, "format_error", message) {}
};

/// A map that was required to have a left inverse does not.
class NotInjectiveError : public Error {
 public:
  NotInjectiveError(const std::string& message, double sigma_min)
      : Error(ErrorCategory::kInput, "not_injective", message), sigma_min_(sigma_min) {}

  double sigma_min() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

/// A contraction or state would exceed the configured memory budget.
class SizeError : public Error {
 public:
  SizeError(const std::string& message, double predicted_entries)
      : Error(ErrorCategory::kBudget, "size_error", message), predicted_(predicted_entries) {}

  double predicted_entries() const noexcept { return predicted_; }

 private:
  double predicted_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorCategory::kNumerical, "numerical_error", message) {}
};

class DegenerateFitError : public Error {
 public:
  explicit DegenerateFitError(const std::string& message)
      : Error(ErrorCategory::kNumerical, "degenerate_fit", message) {}
};

}  // namespace patchpeps
