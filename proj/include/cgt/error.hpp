// Copyright 2026 The cgt Authors
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

#ifndef CGT_ERROR_HPP_
#define CGT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

// Probability rows and distributions must sum to 1 within this tolerance.
inline constexpr double kRowSumTolerance = 1e-9;

enum class ErrorKind {
  kCyclicGraph,
  kUnknownNode,
  kUnknownState,
  kUnknownGraph,
  kIncompleteAssignment,
  kIncompleteProfile,
  kStateSpaceMismatch,
  kDimensionMismatch,
  kOverlappingSets,
  kZeroProbabilityEvidence,
  kZeroProbabilityType,
  kEnumerationLimitExceeded,
  kImperfectInformation,
  kParseError,
  kUnresolvedReference,
  kSchemaViolation,
  kIoError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Structural problems found by the validators. Violations break model
// invariants; warnings flag suspicious but legal constructs.
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  void violation(const std::string& message) { violations.push_back(message); }
  void warning(const std::string& message) { warnings.push_back(message); }
};

}  // namespace cgt

#endif  // CGT_ERROR_HPP_
