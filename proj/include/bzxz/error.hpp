// Copyright 2026 The bzxz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bzxz {

enum class ErrorCode {
  odd_dimension,
  shape_mismatch,
  not_unitary,
  not_power_of_two,
  not_permutation,
  non_convergence,
  invalid_options,
  decomposition_failed,
  parse_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::odd_dimension: return "OddDimension";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::not_unitary: return "NotUnitary";
    case ErrorCode::not_power_of_two: return "NotPowerOfTwo";
    case ErrorCode::not_permutation: return "NotPermutation";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::invalid_options: return "InvalidOptions";
    case ErrorCode::decomposition_failed: return "DecompositionFailed";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bzxz
