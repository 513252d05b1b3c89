// Copyright 2026 The Komatsu Authors
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

#include "komatsu/error.hpp"

namespace komatsu {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSequence: return "invalid-sequence";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kUnknownGroup: return "unknown-group";
    case ErrorCode::kEmptySpectrum: return "empty-spectrum";
    case ErrorCode::kInsufficientSpan: return "insufficient-span";
    case ErrorCode::kTruncationMismatch: return "truncation-mismatch";
    case ErrorCode::kInadmissible: return "inadmissible";
    case ErrorCode::kInsufficientPrecision: return "insufficient-precision";
    case ErrorCode::kBandOverflow: return "band-overflow";
    case ErrorCode::kNonConvergent: return "non-convergent";
    case ErrorCode::kNoWitnesses: return "no-witnesses";
  }
  return "unknown";
}

}  // namespace komatsu
