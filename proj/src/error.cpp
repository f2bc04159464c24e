// Copyright 2026 The qvars Authors
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


#include "error.hpp"

namespace qvars {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DomainMismatch: return "domain_mismatch";
    case ErrorCode::NotAccessible: return "not_accessible";
    case ErrorCode::NotClosed: return "not_closed";
    case ErrorCode::MissingIdentity: return "missing_identity";
    case ErrorCode::NotABijection: return "not_a_bijection";
    case ErrorCode::GroupTooLarge: return "group_too_large";
    case ErrorCode::NotOrthonormal: return "not_orthonormal";
    case ErrorCode::DuplicateValues: return "duplicate_values";
    case ErrorCode::NotUnitary: return "not_unitary";
    case ErrorCode::NotHermitian: return "not_hermitian";
    case ErrorCode::NotAProjection: return "not_a_projection";
    case ErrorCode::NotConverged: return "not_converged";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::NotNormalized: return "not_normalized";
    case ErrorCode::SupportMismatch: return "support_mismatch";
    case ErrorCode::ProbabilityOutOfRange: return "probability_out_of_range";
    case ErrorCode::Config: return "config_error";
    case ErrorCode::Io: return "io_error";
  }
  return "unknown";
}

}  // namespace qvars
