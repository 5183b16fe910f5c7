// SPDX-License-Identifier: Apache-2.0
//
// iasim: closed-form interference alignment under distributed CSIT
// Copyright (C) 2026 The iasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "iasim/errors.hpp"

namespace iasim {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "invalid_argument";
    case ErrorCode::DimensionMismatch:
        return "dimension_mismatch";
    case ErrorCode::SingularMatrix:
        return "singular_matrix";
    case ErrorCode::NumericalFailure:
        return "numerical_failure";
    case ErrorCode::EmptyComplement:
        return "empty_complement";
    case ErrorCode::RankDeficient:
        return "rank_deficient";
    case ErrorCode::CodebookTooLarge:
        return "codebook_too_large";
    case ErrorCode::ParseError:
        return "parse_error";
    case ErrorCode::SweepAborted:
        return "sweep_aborted";
    case ErrorCode::Io:
        return "io";
    }
    return "unknown";
}

} // namespace iasim
