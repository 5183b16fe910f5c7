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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iasim {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    SingularMatrix,
    NumericalFailure,
    EmptyComplement,
    RankDeficient,
    CodebookTooLarge,
    ParseError,
    SweepAborted,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Base of every error thrown by the library. code() is stable and is what the
// CLI prints in its machine-readable error line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SingularMatrix : public Error {
public:
    explicit SingularMatrix(const std::string& message, double min_singular_value = 0.0)
        : Error(ErrorCode::SingularMatrix, message), min_singular_value_(min_singular_value) {}

    double min_singular_value() const noexcept { return min_singular_value_; }

private:
    double min_singular_value_;
};

class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& message) : Error(ErrorCode::NumericalFailure, message) {}
};

class EmptyComplement : public Error {
public:
    explicit EmptyComplement(const std::string& message) : Error(ErrorCode::EmptyComplement, message) {}
};

class CodebookTooLarge : public Error {
public:
    explicit CodebookTooLarge(const std::string& message) : Error(ErrorCode::CodebookTooLarge, message) {}
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition)
        throw Error(code, message);
}

} // namespace iasim
