// Copyright 2026 The ZECS Toolkit Authors
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

namespace zecs {

enum class ErrorCode {
  // qmat
  NotHermitian,
  NoConvergence,
  Overflow,
  IndexOutOfRange,
  DimMismatch,
  // states
  WrongSize,
  BadSubsystem,
  NotValidDensity,
  // simulator
  BadParamCount,
  InvalidArgument,
  // shadow
  BadBasisChar,
  BadBitChar,
  SubsetNotCovered,
  SubsetMismatch,
  EmptyAccumulator,
  // zero entropy
  NotUnitTrace,
  Mismatch,
  // diagnostics
  CoverageError,
  MissingReference,
  AdjacencyViolation,
  InsufficientCandidates,
  // routing
  UnscoredEdge,
  NotAPath,
  NoPathOfLength,
  TooLarge,
  // io
  ParseError,
  BadConfig,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::WrongSize: return "WrongSize";
    case ErrorCode::BadSubsystem: return "BadSubsystem";
    case ErrorCode::NotValidDensity: return "NotValidDensity";
    case ErrorCode::BadParamCount: return "BadParamCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadBasisChar: return "BadBasisChar";
    case ErrorCode::BadBitChar: return "BadBitChar";
    case ErrorCode::SubsetNotCovered: return "SubsetNotCovered";
    case ErrorCode::SubsetMismatch: return "SubsetMismatch";
    case ErrorCode::EmptyAccumulator: return "EmptyAccumulator";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::CoverageError: return "CoverageError";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::AdjacencyViolation: return "AdjacencyViolation";
    case ErrorCode::InsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::UnscoredEdge: return "UnscoredEdge";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::NoPathOfLength: return "NoPathOfLength";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

/// Every failure raised by the toolkit. The code identifies the failure class;
/// the message carries context (dimensions, file/line, offending value).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zecs
