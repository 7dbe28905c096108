// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace foldplan {

enum class ErrorCode {
  InvalidArgument,
  Io,
  MalformedImage,
  EmptyMask,
  EmptySkeleton,
  UnknownNode,
  OffGarment,
  SameNode,
  NonPositiveHeight,
  RepresentationMismatch,
  StepOutOfRange,
  NoPendingAction,
  NoActivePlan,
  MalformedDocument,
  SchemaVersionUnsupported,
  DegenerateFold,
  MissingPlanForClass,
  EmptyLibrary,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using AdjacencyMatrix = std::vector<std::vector<int>>;

/// Raised when a garment's skeleton does not share the plan's adjacency
/// matrix. Carries both matrices so callers can show the difference.
class RepresentationMismatchError : public Error {
 public:
  RepresentationMismatchError(AdjacencyMatrix expected, AdjacencyMatrix actual);

  const AdjacencyMatrix& expected() const noexcept { return expected_; }
  const AdjacencyMatrix& actual() const noexcept { return actual_; }

 private:
  AdjacencyMatrix expected_;
  AdjacencyMatrix actual_;
};

}  // namespace foldplan
