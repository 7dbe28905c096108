// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/error.hpp"

namespace foldplan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MalformedImage: return "MalformedImage";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::EmptySkeleton: return "EmptySkeleton";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::OffGarment: return "OffGarment";
    case ErrorCode::SameNode: return "SameNode";
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::RepresentationMismatch: return "RepresentationMismatch";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::NoPendingAction: return "NoPendingAction";
    case ErrorCode::NoActivePlan: return "NoActivePlan";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorCode::DegenerateFold: return "DegenerateFold";
    case ErrorCode::MissingPlanForClass: return "MissingPlanForClass";
    case ErrorCode::EmptyLibrary: return "EmptyLibrary";
  }
  return "Unknown";
}

RepresentationMismatchError::RepresentationMismatchError(AdjacencyMatrix expected,
                                                         AdjacencyMatrix actual)
    : Error(ErrorCode::RepresentationMismatch,
            "skeleton adjacency (" + std::to_string(actual.size()) +
                " nodes) differs from the plan reference (" +
                std::to_string(expected.size()) + " nodes)"),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

}  // namespace foldplan
