#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affcover {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  SelfLoop,
  DuplicateEdge,
  CycleComponent,
  MultiEdgeCollapse,
  NotSimple,
  IsolatedLine,
  InvalidK,
  NotPreTemplate,
  InvalidTemplate,
  SolverProtocolError,
  UnsupportedCombination,
  InconsistentDescription,
  TooLarge,
  BadDegrees,
  NotPlanarCyclic,
  NotSatisfying,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::CycleComponent: return "CycleComponent";
    case ErrorCode::MultiEdgeCollapse: return "MultiEdgeCollapse";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::IsolatedLine: return "IsolatedLine";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::NotPreTemplate: return "NotPreTemplate";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::SolverProtocolError: return "SolverProtocolError";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::InconsistentDescription: return "InconsistentDescription";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadDegrees: return "BadDegrees";
    case ErrorCode::NotPlanarCyclic: return "NotPlanarCyclic";
    case ErrorCode::NotSatisfying: return "NotSatisfying";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace affcover
