#include "stagec/diag.hpp"

namespace stagec {

const char* diagCodeName(DiagCode code) {
  switch (code) {
    case DiagCode::SyntaxError: return "SyntaxError";
    case DiagCode::TypeMismatch: return "TypeMismatch";
    case DiagCode::StageViolation: return "StageViolation";
    case DiagCode::PhaseViolation: return "PhaseViolation";
    case DiagCode::ScopeViolation: return "ScopeViolation";
    case DiagCode::ArityViolation: return "ArityViolation";
    case DiagCode::UnknownBuiltin: return "UnknownBuiltin";
    case DiagCode::StageError: return "StageError";
    case DiagCode::UnboundIdentifier: return "UnboundIdentifier";
    case DiagCode::AnnotationRequired: return "AnnotationRequired";
    case DiagCode::ShapeMismatch: return "ShapeMismatch";
    case DiagCode::NonCircuitConstruct: return "NonCircuitConstruct";
    case DiagCode::ArityMismatch: return "ArityMismatch";
    case DiagCode::TooManyInputs: return "TooManyInputs";
    case DiagCode::ProfileViolation: return "ProfileViolation";
    case DiagCode::StuckEvaluation: return "StuckEvaluation";
  }
  return "?";
}

std::string Diag::render() const {
  std::string out;
  if (line > 0) {
    out += std::to_string(line);
    out += ":";
    out += std::to_string(col);
    out += ": ";
  }
  out += diagCodeName(code);
  out += ": ";
  out += message;
  if (!where.empty()) {
    out += " (at ";
    out += where;
    out += ")";
  }
  return out;
}

}  // namespace stagec
