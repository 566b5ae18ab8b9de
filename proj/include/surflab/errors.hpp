#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace surflab {

// Error taxonomy shared by all modules. Each failure carries a code and,
// when it originated inside an expression, the byte offset into the source.
enum class Errc {
  DivisionByZero,
  BranchCut,
  SyntaxError,
  EvalError,
  OnSingularSet,
  ExplicitOmegaRequired,
  NotSingular,
  Degenerate,
  DegenerateOnCurve,
  NotFirstKind,
  NotClosed,
  NonConvergence,
  LeftDomain,
  TooFewSamples,
  ChartFailure,
  InsufficientJetOrder,
  InvalidData,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::BranchCut: return "BranchCut";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::EvalError: return "EvalError";
    case Errc::OnSingularSet: return "OnSingularSet";
    case Errc::ExplicitOmegaRequired: return "ExplicitOmegaRequired";
    case Errc::NotSingular: return "NotSingular";
    case Errc::Degenerate: return "Degenerate";
    case Errc::DegenerateOnCurve: return "DegenerateOnCurve";
    case Errc::NotFirstKind: return "NotFirstKind";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::LeftDomain: return "LeftDomain";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::ChartFailure: return "ChartFailure";
    case Errc::InsufficientJetOrder: return "InsufficientJetOrder";
    case Errc::InvalidData: return "InvalidData";
  }
  return "Unknown";
}

class SurfError : public std::runtime_error {
 public:
  SurfError(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}
  SurfError(Errc code, const std::string& message, std::size_t offset)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message + " (at offset " +
                           std::to_string(offset) + ")"),
        code_(code),
        message_(message),
        offset_(offset) {}

  Errc code() const { return code_; }
  const std::string& message() const { return message_; }
  std::optional<std::size_t> offset() const { return offset_; }

 private:
  Errc code_;
  std::string message_;
  std::optional<std::size_t> offset_;
};

}  // namespace surflab
