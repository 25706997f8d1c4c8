#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratenet {

enum class Errc {
  // configuration problems (CLI exit code 2)
  InvalidArgument,
  IrregularDegree,
  SelfLoop,
  BadBand,
  NonInvariantTopology,
  ZeroInDegree,
  NotFullyConnected,
  NotPSD,
  AmbiguousBranch,
  // numerical failures (CLI exit code 3)
  NoRoot,
  RealnessViolation,
  DegenerateVariance,
  NumericalBlowup,
  DegenerateMoment,
  NoSolution,
  NonConvergent,
  Overflow,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IrregularDegree: return "IrregularDegree";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::BadBand: return "BadBand";
    case Errc::NonInvariantTopology: return "NonInvariantTopology";
    case Errc::ZeroInDegree: return "ZeroInDegree";
    case Errc::NotFullyConnected: return "NotFullyConnected";
    case Errc::NotPSD: return "NotPSD";
    case Errc::AmbiguousBranch: return "AmbiguousBranch";
    case Errc::NoRoot: return "NoRoot";
    case Errc::RealnessViolation: return "RealnessViolation";
    case Errc::DegenerateVariance: return "DegenerateVariance";
    case Errc::NumericalBlowup: return "NumericalBlowup";
    case Errc::DegenerateMoment: return "DegenerateMoment";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NonConvergent: return "NonConvergent";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

inline bool is_config_error(Errc c) { return c <= Errc::AmbiguousBranch; }

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class IrregularDegreeError : public Error {
 public:
  IrregularDegreeError(std::vector<std::size_t> rows, const std::string& what)
      : Error(Errc::IrregularDegree, what), rows_(std::move(rows)) {}
  // rows whose in-degree differs from the most common one
  const std::vector<std::size_t>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::size_t> rows_;
};

}  // namespace ratenet
