#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncorr {

enum class Errc {
  PoleAtZero,
  PoleAtOne,
  PoleOfGamma,
  ZeroDenominator,
  DomainError,
  CutoffTooSmall,
  ArityMismatch,
  StripViolation,
  LocalPole,
  QuadratureNotConverged,
  DenominatorNearZero,
  TooLarge,
  SideConditionViolated,
  PoleCollision,
  ImaginaryResidue,
  ProbeNotIsolated,
  NotAscending,
  ParseError,
  EmptyFile,
  WindowEmpty,
  SupportTooWide,
  InvalidArgument,
  IoError,
  MissingInput,
};

const char* errc_name(Errc c) noexcept;

// Laurent data attached to a pole signal: coefficients c_{-order}..c_{0}
// of the expansion around `location`.
struct LaurentData {
  std::complex<double> location{};
  int order = 1;
  std::vector<std::complex<double>> coefficients;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Error(Errc code, const std::string& what, LaurentData laurent);
  Error(Errc code, const std::string& what, long line);

  Errc code() const noexcept { return code_; }
  const std::optional<LaurentData>& laurent() const noexcept { return laurent_; }
  // 1-based line number for table parsing errors, -1 otherwise.
  long line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<LaurentData> laurent_;
  long line_ = -1;
};

}  // namespace ncorr
