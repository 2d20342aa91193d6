#include "ncorr/error.hpp"

namespace ncorr {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::PoleAtZero: return "PoleAtZero";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::PoleOfGamma: return "PoleOfGamma";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DomainError: return "DomainError";
    case Errc::CutoffTooSmall: return "CutoffTooSmall";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::StripViolation: return "StripViolation";
    case Errc::LocalPole: return "LocalPole";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::DenominatorNearZero: return "DenominatorNearZero";
    case Errc::TooLarge: return "TooLarge";
    case Errc::SideConditionViolated: return "SideConditionViolated";
    case Errc::PoleCollision: return "PoleCollision";
    case Errc::ImaginaryResidue: return "ImaginaryResidue";
    case Errc::ProbeNotIsolated: return "ProbeNotIsolated";
    case Errc::NotAscending: return "NotAscending";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::WindowEmpty: return "WindowEmpty";
    case Errc::SupportTooWide: return "SupportTooWide";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
    case Errc::MissingInput: return "MissingInput";
  }
  return "Unknown";
}

static std::string tag(Errc c, const std::string& what) {
  return std::string(errc_name(c)) + ": " + what;
}

Error::Error(Errc code, const std::string& what) : std::runtime_error(tag(code, what)), code_(code) {}

Error::Error(Errc code, const std::string& what, LaurentData laurent)
    : std::runtime_error(tag(code, what)), code_(code), laurent_(std::move(laurent)) {}

Error::Error(Errc code, const std::string& what, long line)
    : std::runtime_error(tag(code, what) + " (line " + std::to_string(line) + ")"), code_(code), line_(line) {}

}  // namespace ncorr
