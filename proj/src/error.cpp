#include "hyperlap/error.hpp"

namespace hyperlap {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_identifier: return "UnknownIdentifier";
    case Errc::improper_cone: return "ImproperCone";
    case Errc::empty_hpc: return "EmptyHPC";
    case Errc::domain_error: return "DomainError";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::support_leak: return "SupportLeak";
    case Errc::growth_mismatch: return "GrowthMismatch";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::missing_damping_certificate: return "MissingDampingCertificate";
    case Errc::margin_violation: return "MarginViolation";
    case Errc::out_of_region: return "OutOfRegion";
    case Errc::growth_certificate_fail: return "GrowthCertificateFail";
    case Errc::convergence_fail: return "ConvergenceFail";
    case Errc::zero_operator: return "ZeroOperator";
    case Errc::degree_overflow: return "DegreeOverflow";
    case Errc::coefficient_mismatch: return "CoefficientMismatch";
    case Errc::solvability_fail: return "SolvabilityFail";
    case Errc::pole_on_chain: return "PoleOnChain";
    case Errc::cap_too_small: return "CapTooSmall";
    case Errc::unsupported: return "Unsupported";
    case Errc::config_error: return "ConfigError";
  }
  return "Error";
}

}  // namespace hyperlap
