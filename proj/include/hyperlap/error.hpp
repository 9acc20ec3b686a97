#pragma once

#include <stdexcept>
#include <string>

namespace hyperlap {

enum class Errc {
  syntax_error,
  unknown_identifier,
  improper_cone,
  empty_hpc,
  domain_error,
  domain_mismatch,
  support_leak,
  growth_mismatch,
  no_convergence,
  missing_damping_certificate,
  margin_violation,
  out_of_region,
  growth_certificate_fail,
  convergence_fail,
  zero_operator,
  degree_overflow,
  coefficient_mismatch,
  solvability_fail,
  pole_on_chain,
  cap_too_small,
  unsupported,
  config_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parser errors carry the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(Errc::syntax_error, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hyperlap
