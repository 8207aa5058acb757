#pragma once

#include <optional>
#include <string>

#include "resolvent/problem.hpp"

namespace resolvent {

enum class Command { Diagonalize, Resolve, Euler, Fitting, Check };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command c);

/// The machine-readable report: command echo, effective options, the embedded
/// problem and the result. Contains no timing, so equal inputs give equal bytes.
Json run_command(Command c, const Problem& p);

/// FNV-1a over the compact dump of everything but the digest field.
std::string report_digest(const Json& report);

std::string render_json(const Json& report);
std::string render_text(const Json& report);

struct CheckOutcome {
  bool ok = false;
  std::string checked;
  std::size_t certificates = 0;
  std::string reason;
};

/// Re-verifies every certificate in an emitted report from scratch, then
/// requires a fresh derivation to reproduce the report byte for byte.
CheckOutcome check_report(const std::string& report_text);

Json check_json(const CheckOutcome& outcome);
Json error_json(const std::string& code, const std::string& message);

}  // namespace resolvent
