#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resolvent/error.hpp"
#include "resolvent/report.hpp"

using namespace resolvent;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& doc, const std::string& format) {
  std::cout << (format == "text" ? render_text(doc) : render_json(doc));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact blowup towers, diagonalization certificates and Euler numbers"};
  app.require_subcommand(1);
  std::string input, format = "json";
  ParamOverrides overrides;
  std::string order;
  std::size_t max_depth = 0;
  long degree_cap = 0;
  std::uint64_t seed = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"diagonalize", "Blow up until a matrix diagonalizes and print per-leaf certificates"},
      {"resolve", "Resolve a complex level by level and certify its kernel"},
      {"euler", "Euler number of a graded row map on P1, P2 or a blown-up P2"},
      {"fitting", "Fitting ideals of a presentation"},
      {"check", "Re-verify a report emitted by this tool"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", input, "problem file (report file for check)")->required();
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    if (name == "check") continue;
    sub->add_option("--order", order, "monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
    sub->add_option("--max-depth", max_depth, "blowup depth limit");
    sub->add_option("--degree-cap", degree_cap, "syzygy degree search limit");
    sub->add_option("--seed", seed, "seed for generator order and pivot mixing");
  }
  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = app.get_subcommands().front();
  const Command cmd = *parse_command(chosen->get_name());
  if (cmd != Command::Check) {
    if (chosen->count("--order")) overrides.order = order;
    if (chosen->count("--max-depth")) overrides.max_depth = max_depth;
    if (chosen->count("--degree-cap")) overrides.degree_cap = degree_cap;
    if (chosen->count("--seed")) overrides.seed = seed;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    const std::string text = slurp(input);
    if (cmd == Command::Check) {
      auto outcome = check_report(text);
      emit(check_json(outcome), format);
      status = outcome.ok ? 0 : exit_code_for(ErrorCode::Verification);
    } else {
      Problem p = load_problem_text(text, overrides);
      emit(run_command(cmd, p), format);
    }
  } catch (const Error& e) {
    emit(error_json(to_string(e.code()), e.what()), format);
    std::cerr << "resolvent: " << to_string(e.code()) << ": " << e.what() << "\n";
    status = exit_code_for(e.code());
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cerr << "resolvent: " << chosen->get_name() << " finished in " << ms.count() << " ms\n";
  return status;
}
