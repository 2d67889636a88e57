// SPDX-License-Identifier: Apache-2.0
// carnot: sub-Laplacians of nilpotent sub-Riemannian groups from the command line.
//
//   carnot validate group.json
//   carnot stratify group.json
//   carnot sublaplacian group.json
//   carnot equiv-frames frames.json
//   carnot heis-spectrum form.json
//   carnot heis-isometry form1.json form2.json
//   carnot analyze-map source.json target.json map.json
//   carnot verify source.json target.json map.json claim.json
//   carnot heis-group r1 [r2 ...]
//
// Exit status: 0 positive verdict, 1 negative verdict, 2 input error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "carnot/cli.hpp"

int main(int argc, char** argv) {
  using carnot::cli::Command;
  using carnot::cli::OutputFormat;

  CLI::App app{"Sub-Laplacians, conformal maps and Heisenberg classification"};
  app.require_subcommand(1);

  carnot::cli::RunConfig config;
  std::string format = "text";
  std::string out_path;
  app.add_option("--tol", config.tolerance, "Floating-point comparison tolerance")->capture_default_str();
  app.add_option("--probe-degree", config.probe_degree, "Maximal monomial probe degree")->capture_default_str();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::Validate, "Check antisymmetry and the Jacobi identity"},
      {Command::Stratify, "Bracket generation and stratification of the polarization"},
      {Command::Sublaplacian, "Sub-Laplacian in exponential coordinates"},
      {Command::EquivFrames, "Do two frames define the same sum-of-squares operator"},
      {Command::HeisSpectrum, "Symplectic spectrum of (omega, g)"},
      {Command::HeisIsometry, "Isometry decision and map between two Heisenberg structures"},
      {Command::AnalyzeMap, "Does a polynomial map commute with the sub-Laplacians"},
      {Command::Verify, "Check a claimed lambda^2 and b for a map"},
      {Command::HeisGroup, "Emit the group spec of H^n with scale factors r"},
  };
  std::vector<std::pair<CLI::App*, Command>> subcommands;
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(carnot::cli::command_name(command)), help);
    sub->add_option("inputs", config.inputs, "Input files")->required();
    sub->fallthrough();
    subcommands.emplace_back(sub, command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : carnot::cli::kInputError;
  }
  for (const auto& [sub, command] : subcommands)
    if (sub->parsed()) config.command = command;
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;

  carnot::cli::RunResult result = carnot::cli::run(config);
  if (out_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return carnot::cli::kInputError;
    }
    out << result.report;
  }
  return result.exit_code;
}
