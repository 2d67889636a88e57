// SPDX-License-Identifier: Apache-2.0
#include "carnot/cli.hpp"

#include <array>
#include <cstdio>
#include <sstream>

#include "carnot/conformal.hpp"
#include "carnot/heisenberg.hpp"
#include "carnot/operators.hpp"
#include "carnot/spec_io.hpp"

namespace carnot::cli {

namespace {

using io::Json;

struct CommandInfo {
  Command command;
  std::string_view name;
  std::optional<std::size_t> inputs;
};

constexpr std::array<CommandInfo, 9> kCommands{{
    {Command::Validate, "validate", 1},
    {Command::Stratify, "stratify", 1},
    {Command::Sublaplacian, "sublaplacian", 1},
    {Command::EquivFrames, "equiv-frames", 1},
    {Command::HeisSpectrum, "heis-spectrum", 1},
    {Command::HeisIsometry, "heis-isometry", 2},
    {Command::AnalyzeMap, "analyze-map", 3},
    {Command::Verify, "verify", 4},
    {Command::HeisGroup, "heis-group", std::nullopt},
}};

struct Outcome {
  int exit_code;
  Json doc;  // always carries "verdict"
};

std::string decimal(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", x);
  return buffer;
}

Json decimals(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(decimal(x));
  return out;
}

Json decimals(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(decimal(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Outcome run_validate(const RunConfig& config) {
  StructureTable table = io::parse_structure(io::read_json(config.inputs[0]));
  ValidationReport report = validate(table);
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(v.describe());
  return {report.valid() ? kPositive : kNegative,
          {{"verdict", report.valid() ? "valid" : "invalid"}, {"dim", table.dim()}, {"violations", violations}}};
}

Outcome run_stratify(const RunConfig& config) {
  Json spec = io::read_json(config.inputs[0]);
  StructureTable table = io::parse_structure(spec);
  ValidationReport report = validate(table);
  if (!report.valid()) throw SpecError("brackets", "not a Lie algebra: " + report.violations.front().describe());
  LieAlgebra algebra(table);
  Polarization first = io::parse_polarization(spec, algebra.dim());
  BracketGeneration generation = bracket_generating(algebra, first);
  Json doc = {{"generating", generation.generating}, {"filtration", generation.filtration}};
  try {
    Strata strata = stratify(algebra, first);
    Json layers = Json::array();
    for (const auto& layer : strata) {
      Json vectors = Json::array();
      for (const auto& v : layer) vectors.push_back(io::to_json(v));
      layers.push_back(vectors);
    }
    doc["verdict"] = "stratified";
    doc["layers"] = layers;
    return {kPositive, doc};
  } catch (const NotStratifiable& e) {
    doc["verdict"] = "not-stratifiable";
    doc["reason"] = e.what();
    return {kNegative, doc};
  }
}

Outcome run_sublaplacian(const RunConfig& config) {
  SubRiemannianGroup group = io::parse_group(io::read_json(config.inputs[0]));
  Json doc = io::operator_to_json(sublaplacian(group));
  doc["verdict"] = "ok";
  return {kPositive, doc};
}

Outcome run_equiv_frames(const RunConfig& config) {
  io::Frames frames = io::parse_frames(io::read_json(config.inputs[0]));
  FrameEquivalence result = frames_equivalent(frames.x, frames.y);
  Json doc = {{"verdict", result.equivalent ? "equivalent" : "not-equivalent"}};
  doc["witness"] = result.witness ? io::to_json(*result.witness) : Json(nullptr);
  return {result.equivalent ? kPositive : kNegative, doc};
}

Outcome run_heis_spectrum(const RunConfig& config) {
  HeisenbergData data = io::parse_symplectic(io::read_json(config.inputs[0]));
  SymplecticSpectrum spectrum = symplectic_spectrum(data.omega, data.metric, config.tolerance);
  return {kPositive,
          {{"verdict", "ok"}, {"n", data.omega.half()}, {"r", decimals(spectrum.r)}, {"tolerance", spectrum.tolerance}}};
}

Outcome run_heis_isometry(const RunConfig& config) {
  HeisenbergData a = io::parse_symplectic(io::read_json(config.inputs[0]));
  HeisenbergData b = io::parse_symplectic(io::read_json(config.inputs[1]));
  if (a.omega.size() != b.omega.size()) throw DimensionMismatch("the two forms have different dimensions");
  Json doc = {{"r1", decimals(symplectic_spectrum(a.omega, a.metric, config.tolerance).r)},
              {"r2", decimals(symplectic_spectrum(b.omega, b.metric, config.tolerance).r)},
              {"tolerance", config.tolerance}};
  auto rho = isometry_decision(a.omega, a.metric, b.omega, b.metric, config.tolerance);
  if (!rho) {
    doc["verdict"] = "not-isometric";
    doc["rho"] = nullptr;
    doc["reason"] = "no rho: spectra are not proportional";
    return {kNegative, doc};
  }
  HeisenbergIsometry iso = build_isometry(a.omega, a.metric, b.omega, b.metric, config.tolerance);
  doc["verdict"] = "isometric";
  doc["rho"] = decimal(iso.rho);
  doc["psi"] = decimals(iso.psi);
  doc["metric_residual"] = iso.metric_residual;
  doc["form_residual"] = iso.form_residual;
  return {kPositive, doc};
}

Outcome run_analyze_map(const RunConfig& config) {
  SubRiemannianGroup g = io::parse_group(io::read_json(config.inputs[0]));
  SubRiemannianGroup h = io::parse_group(io::read_json(config.inputs[1]));
  PolyMap f = io::parse_map(io::read_json(config.inputs[2]));
  if (f.source_dim() != g.dim() || f.target_dim() != h.dim())
    throw DimensionMismatch("map dimensions do not match the groups");
  CommutationReport report = analyze_commutation(f, g, h, config.probe_degree);
  return {report.conformal ? kPositive : kNegative, io::report_to_json(report)};
}

Outcome run_verify(const RunConfig& config) {
  SubRiemannianGroup g = io::parse_group(io::read_json(config.inputs[0]));
  SubRiemannianGroup h = io::parse_group(io::read_json(config.inputs[1]));
  PolyMap f = io::parse_map(io::read_json(config.inputs[2]));
  if (f.source_dim() != g.dim() || f.target_dim() != h.dim())
    throw DimensionMismatch("map dimensions do not match the groups");
  io::Claim claim = io::parse_claim(io::read_json(config.inputs[3]), g.dim(), h.dim());
  auto residuals = verify_commutation_identity(f, g, h, claim.lambda_sq, claim.b, config.probe_degree);
  Json list = Json::array();
  for (const auto& r : residuals) list.push_back({{"where", r.where}, {"value", r.value.to_string()}});
  return {residuals.empty() ? kPositive : kNegative,
          {{"verdict", residuals.empty() ? "verified" : "refuted"}, {"residuals", list}}};
}

Outcome run_heis_group(const RunConfig& config) {
  RatVector r;
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    try {
      r.push_back(parse_rational(config.inputs[i]));
    } catch (const SpecError& e) {
      throw SpecError("r[" + std::to_string(i + 1) + "]", e.what());
    }
  }
  Json doc = io::group_to_json(heisenberg_group(r.size(), r));
  doc["verdict"] = "ok";
  return {kPositive, doc};
}

Outcome dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::Validate: return run_validate(config);
    case Command::Stratify: return run_stratify(config);
    case Command::Sublaplacian: return run_sublaplacian(config);
    case Command::EquivFrames: return run_equiv_frames(config);
    case Command::HeisSpectrum: return run_heis_spectrum(config);
    case Command::HeisIsometry: return run_heis_isometry(config);
    case Command::AnalyzeMap: return run_analyze_map(config);
    case Command::Verify: return run_verify(config);
    case Command::HeisGroup: return run_heis_group(config);
  }
  throw std::logic_error("unknown command");
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void write_text(std::ostringstream& out, const Json& doc, const std::string& indent) {
  for (auto& [key, value] : doc.items()) {
    if (indent.empty() && key == "verdict") continue;
    if (value.is_array() && !value.empty() && (value[0].is_object() || value[0].is_array())) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        if (item.is_object()) {
          std::string line;
          for (auto& [k, v] : item.items()) line += (line.empty() ? "" : "  ") + k + "=" + scalar_text(v);
          out << indent << "  " << line << "\n";
        } else {
          out << indent << "  " << item.dump() << "\n";
        }
      }
    } else if (value.is_array()) {
      out << indent << key << ": [";
      for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar_text(value[i]);
      out << "]\n";
    } else if (value.is_object()) {
      out << indent << key << ":\n";
      write_text(out, value, indent + "  ");
    } else {
      out << indent << key << ": " << scalar_text(value) << "\n";
    }
  }
}

std::string render(const RunConfig& config, const Json& doc) {
  if (config.format == OutputFormat::Json) return doc.dump(2) + "\n";
  std::ostringstream out;
  out << "verdict: " << scalar_text(doc.at("verdict")) << "\n";
  write_text(out, doc, "");
  return out.str();
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& info : kCommands)
    if (info.name == name) return info.command;
  return std::nullopt;
}

std::string_view command_name(Command command) {
  for (const auto& info : kCommands)
    if (info.command == command) return info.name;
  return "unknown";
}

std::optional<std::size_t> input_count(Command command) {
  for (const auto& info : kCommands)
    if (info.command == command) return info.inputs;
  return std::nullopt;
}

RunResult run(const RunConfig& config) {
  auto error = [&](const std::string& kind, const std::string& message) {
    Json doc = {{"verdict", "error"}, {"command", command_name(config.command)}, {"error", kind}, {"message", message}};
    return RunResult{kInputError, render(config, doc)};
  };
  if (!(config.tolerance > 0)) return error("config", "tolerance must be positive");
  if (config.probe_degree < 2) return error("config", "probe degree must be at least 2");
  auto expected = input_count(config.command);
  if (expected ? config.inputs.size() != *expected : config.inputs.empty())
    return error("config", "wrong number of inputs for " + std::string(command_name(config.command)));
  try {
    Outcome outcome = dispatch(config);
    outcome.doc["command"] = command_name(config.command);
    return {outcome.exit_code, render(config, outcome.doc)};
  } catch (const NotNilpotent& e) {
    Json doc = {{"verdict", "not-nilpotent"}, {"command", command_name(config.command)}, {"reason", e.what()}};
    return {kNegative, render(config, doc)};
  } catch (const SpecError& e) {
    return error("spec", e.what());
  } catch (const DimensionMismatch& e) {
    return error("dimension", e.what());
  } catch (const std::invalid_argument& e) {
    return error("input", e.what());
  } catch (const std::runtime_error& e) {
    return error("input", e.what());
  } catch (const std::exception& e) {
    return error("internal", e.what());
  }
}

}  // namespace carnot::cli
