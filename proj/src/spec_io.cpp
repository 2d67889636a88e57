// SPDX-License-Identifier: Apache-2.0
#include "carnot/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace carnot::io {

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw SpecError(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw SpecError(where.empty() ? name : where + "." + name, "missing field");
  return *it;
}

std::string path(const std::string& where, const char* name) { return where.empty() ? name : where + "." + name; }
std::string path(const std::string& where, std::size_t index) { return where + "[" + std::to_string(index) + "]"; }

std::size_t positive_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SpecError(where, "expected a positive integer");
  return j.get<std::size_t>();
}

Polynomial polynomial_at(const Json& j, std::size_t nvars, const std::string& where) {
  if (!j.is_string()) throw SpecError(where, "expected a polynomial string");
  try {
    return Polynomial::parse(j.get<std::string>(), nvars);
  } catch (const SpecError& e) {
    throw SpecError(where, e.what());
  }
}

std::size_t index_at(const Json& j, std::size_t dim, const std::string& where) {
  std::size_t i = positive_at(j, where);
  if (i > dim) throw SpecError(where, "index " + std::to_string(i) + " exceeds dim " + std::to_string(dim));
  return i - 1;
}

std::vector<BracketEntry> parse_brackets(const Json& spec, std::size_t dim) {
  std::vector<BracketEntry> entries;
  auto it = spec.find("brackets");
  if (it == spec.end()) return entries;
  if (!it->is_array()) throw SpecError("brackets", "expected a list");
  for (std::size_t e = 0; e < it->size(); ++e) {
    const std::string where = path("brackets", e);
    const Json& entry = (*it)[e];
    BracketEntry b;
    b.i = index_at(field(entry, "i", where), dim, path(where, "i"));
    b.j = index_at(field(entry, "j", where), dim, path(where, "j"));
    const Json& coeffs = field(entry, "coeffs", where);
    if (!coeffs.is_object()) throw SpecError(path(where, "coeffs"), "expected an object keyed by basis index");
    for (auto& [key, value] : coeffs.items()) {
      const std::string at = path(where, "coeffs") + "." + key;
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        long long parsed = std::stoll(key, &used);
        if (used != key.size() || parsed < 1) throw std::invalid_argument(key);
        k = static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
        throw SpecError(at, "expected a positive basis index as key");
      }
      if (k > dim) throw SpecError(at, "index exceeds dim");
      b.coeffs.emplace_back(k - 1, rational_at(value, at));
    }
    entries.push_back(std::move(b));
  }
  return entries;
}

std::size_t dim_of(const Json& spec) {
  if (!spec.is_object()) throw SpecError("", "expected a JSON object");
  return positive_at(field(spec, "dim", ""), "dim");
}

std::vector<RatVector> vectors_at(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw SpecError(where, "expected a list of vectors");
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    RatVector v = vector_at(j[i], path(where, i));
    if (v.size() != dim) throw SpecError(path(where, i), "expected " + std::to_string(dim) + " entries");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Json read_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw SpecError(file, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw SpecError(file + ":" + std::to_string(line), e.what());
  }
}

Rational rational_at(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw SpecError(where, "expected a rational string such as \"-3/4\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const SpecError& e) {
    throw SpecError(where, e.what());
  }
}

RatVector vector_at(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SpecError(where, "expected a list of rationals");
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_at(j[i], path(where, i)));
  return v;
}

RatMatrix matrix_at(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SpecError(where, "expected a nonempty list of rows");
  std::vector<RatVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_at(j[i], path(where, i)));
    if (rows.back().size() != rows.front().size()) throw SpecError(path(where, i), "rows differ in length");
  }
  return RatMatrix::from_rows(rows, rows.front().size());
}

StructureTable parse_structure(const Json& spec) {
  const std::size_t dim = dim_of(spec);
  return StructureTable::from_entries(dim, parse_brackets(spec, dim));
}

Polarization parse_polarization(const Json& spec, std::size_t dim) {
  std::vector<RatVector> basis = vectors_at(field(spec, "polarization", ""), dim, "polarization");
  if (basis.empty()) throw SpecError("polarization", "expected at least one vector");
  if (span_rank(basis, dim) != basis.size()) throw SpecError("polarization", "vectors are linearly dependent");
  return Polarization(dim, std::move(basis));
}

SubRiemannianGroup parse_group(const Json& spec) {
  const std::size_t dim = dim_of(spec);
  StructureTable table = StructureTable::from_entries(dim, parse_brackets(spec, dim));
  ValidationReport report = validate(table);
  if (!report.valid()) throw SpecError("brackets", "not a Lie algebra: " + report.violations.front().describe());
  LieAlgebra algebra(table);

  Polarization polarization = parse_polarization(spec, dim);

  RatMatrix gram = RatMatrix::identity(polarization.size());
  if (auto it = spec.find("metric"); it != spec.end()) {
    gram = matrix_at(*it, "metric");
    if (gram.rows() != polarization.size() || gram.cols() != polarization.size())
      throw SpecError("metric", "Gram matrix must be " + std::to_string(polarization.size()) + " x " +
                                    std::to_string(polarization.size()));
    if (!is_symmetric(gram) || !is_positive_definite(gram))
      throw SpecError("metric", "Gram matrix must be symmetric positive definite");
  }
  try {
    return SubRiemannianGroup(std::move(algebra), std::move(polarization), Metric(std::move(gram)));
  } catch (const InvalidAlgebra& e) {
    throw SpecError("polarization", e.what());
  }
}

PolyMap parse_map(const Json& spec) {
  if (!spec.is_object()) throw SpecError("", "expected a JSON object");
  const std::size_t source_dim = positive_at(field(spec, "source_dim", ""), "source_dim");
  const Json& components = field(spec, "components", "");
  if (!components.is_array() || components.empty()) throw SpecError("components", "expected a nonempty list");
  if (auto it = spec.find("target_dim"); it != spec.end() && positive_at(*it, "target_dim") != components.size())
    throw SpecError("target_dim", "does not match the number of components");
  PolyVector polys;
  for (std::size_t i = 0; i < components.size(); ++i)
    polys.push_back(polynomial_at(components[i], source_dim, path("components", i)));
  return PolyMap(source_dim, std::move(polys));
}

HeisenbergData parse_symplectic(const Json& spec) {
  if (spec.is_object() && spec.contains("dim")) {
    SubRiemannianGroup group = parse_group(spec);
    try {
      return heisenberg_data(group);
    } catch (const std::invalid_argument& e) {
      throw SpecError("brackets", e.what());
    }
  }
  RatMatrix omega = matrix_at(field(spec, "omega", ""), "omega");
  RatMatrix gram = matrix_at(field(spec, "gram", ""), "gram");
  if (omega.rows() != gram.rows() || omega.cols() != gram.cols())
    throw SpecError("gram", "dimension differs from omega");
  if (!is_symmetric(gram) || !is_positive_definite(gram))
    throw SpecError("gram", "must be symmetric positive definite");
  try {
    return HeisenbergData{SymplecticForm(std::move(omega)), Metric(std::move(gram))};
  } catch (const std::exception& e) {
    throw SpecError("omega", e.what());
  }
}

Frames parse_frames(const Json& spec) {
  if (!spec.is_object()) throw SpecError("", "expected a JSON object");
  const Json& x = field(spec, "frame_x", "");
  if (!x.is_array() || x.empty() || !x[0].is_array()) throw SpecError("frame_x", "expected a nonempty list of vectors");
  const std::size_t dim = x[0].size();
  Frames out;
  out.x = vectors_at(x, dim, "frame_x");
  out.y = vectors_at(field(spec, "frame_y", ""), dim, "frame_y");
  if (out.x.size() != out.y.size()) throw SpecError("frame_y", "frames have different sizes");
  return out;
}

Claim parse_claim(const Json& spec, std::size_t source_dim, std::size_t target_dim) {
  if (!spec.is_object()) throw SpecError("", "expected a JSON object");
  Claim out;
  out.lambda_sq = polynomial_at(field(spec, "lambda_sq", ""), source_dim, "lambda_sq");
  const Json& b = field(spec, "b", "");
  if (!b.is_array() || b.size() != target_dim)
    throw SpecError("b", "expected " + std::to_string(target_dim) + " polynomial strings");
  for (std::size_t i = 0; i < b.size(); ++i) out.b.push_back(polynomial_at(b[i], source_dim, path("b", i)));
  return out;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const PolyVector& v) {
  Json out = Json::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

Json group_to_json(const SubRiemannianGroup& group) {
  Json brackets = Json::array();
  for (const auto& [ij, coeffs] : group.algebra().constants()) {
    Json c = Json::object();
    for (const auto& [k, q] : coeffs) c[std::to_string(k + 1)] = to_string(q);
    brackets.push_back({{"i", ij.first + 1}, {"j", ij.second + 1}, {"coeffs", c}});
  }
  Json polarization = Json::array();
  for (const auto& v : group.polarization().basis()) polarization.push_back(to_json(v));
  return {{"dim", group.dim()},
          {"brackets", brackets},
          {"polarization", polarization},
          {"metric", to_json(group.metric().gram())}};
}

Json map_to_json(const PolyMap& f) {
  return {{"source_dim", f.source_dim()}, {"target_dim", f.target_dim()}, {"components", f.to_strings()}};
}

Json operator_to_json(const DifferentialOperator& op) {
  const std::size_t n = op.dim();
  Json terms = Json::array();
  auto emit = [&](std::vector<unsigned> derivative, const Polynomial& c) {
    if (!c.is_zero()) terms.push_back({{"derivative", std::move(derivative)}, {"coefficient", c.to_string()}});
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      std::vector<unsigned> d(n, 0);
      ++d[a];
      ++d[b];
      emit(d, a == b ? op.second_order(a, a) : Rational(2) * op.second_order(a, b));
    }
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<unsigned> d(n, 0);
    d[a] = 1;
    emit(d, op.first_order[a]);
  }
  emit(std::vector<unsigned>(n, 0), op.zero_order);
  return {{"dim", n}, {"terms", terms}};
}

DifferentialOperator operator_from_json(const Json& spec) {
  const std::size_t n = dim_of(spec);
  DifferentialOperator op = DifferentialOperator::zero(n);
  const Json& terms = field(spec, "terms", "");
  if (!terms.is_array()) throw SpecError("terms", "expected a list");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = path("terms", t);
    const Json& d = field(terms[t], "derivative", where);
    if (!d.is_array() || d.size() != n) throw SpecError(path(where, "derivative"), "expected a multi-index of length dim");
    std::vector<std::size_t> vars;
    for (std::size_t a = 0; a < n; ++a) {
      if (!d[a].is_number_unsigned()) throw SpecError(path(where, "derivative"), "expected nonnegative integers");
      for (unsigned k = 0; k < d[a].get<unsigned>(); ++k) vars.push_back(a);
    }
    Polynomial c = polynomial_at(field(terms[t], "coefficient", where), n, path(where, "coefficient"));
    if (vars.empty()) {
      op.zero_order += c;
    } else if (vars.size() == 1) {
      op.first_order[vars[0]] += c;
    } else if (vars.size() == 2) {
      if (vars[0] == vars[1]) {
        op.second_order(vars[0], vars[0]) += c;
      } else {
        Polynomial half = Rational(1, 2) * c;
        op.second_order(vars[0], vars[1]) += half;
        op.second_order(vars[1], vars[0]) += half;
      }
    } else {
      throw SpecError(path(where, "derivative"), "order exceeds two");
    }
  }
  return op;
}

Json report_to_json(const CommutationReport& report) {
  Json out = {{"verdict", report.conformal ? "conformal" : "not-conformal"},
              {"contact", report.contact},
              {"conformal", report.conformal},
              {"probes_checked", report.probes_checked}};
  out["lambda_sq"] = report.lambda_sq ? Json(report.lambda_sq->to_string()) : Json(nullptr);
  out["b"] = report.conformal ? to_json(report.b) : Json(nullptr);
  Json residuals = Json::array();
  for (const auto& r : report.residuals) residuals.push_back({{"where", r.where}, {"value", r.value.to_string()}});
  out["residuals"] = residuals;
  return out;
}

}  // namespace carnot::io
