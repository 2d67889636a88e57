// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carnot/algebra.hpp"
#include "carnot/conformal.hpp"
#include "carnot/heisenberg.hpp"
#include "carnot/operators.hpp"
#include "carnot/polynomial.hpp"

// JSON spec files. Rationals are strings ("3", "-1/2"); basis indices are
// 1-based. Errors are SpecError naming the offending field path.
//
//   group:   {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}],
//             "polarization": [["1","0","0"], ["0","1","0"]], "metric": [["1","0"], ["0","1"]]}
//   map:     {"source_dim": 3, "target_dim": 2, "components": ["x1", "x2"]}
//   form:    {"omega": [[...]], "gram": [[...]]}
//   frames:  {"frame_x": [[...], ...], "frame_y": [[...], ...]}
//   claim:   {"lambda_sq": "1", "b": ["0", "0"]}
namespace carnot::io {

using Json = nlohmann::json;

Json read_json(const std::string& path);

Rational rational_at(const Json& j, const std::string& where);
RatVector vector_at(const Json& j, const std::string& where);
RatMatrix matrix_at(const Json& j, const std::string& where);

/// Raw table, so that files violating the axioms can still be reported on.
StructureTable parse_structure(const Json& spec);
Polarization parse_polarization(const Json& spec, std::size_t dim);
/// Requires `polarization`; `metric` defaults to the identity.
SubRiemannianGroup parse_group(const Json& spec);
PolyMap parse_map(const Json& spec);
/// Accepts a form file or a Heisenberg-type group spec.
HeisenbergData parse_symplectic(const Json& spec);

struct Frames {
  std::vector<RatVector> x, y;
};
Frames parse_frames(const Json& spec);

struct Claim {
  Polynomial lambda_sq;
  PolyVector b;
};
Claim parse_claim(const Json& spec, std::size_t source_dim, std::size_t target_dim);

Json to_json(const Rational& q);
Json to_json(const RatVector& v);
Json to_json(const RatMatrix& m);
Json to_json(const PolyVector& v);
Json group_to_json(const SubRiemannianGroup& group);
Json map_to_json(const PolyMap& f);

/// {"dim": n, "terms": [{"derivative": [multi-index], "coefficient": "poly"}]}.
/// A mixed derivative d_a d_b carries the full coefficient 2 * second_order(a, b).
Json operator_to_json(const DifferentialOperator& op);
DifferentialOperator operator_from_json(const Json& spec);

Json report_to_json(const CommutationReport& report);

}  // namespace carnot::io
