#pragma once

// JSON and CSV interchange. Parse failures throw Error(kParse); numbers are
// written by nlohmann's shortest round-trip formatter (JSON) or %.17g (CSV).

#include <string>
#include <vector>

#include <json.hpp>

#include "acs.hpp"
#include "dbar.hpp"
#include "dominate.hpp"
#include "mhcalc.hpp"
#include "runge.hpp"

namespace dbarlab::io {

using Json = nlohmann::json;
// Keeps object keys in insertion order so emitted files read naturally.
using OrderedJson = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to kParse.
Json parse(const std::string& text);

/// %.17g.
std::string format_double(double v);

OrderedJson to_json(const MultiIndex& k);
MultiIndex multiindex_from_json(const Json& j);

OrderedJson to_json(const SumSpaceSpec& s);
SumSpaceSpec space_from_json(const Json& j);

OrderedJson to_json(const SumVector& x);
SumVector sumvector_from_json(const Json& j);

OrderedJson monomials_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& monomials);

/// {space, R, monomials}: a holomorphic polynomial on the sum space.
struct SumPolynomialInput {
  SumSpaceSpec space = SumSpaceSpec::single(1.0, 1);
  double radius = 1.0;
  Polynomial poly;
};
SumPolynomialInput sum_polynomial_from_json(const Json& j);

OrderedJson to_json(const MHExpansion& e);
MHExpansion expansion_from_json(const Json& j);

OrderedJson to_json(const PolyFunction& u);
PolyFunction polyfunction_from_json(const Json& j);

OrderedJson to_json(const PolyForm01& f);
PolyForm01 polyform_from_json(const Json& j);

OrderedJson to_json(const GForm01<Complex>& f);
GForm01<Complex> gform_from_json(const Json& j);

OrderedJson to_json(const Mat<Complex>& m);
Mat<Complex> mat_from_json(const Json& j, std::uint32_t m);

std::vector<Complex> complex_vector_from_json(const Json& j);
OrderedJson to_json(const std::vector<Complex>& v);

OrderedJson to_json(const GTangent<Complex>& v);
GTangent<Complex> tangent_from_json(const Json& j, std::uint32_t N, std::uint32_t m);

OrderedJson to_json(const DeltaResult& d);
OrderedJson to_json(const ApproximationCertificate& c);

std::string growth_csv(const std::vector<GrowthRow>& rows);
std::string residual_csv(const std::vector<ResidualRow>& rows);

}  // namespace dbarlab::io
