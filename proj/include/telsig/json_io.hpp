#ifndef TELSIG_JSON_IO_HPP
#define TELSIG_JSON_IO_HPP

#include <json.hpp>

#include "telsig/curve.hpp"
#include "telsig/poly.hpp"
#include "telsig/semigroup.hpp"
#include "telsig/series.hpp"

namespace telsig {

using json = nlohmann::json;

// Canonical forms: terms in ascending exponent order, all big numbers as
// decimal strings, object keys sorted (nlohmann's default map).  Parsing an
// emitted report and re-serializing is byte-identical.
json poly_to_json(const GradedPoly& p);
GradedPoly poly_from_json(const json& j, const VarTablePtr& vars);

json vartable_to_json(const VarTable& t);
VarTablePtr vartable_from_json(const json& j);

json series_to_json(const Series& s);
Series series_from_json(const json& j, const VarTablePtr& vars);

json semigroup_report(const std::vector<long>& a);

std::string dump_canonical(const json& j);

} // namespace telsig

#endif
