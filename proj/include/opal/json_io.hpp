#pragma once
// JSON readers and writers for the shared value types: Steenrod elements,
// graded modules, formal operation expressions, scenarios and certificates.
// Writers emit canonical key order and canonically sorted terms, so equal
// values serialize to identical bytes.  Readers validate shape and ranges
// and throw std::invalid_argument carrying a JSON-path location diagnostic.

#include <string>

#include "json.hpp"
#include "opal/opcalc.hpp"
#include "opal/realize.hpp"
#include "opal/ssq.hpp"
#include "opal/steenrod.hpp"
#include "opal/unstable.hpp"

namespace opal::json_io {

using json = nlohmann::ordered_json;

// {"p": int, "terms": [{"word": [e0, s1, e1, ...], "coeff": int}]}
// Words are the packed admissible form, listed in canonical monomial order.
json element_to_json(const steenrod::Element& e);
steenrod::Element element_from_json(const json& j);

// {"p": int, "basis": [{"name": str, "deg": int}], "lo": int, "hi": int,
//  "complete": bool, "beta": [[row, col, coeff], ...],
//  "powers": {"<i>": [[row, col, coeff], ...], ...}}
// "beta", "powers", "lo", "hi", "complete" may be omitted on input; the
// window defaults to the basis degree span.
json module_to_json(const unstable::GradedFpModule& m);
unstable::GradedFpModule module_from_json(const json& j);

// Nested operation expressions:
//   {"op": "Leaf", "side": "coh"|"hom", "name": str, "deg": int,
//    "weight": int, "susp": int [, "power": q, "bockstein": eps]}
//   {"op": "Leaf", "side": ..., "unit": true}
//   {"op": "DualQ", "side": ..., "index": r, "arg": {...}}
//   {"op": "DualBrowder", "side": ..., "level": m, "args": [...]}
//   {"op": "Star", "side": ..., "args": [...]}
//   {"op": "Sum", "terms": [{"coeff": c, "term": {...}}, ...]}
// On the homology side "DualQ" reads as the lower-indexed operation and
// "DualBrowder" as the iterated bracket; "Star" as the Pontryagin product.
// Upper-indexed homology operations have no serialization.
json mono_to_json(const opcalc::Mono& m);
opcalc::MonoPtr mono_from_json(const json& j);
json expr_to_json(const opcalc::Lin& l);
opcalc::Lin expr_from_json(const json& j);

json scenario_to_json(const ssq::SpectralScenario& sc);
ssq::SpectralScenario scenario_from_json(const json& j);

// {"kind": str, "params": {...}, "scenario": {...},
//  "steps": [{"name", "anchor", "check", "values", "pass", "margin"}, ...],
//  "verdict": str}
// "values" holds the relation with both sides, every recorded quantity, the
// notes, and the names of cited steps.
json certificate_to_json(const realize::Certificate& c);
realize::Certificate certificate_from_json(const json& j);

}  // namespace opal::json_io
