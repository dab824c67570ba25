#pragma once

#include <string>

#include <json.hpp>

#include "finabel/independence.hpp"
#include "finabel/theorems.hpp"

namespace finabel {

/// Order-preserving JSON document type: objects keep insertion order, which
/// together with single-threaded emission makes every report byte-stable.
using Json = nlohmann::ordered_json;

/// Wire formats (all lossless, all exact):
///   Group        {"moduli": [4, 2]}
///   Element      [3, 1]                       (coordinate vector)
///   Rat          "3/8"                         (always a string)
///   Cyclo        "3/8" when rational, else {"zeta": m, "coeffs": ["0", "1/2", ...]}
///                with coeffs the canonical-basis coordinates in Q(zeta_m)
///   Subgroup     {"generators": [...], "members": [...], "order": n}
///   Homomorphism {"matrix": [[...], ...]}      (rows = codomain coordinates)
///   FormSystem   {"n": ..., "k": ..., "coeffs": [[matrix, ...], ...]}
///                with row index = form, column index = variable
///   Distribution {"group": ..., "pmf": [mass, ...]} indexed by element index
Json to_json(const Group& g);
Json to_json(const Element& e);
Json to_json(const Rat& r);
Json to_json(const Cyclo& c);
Json to_json(const Subgroup& s);
Json to_json(const Homomorphism& h);
Json to_json(const FormSystem& fs);
Json to_json(const Distribution& d);
Json to_json(const CharFnTable& t);
Json to_json(const IdempotentClassification& c);
Json to_json(const IndependenceReport& r);
Json to_json(const Thm1Violation& v);
Json to_json(const VerificationReport& r);
Json to_json(const Corollary1Report& r);
Json to_json(const CounterexampleBundle& b);

/// Parsers. Shape problems throw Errc::parse_error with a message that names
/// the offending field by path; semantic problems (bad moduli, masses that do
/// not sum to one, ...) propagate the owning validator's error unchanged.
Group group_from_json(const Json& j, const std::string& path = "group");
Element element_from_json(const Group& g, const Json& j,
                          const std::string& path = "element");
Rat rat_from_json(const Json& j, const std::string& path = "value");
Cyclo cyclo_from_json(const Json& j, const std::string& path = "value");
Subgroup subgroup_from_json(const Group& g, const Json& j,
                            const std::string& path = "subgroup");
/// Accepts {"matrix": rows} or bare rows; the result is an endomorphism of g.
Homomorphism homomorphism_from_json(const Group& g, const Json& j,
                                    const std::string& path = "homomorphism");
FormSystem form_system_from_json(const Group& g, const Json& j,
                                 const std::string& path = "forms");
/// Standalone document with an embedded "group" field.
Distribution distribution_from_json(const Json& j,
                                    const std::string& path = "distribution");
/// Against a known group: accepts a bare pmf array or a full document (whose
/// embedded group, if any, must match).
Distribution distribution_from_json(const Group& g, const Json& j,
                                    const std::string& path = "distribution");

/// The one canonical text rendering used everywhere: two-space indentation
/// and a trailing newline.
std::string dump_pretty(const Json& j);

}  // namespace finabel
