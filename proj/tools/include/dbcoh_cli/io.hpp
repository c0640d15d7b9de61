#pragma once

// JSON encoding of the domain types.
//
//   Poly       [[num, den, [e_0, ..., e_m]], ...]
//   PolyMatrix {"row_twists": [..], "col_twists": [..], "entries": [[r, c, Poly], ...]}
//   DObject    {"m": m, "terms": {"t": [twists]}, "diffs": {"t": PolyMatrix}}
//   Collection {"schema": 1, "m": m, "objects": [DObject, ...], "braid": BraidWord?}
//   BraidWord  {"letters": [["s", i, +-1] | ["shift", i, k], ...]}
//   KClass     [c_0, ..., c_m]
//
// Inside a collection the per-object "m" and the matrix twist lists may be
// omitted; when present they must agree with the surrounding data.

#include "dbcoh/mutate.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dbcoh::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input; `path` is a JSON pointer into the document.
struct ParseError : std::runtime_error {
  ParseError(std::string path, const std::string& what)
      : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + what), path(std::move(path)) {}
  std::string path;
};

Json integer_to_json(const Integer& z);
Json rational_to_json(const Rational& q);
Json to_json(const Poly& p, int m);
Json to_json(const PolyMatrix& a, int m);
Json to_json(const DObject& e);
Json to_json(const Collection& c);
Json to_json(const BraidWord& w);
Json to_json(const KClass& k);
Json to_json(const HomTable& t);
Json to_json(const IntMatrix& a);
Json to_json(const CheckReport& r);

Integer integer_from_json(const Json& j, const std::string& path);
Rational rational_from_json(const Json& j, const std::string& path);
Poly poly_from_json(const Json& j, int m, int degree, const std::string& path);
/// Twists come from the enclosing object.
PolyMatrix matrix_from_json(const Json& j, int m, const std::vector<int>& rows, const std::vector<int>& cols,
                            const std::string& path);
/// m_hint < 0 requires an "m" field.  Validates d o d = 0.
DObject object_from_json(const Json& j, const std::string& path, int m_hint = -1);
Collection collection_from_json(const Json& j, const std::string& path = "");
BraidWord braid_from_json(const Json& j, const std::string& path);

/// Parses text; syntax errors are reported at the document root.
Json parse_text(const std::string& text);

/// A file holding either a collection or a single object.
struct Input {
  Collection collection;
  std::optional<BraidWord> braid;
};
Input input_from_json(const Json& j);

}  // namespace dbcoh::io
