#include "dbcoh_cli/io.hpp"

#include <set>

namespace dbcoh::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) throw ParseError(path, "integer out of range");
  return static_cast<int>(v);
}

int key_to_int(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw ParseError(path + "/" + key, "key \"" + key + "\" is not an integer degree");
  if (std::to_string(v) != key) throw ParseError(path + "/" + key, "degree key \"" + key + "\" is not in canonical form");
  return v;
}

std::vector<int> twists_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of twists");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], at(path, i)));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(q.get_str());
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json to_json(const Poly& p, int m) {
  Json arr = Json::array();
  for (const auto& [mono, c] : p.terms())
    arr.push_back(Json::array({integer_to_json(c.get_num()), integer_to_json(c.get_den()), mono.exponents(m + 1)}));
  return arr;
}

Json to_json(const PolyMatrix& a, int m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [c, p] : a.row(r)) entries.push_back(Json::array({r, c, to_json(p, m)}));
  Json j = Json::object();
  j["row_twists"] = a.row_twists();
  j["col_twists"] = a.col_twists();
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const DObject& e) {
  Json j = Json::object();
  j["m"] = e.m();
  Json terms = Json::object();
  for (const auto& [t, tw] : e.terms()) terms[std::to_string(t)] = tw;
  j["terms"] = std::move(terms);
  Json diffs = Json::object();
  for (const auto& [t, d] : e.diffs()) diffs[std::to_string(t)] = to_json(d, e.m());
  j["diffs"] = std::move(diffs);
  return j;
}

Json to_json(const Collection& c) {
  Json j = Json::object();
  j["schema"] = kSchemaVersion;
  j["m"] = c.m;
  Json objs = Json::array();
  for (const auto& e : c.objects) objs.push_back(to_json(e));
  j["objects"] = std::move(objs);
  return j;
}

Json to_json(const BraidWord& w) {
  Json letters = Json::array();
  for (const auto& l : w.letters) {
    if (l.kind == BraidLetter::Kind::sigma)
      letters.push_back(Json::array({"s", l.index, l.value}));
    else
      letters.push_back(Json::array({"shift", l.index, l.value}));
  }
  Json j = Json::object();
  j["letters"] = std::move(letters);
  return j;
}

Json to_json(const KClass& k) {
  Json arr = Json::array();
  for (const auto& c : k.coeffs) arr.push_back(integer_to_json(c));
  return arr;
}

Json to_json(const HomTable& t) {
  Json j = Json::object();
  for (const auto& [s, d] : t.entries) j[std::to_string(s)] = d;
  return j;
}

Json to_json(const IntMatrix& a) {
  Json arr = Json::array();
  for (const auto& row : a) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(integer_to_json(x));
    arr.push_back(std::move(r));
  }
  return arr;
}

Json to_json(const CheckReport& r) {
  Json j = Json::object();
  j["verdict"] = to_string(r.verdict);
  Json details = Json::array();
  for (const auto& d : r.details) {
    Json dj = Json::object();
    dj["claim"] = d.claim;
    dj["location"] = d.location;
    dj["witness"] = d.witness;
    details.push_back(std::move(dj));
  }
  j["details"] = std::move(details);
  return j;
}

// ---------------------------------------------------------------------------

Integer integer_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer z;
    const std::size_t digits = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == digits || s.find_first_not_of("0123456789", digits) != std::string::npos || z.set_str(s, 10) != 0)
      throw ParseError(path, "\"" + s + "\" is not an integer");
    return z;
  }
  throw ParseError(path, "expected an integer");
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ParseError(path, "\"" + s + "\" is not a rational number");
    if (q.get_den() == 0) throw ParseError(path, "zero denominator");
    q.canonicalize();
    return q;
  }
  throw ParseError(path, "expected an integer or a \"p/q\" string");
}

Poly poly_from_json(const Json& j, int m, int degree, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected a polynomial (array of terms)");
  std::vector<Poly::Term> terms;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = at(path, i);
    const Json& term = j[i];
    if (!term.is_array() || term.size() != 3) throw ParseError(tp, "expected [numerator, denominator, exponents]");
    const Integer den = integer_from_json(term[1], at(tp, 1));
    if (den == 0) throw ParseError(at(tp, 1), "zero denominator");
    Rational c(integer_from_json(term[0], at(tp, 0)), den);
    c.canonicalize();
    const Json& ex = term[2];
    if (!ex.is_array() || ex.size() != static_cast<std::size_t>(m) + 1)
      throw ParseError(at(tp, 2), "expected " + std::to_string(m + 1) + " exponents");
    std::vector<int> e;
    int total = 0;
    for (std::size_t k = 0; k < ex.size(); ++k) {
      const int v = int_from_json(ex[k], at(at(tp, 2), k));
      if (v < 0 || v > Monomial::kMaxExponent) throw ParseError(at(at(tp, 2), k), "exponent out of range");
      e.push_back(v);
      total += v;
    }
    if (total != degree)
      throw ParseError(tp, "term of degree " + std::to_string(total) + " in an entry that must be homogeneous of degree " +
                               std::to_string(degree));
    if (!seen.insert(e).second) throw ParseError(tp, "repeated monomial");
    if (sgn(c) != 0) terms.emplace_back(Monomial(e), c);
  }
  return Poly(degree, std::move(terms));
}

PolyMatrix matrix_from_json(const Json& j, int m, const std::vector<int>& rows, const std::vector<int>& cols,
                            const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a matrix object");
  if (j.contains("row_twists") && twists_from_json(j["row_twists"], at(path, "row_twists")) != rows)
    throw ParseError(at(path, "row_twists"), "row twists disagree with the target term");
  if (j.contains("col_twists") && twists_from_json(j["col_twists"], at(path, "col_twists")) != cols)
    throw ParseError(at(path, "col_twists"), "column twists disagree with the source term");
  const Json& entries = field(j, "entries", path);
  const std::string ep = at(path, "entries");
  if (!entries.is_array()) throw ParseError(ep, "expected an array of [row, col, poly]");
  PolyMatrix a(rows, cols);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = at(ep, i);
    const Json& e = entries[i];
    if (!e.is_array() || e.size() != 3) throw ParseError(p, "expected [row, col, poly]");
    const int r = int_from_json(e[0], at(p, 0)), c = int_from_json(e[1], at(p, 1));
    if (r < 0 || static_cast<std::size_t>(r) >= rows.size()) throw ParseError(at(p, 0), "row index out of range");
    if (c < 0 || static_cast<std::size_t>(c) >= cols.size()) throw ParseError(at(p, 1), "column index out of range");
    const auto ur = static_cast<std::size_t>(r), uc = static_cast<std::size_t>(c);
    if (!seen.insert({ur, uc}).second) throw ParseError(p, "repeated entry");
    const int deg = rows[ur] - cols[uc];
    if (deg < 0) {
      if (!e[2].is_array() || !e[2].empty())
        throw ParseError(at(p, 2), "entry O(" + std::to_string(cols[uc]) + ") -> O(" + std::to_string(rows[ur]) +
                                       ") must be zero");
      continue;
    }
    a.set(ur, uc, poly_from_json(e[2], m, deg, at(p, 2)));
  }
  return a;
}

DObject object_from_json(const Json& j, const std::string& path, int m_hint) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  int m = m_hint;
  if (j.contains("m")) {
    const int mj = int_from_json(j["m"], at(path, "m"));
    if (m_hint >= 0 && mj != m_hint) throw ParseError(at(path, "m"), "object lives on a different P^m");
    m = mj;
  }
  if (m < 0) throw ParseError(path, "missing field \"m\"");
  if (m < 1 || m + 1 > Monomial::kMaxVars) throw ParseError(at(path, "m"), "unsupported dimension");
  DObject e(m);
  const Json& terms = field(j, "terms", path);
  const std::string tp = at(path, "terms");
  if (!terms.is_object()) throw ParseError(tp, "expected an object of degree -> twists");
  for (const auto& [key, val] : terms.items()) {
    const int t = key_to_int(key, tp);
    auto tw = twists_from_json(val, at(tp, key));
    if (tw.empty()) throw ParseError(at(tp, key), "empty term; omit the degree instead");
    e.set_term(t, std::move(tw));
  }
  if (j.contains("diffs")) {
    const Json& diffs = j["diffs"];
    const std::string dp = at(path, "diffs");
    if (!diffs.is_object()) throw ParseError(dp, "expected an object of degree -> matrix");
    std::map<int, PolyMatrix> parsed;
    for (const auto& [key, val] : diffs.items()) {
      const int t = key_to_int(key, dp);
      if (e.term(t).empty() || e.term(t + 1).empty())
        throw ParseError(at(dp, key), "differential between missing terms");
      parsed.emplace(t, matrix_from_json(val, m, e.term(t + 1), e.term(t), at(dp, key)));
    }
    for (auto& [t, d] : parsed) e.set_diff(t, std::move(d));
  }
  const CheckReport rep = validate(e);
  if (!rep.passed()) {
    const auto& d = rep.details.front();
    throw ParseError(path + "/" + d.location, d.claim + " fails" + (d.witness.empty() ? "" : ": " + d.witness));
  }
  return e;
}

BraidWord braid_from_json(const Json& j, const std::string& path) {
  const Json& letters = field(j, "letters", path);
  const std::string lp = at(path, "letters");
  if (!letters.is_array()) throw ParseError(lp, "expected an array of letters");
  BraidWord w;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const std::string p = at(lp, i);
    const Json& l = letters[i];
    if (!l.is_array() || l.size() != 3 || !l[0].is_string())
      throw ParseError(p, "expected [\"s\", i, +-1] or [\"shift\", i, k]");
    BraidLetter b;
    const auto kind = l[0].get<std::string>();
    if (kind == "s")
      b.kind = BraidLetter::Kind::sigma;
    else if (kind == "shift")
      b.kind = BraidLetter::Kind::shift;
    else
      throw ParseError(at(p, 0), "unknown letter kind \"" + kind + "\"");
    b.index = int_from_json(l[1], at(p, 1));
    b.value = int_from_json(l[2], at(p, 2));
    if (b.index < 1) throw ParseError(at(p, 1), "positions are 1-based");
    if (b.kind == BraidLetter::Kind::sigma && b.value != 1 && b.value != -1)
      throw ParseError(at(p, 2), "sigma exponent must be 1 or -1");
    w.letters.push_back(b);
  }
  return w;
}

Collection collection_from_json(const Json& j, const std::string& path) {
  Collection c;
  c.m = int_from_json(field(j, "m", path), at(path, "m"));
  const Json& objs = field(j, "objects", path);
  const std::string op = at(path, "objects");
  if (!objs.is_array() || objs.empty()) throw ParseError(op, "expected a nonempty array of objects");
  for (std::size_t i = 0; i < objs.size(); ++i) c.objects.push_back(object_from_json(objs[i], at(op, i), c.m));
  return c;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

Input input_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("", "expected a JSON object");
  if (j.contains("schema")) {
    if (!j["schema"].is_number_integer() || j["schema"].get<long long>() != kSchemaVersion)
      throw ParseError("/schema", "unsupported schema version");
  }
  Input in;
  if (j.contains("objects")) {
    in.collection = collection_from_json(j);
  } else if (j.contains("terms")) {
    DObject e = object_from_json(j, "");
    in.collection.m = e.m();
    in.collection.objects.push_back(std::move(e));
  } else {
    throw ParseError("", "expected \"objects\" (a collection) or \"terms\" (an object)");
  }
  if (j.contains("braid")) in.braid = braid_from_json(j["braid"], "/braid");
  return in;
}

}  // namespace dbcoh::io
