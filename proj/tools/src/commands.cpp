#include "dbcoh_cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace dbcoh::cli {

using io::Json;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"hom",   "rhom",      "mutate", "braid", "helix", "check",
                                                 "verify-theorem", "main-lemma", "corollary", "ktheory", "sweep"};
  return names;
}

namespace {

class Builder {
 public:
  explicit Builder(const Options& opt) : opt_(opt) {
    j_["schema"] = io::kSchemaVersion;
    j_["command"] = opt.command;
    j_["seed"] = opt.seed;
    j_["verdicts"] = Json::array();
    j_["tables"] = Json::array();
    j_["objects"] = Json::array();
  }

  void arg(const std::string& key, Json v) { j_["args"][key] = std::move(v); }

  void verdict(const std::string& name, const CheckReport& r) {
    const Json v = io::to_json(r);
    Json entry = Json::object();
    entry["name"] = name;
    entry["verdict"] = v["verdict"];
    entry["details"] = v["details"];
    j_["verdicts"].push_back(std::move(entry));
    if (!r.passed()) failed_ = true;
  }

  void verdict(const std::string& name, bool ok, const std::string& claim, const std::string& witness = {}) {
    CheckReport r;
    if (!ok) r.fail(claim, name, witness);
    verdict(name, r);
  }

  void table(const std::string& label, const std::string& kind, Json data, std::vector<std::string> rows = {}) {
    Json t = Json::object();
    t["label"] = label;
    t["kind"] = kind;
    if (!rows.empty()) t["rows"] = std::move(rows);
    t["data"] = std::move(data);
    j_["tables"].push_back(std::move(t));
  }

  void object(const std::string& label, const DObject& e) {
    Json o = Json::object();
    o["label"] = label;
    o["object"] = io::to_json(e);
    j_["objects"].push_back(std::move(o));
  }

  template <class F>
  auto phase(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
      if (opt_.timing)
        j_["timing"][name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto r = f();
      finish();
      return r;
    }
  }

  Report done() && { return {std::move(j_), failed_ ? 1 : 0}; }

 private:
  const Options& opt_;
  Json j_ = Json::object();
  bool failed_ = false;
};

std::string label(std::size_t i) { return "E" + std::to_string(i + 1); }

const DObject& object_at(const io::Input& in, std::size_t i, const std::string& cmd) {
  if (in.collection.objects.size() <= i)
    throw io::ParseError("/objects", cmd + " needs at least " + std::to_string(i + 1) + " objects");
  return in.collection.objects[i];
}

Collection input_collection(const Options& opt, const io::Input& in, Builder& b) {
  Collection c = in.collection;
  std::optional<BraidWord> w = in.braid;
  if (!w && opt.random_word >= 0) w = random_braid_word(c.size(), static_cast<std::size_t>(opt.random_word), opt.seed);
  if (w) {
    b.arg("braid", io::to_json(*w));
    c = b.phase("braid", [&] { return apply_braid(c, *w); });
  }
  return c;
}

std::pair<int, int> default_window(const Options& opt, std::size_t n) {
  if (opt.window) return *opt.window;
  const int ni = static_cast<int>(n);
  return {1 - ni, 2 * ni};
}

Json class_list(const std::vector<KClass>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(io::to_json(c));
  return arr;
}

// --- commands --------------------------------------------------------------

void cmd_hom(const Options&, const io::Input& in, Builder& b) {
  const DObject& e = object_at(in, 0, "hom");
  const DObject& f = object_at(in, 1, "hom");
  const HomTable t = b.phase("hom", [&] { return hom_total(e, f); });
  b.table("Hom^s(E1,E2)", "hom", io::to_json(t));
}

void cmd_rhom(const Options&, const io::Input& in, Builder& b) {
  const DObject& e = object_at(in, 0, "rhom");
  const DObject& f = object_at(in, 1, "rhom");
  const DObject r = b.phase("rhom", [&] { return rhom(e, f); });
  b.object("RHom(E1,E2)", r);
  b.table("H^s(RHom(E1,E2))", "hom", io::to_json(hypercohomology(r)));
}

void cmd_mutate(const Options& opt, const io::Input& in, Builder& b) {
  const DObject& e1 = object_at(in, 0, "mutate");
  const DObject& e2 = object_at(in, 1, "mutate");
  if (opt.side != "left" && opt.side != "right") throw io::ParseError("", "--side must be left or right");
  b.arg("side", opt.side);
  const bool left = opt.side == "left";
  const DObject r = b.phase("mutate", [&] { return left ? left_mutation(e1, e2) : right_mutation(e1, e2); });
  b.object(left ? "L_{E1}E2" : "R_{E2}E1", r);
  const KClass expect = k_mutate(class_of(e1), class_of(e2), left ? MutationSide::left : MutationSide::right);
  b.table("class", "vector", io::to_json(class_of(r)));
  b.verdict("k0_equivariance", class_of(r) == expect, "class of the mutation equals the K_0 mutation formula");
}

void report_collection(const Collection& c, Builder& b) {
  for (std::size_t i = 0; i < c.size(); ++i) b.object(label(i), c.objects[i]);
}

void cmd_braid(const Options& opt, const io::Input& in, Builder& b) {
  if (!in.braid && opt.random_word < 0) throw io::ParseError("/braid", "braid needs a \"braid\" word or --random-word");
  const Collection c = input_collection(opt, in, b);
  report_collection(c, b);
  b.verdict("exceptional", check_collection(c).report);
}

void cmd_helix(const Options& opt, const io::Input& in, Builder& b) {
  const Collection c = input_collection(opt, in, b);
  const auto [lo, hi] = default_window(opt, c.size());
  b.arg("window", Json::array({lo, hi}));
  b.arg("trials", opt.trials);
  const Helix h = b.phase("helix", [&] { return helix_extend(c, lo, hi); });
  for (const auto& [i, e] : h.objects)
    if (i >= lo && i <= hi) b.object("E" + std::to_string(i), e);
  b.verdict("helix_serre", b.phase("serre", [&] { return helix_serre_check(h, opt.trials, opt.seed); }));
}

void cmd_check(const Options& opt, const io::Input& in, Builder& b) {
  const Collection c = input_collection(opt, in, b);
  const CollectionVerdict v = b.phase("check", [&] { return check_collection(c); });
  for (const auto& [ij, t] : v.homs)
    b.table("Hom^s(" + label(ij.first) + "," + label(ij.second) + ")", "hom", io::to_json(t));
  std::vector<KClass> classes;
  for (const auto& e : c.objects) classes.push_back(class_of(e));
  b.table("gram", "matrix", io::to_json(gram_matrix(classes)));
  b.verdict("exceptional", v.report);
  CheckReport strict;
  if (!v.strict)
    for (const auto& d : v.report.details)
      if (d.claim.rfind("not strict", 0) == 0) strict.fail(d.claim, d.location, d.witness);
  if (!v.strict && strict.passed()) strict.fail("collection is strictly exceptional", "collection");
  b.verdict("strict", strict);
  b.verdict("k0_basis_proxy", v.k0_basis, "classes form a basis of K_0 (necessary for fullness)");
}

void cmd_verify(const Options& opt, const io::Input& in, Builder& b) {
  const Collection c = input_collection(opt, in, b);
  report_collection(c, b);
  const TheoremVerdict v = b.phase("verify", [&] { return verify_theorem(c, opt.seed); });
  Json shifts = Json::array(), ranks = Json::array();
  for (const auto& bv : v.bundles) {
    shifts.push_back(bv.shift);
    ranks.push_back(bv.rank);
  }
  b.table("shifts", "vector", std::move(shifts));
  b.table("ranks", "vector", std::move(ranks));
  b.verdict("theorem", v.report);
}

void cmd_main_lemma(const Options& opt, const io::Input& in, Builder& b) {
  for (std::size_t i = 0; i < in.collection.size(); ++i) {
    const MainLemmaVerdict v = main_lemma_predicate(in.collection.objects[i], opt.seed + i);
    b.verdict("main_lemma " + label(i), v.report);
  }
}

void cmd_corollary(const Options& opt, const io::Input& in, Builder& b) {
  b.arg("n_max", opt.n_max);
  for (std::size_t i = 0; i < in.collection.size(); ++i) {
    const CorollaryVerdict v = corollary_detect(in.collection.objects[i], opt.n_max, opt.seed + i);
    b.table("Hom^s(" + label(i) + "," + label(i) + "(" + std::to_string(v.n_eff * (in.collection.m + 1)) + "))",
            "hom", io::to_json(v.self_homs));
    b.table("shifted_bundle " + label(i), "scalar", v.shifted_bundle);
    b.verdict("corollary " + label(i), v.agrees, "Hom-vanishing detector agrees with the local-freeness criterion");
  }
}

void cmd_ktheory(const Options& opt, const io::Input& in, Builder& b) {
  const Collection c = input_collection(opt, in, b);
  const int m = c.m;
  std::vector<KClass> classes;
  for (const auto& e : c.objects) classes.push_back(class_of(e));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < classes.size(); ++i) names.push_back(label(i));
  b.table("classes", "list", class_list(classes), names);
  const IntMatrix g = gram_matrix(classes);
  b.table("gram", "matrix", io::to_json(g));
  std::vector<std::string> basis;
  for (int j = 0; j <= m; ++j) basis.push_back(j == 0 ? "O" : "O(" + std::to_string(j) + ")");
  b.table("euler_matrix", "matrix", io::to_json(euler_matrix(m)), basis);
  b.table("serre_matrix", "matrix", io::to_json(serre_matrix(m)), basis);
  b.table("parity", "scalar", m % 2 == 0 ? "even: G^T = G S with S = T_{-m-1}" : "odd: G^T = G S with S = -T_{-m-1}");
  b.verdict("gram_upper_unitriangular", is_upper_unitriangular(g), "Gram matrix is upper-triangular with unit diagonal");
  b.verdict("canonical_twist_unipotent", canonical_twist_unipotent(m), "(T_{-m-1} - I)^{m+1} = 0");
  b.verdict("serre_symmetrizes", serre_symmetrizes(m), "G^T = G S");
}

void cmd_sweep(const Options& opt, const io::Input& in, Builder& b) {
  const Collection c = input_collection(opt, in, b);
  const auto [lo, hi] = default_window(opt, c.size());
  b.arg("window", Json::array({lo, hi}));
  const int n = static_cast<int>(c.size());
  // Materialize n more objects on the right for the duality pairing.
  const Helix h = b.phase("helix", [&] { return helix_extend(c, lo, hi + n); });
  b.verdict("proposition", b.phase("sweep", [&] { return proposition_sweep(h, lo, hi); }));
}

}  // namespace

Report run(const Options& opt, const io::Input& input) {
  static const std::map<std::string, std::function<void(const Options&, const io::Input&, Builder&)>> table = {
      {"hom", cmd_hom},
      {"rhom", cmd_rhom},
      {"mutate", cmd_mutate},
      {"braid", cmd_braid},
      {"helix", cmd_helix},
      {"check", cmd_check},
      {"verify-theorem", cmd_verify},
      {"main-lemma", cmd_main_lemma},
      {"corollary", cmd_corollary},
      {"ktheory", cmd_ktheory},
      {"sweep", cmd_sweep},
  };
  auto it = table.find(opt.command);
  if (it == table.end()) throw io::ParseError("", "unknown command \"" + opt.command + "\"");
  Builder b(opt);
  it->second(opt, input, b);
  return std::move(b).done();
}

// --- text rendering --------------------------------------------------------

namespace {

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_object(std::ostream& os, const Json& obj) {
  for (const auto& [t, tw] : obj["terms"].items()) {
    os << " " << t << ":[";
    bool first = true;
    for (const auto& a : tw) {
      os << (first ? "" : " ") << a.dump();
      first = false;
    }
    os << "]";
  }
  if (obj["terms"].empty()) os << " 0";
}

}  // namespace

std::string render_text(const Json& r) {
  std::ostringstream os;
  os << "command: " << r["command"].get<std::string>() << "\n";
  os << "seed: " << r["seed"].dump() << "\n";
  if (r.contains("args"))
    for (const auto& [k, v] : r["args"].items()) os << k << ": " << v.dump() << "\n";
  for (const auto& o : r["objects"]) {
    os << o["label"].get<std::string>() << ":";
    render_object(os, o["object"]);
    os << "\n";
  }
  for (const auto& t : r["tables"]) {
    const auto kind = t["kind"].get<std::string>();
    const Json& d = t["data"];
    os << t["label"].get<std::string>() << ":";
    if (kind == "hom") {
      if (d.empty()) os << " 0";
      os << "\n";
      for (const auto& [s, v] : d.items()) os << "  s=" << s << "  " << v.dump() << "\n";
    } else if (kind == "matrix" || kind == "list") {
      os << "\n";
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (t.contains("rows"))
          os << "  " << t["rows"][i].get<std::string>() << " ";
        else
          os << "  " << (kind == "matrix" ? "E" + std::to_string(i + 1) + " " : "");
        for (const auto& x : d[i]) os << " " << scalar_text(x);
        os << "\n";
      }
    } else if (kind == "vector") {
      for (const auto& x : d) os << " " << scalar_text(x);
      os << "\n";
    } else {
      os << " " << scalar_text(d) << "\n";
    }
  }
  for (const auto& v : r["verdicts"]) {
    os << "verdict " << v["name"].get<std::string>() << ": " << v["verdict"].get<std::string>() << "\n";
    for (const auto& d : v["details"]) {
      os << "  - " << d["claim"].get<std::string>() << " @ " << d["location"].get<std::string>();
      if (!d["witness"].get<std::string>().empty()) os << ": " << d["witness"].get<std::string>();
      os << "\n";
    }
  }
  if (r.contains("timing"))
    for (const auto& [k, v] : r["timing"].items()) os << "time " << k << ": " << v.dump() << " s\n";
  return os.str();
}

// --- entry point -------------------------------------------------------------

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the derived category of P^m"};
  Options opt;
  std::string format = "text", window;
  app.add_option("command", opt.command, "One of: hom rhom mutate braid helix check verify-theorem main-lemma "
                                         "corollary ktheory sweep")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--input,-i", opt.input, "Input JSON file ('-' for stdin)")->required();
  app.add_option("--seed", opt.seed, "Seed for randomized sub-steps");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--window", window, "Helix window lo:hi");
  app.add_option("--trials", opt.trials, "Trials per isomorphism test")->check(CLI::PositiveNumber);
  app.add_option("--out,-o", opt.out, "Write the report to a file");
  app.add_option("--side", opt.side, "Mutation side for 'mutate': left or right");
  app.add_option("--nmax", opt.n_max, "Minimal twist multiple for 'corollary'")->check(CLI::PositiveNumber);
  app.add_option("--random-word", opt.random_word, "Apply a seeded random braid word of this length");
  app.add_flag("--timing", opt.timing, "Include wall-clock timings (breaks byte-identical output)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  opt.format = format == "json" ? Format::json : Format::text;
  if (!window.empty()) {
    const auto colon = window.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      opt.window = std::pair{std::stoi(window.substr(0, colon)), std::stoi(window.substr(colon + 1))};
    } catch (const std::exception&) {
      err << "usage error: --window expects lo:hi\n";
      return 2;
    }
    if (opt.window->first > opt.window->second) {
      err << "usage error: --window lo must not exceed hi\n";
      return 2;
    }
  }

  std::string text;
  if (opt.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(opt.input, std::ios::binary);
    if (!f) {
      err << "error: cannot read " << opt.input << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }

  Report rep;
  try {
    const io::Input in = io::input_from_json(io::parse_text(text));
    rep = run(opt, in);
  } catch (const io::ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::string body = opt.format == Format::json ? rep.json.dump(2) + "\n" : render_text(rep.json);
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << opt.out << "\n";
      return 2;
    }
    f << body;
  } else {
    out << body;
  }
  return rep.exit_code;
}

}  // namespace dbcoh::cli
