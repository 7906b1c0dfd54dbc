#include "flatrank/io.hpp"

#include <fstream>
#include <sstream>

#include "flatrank/combinatorics.hpp"

namespace flatrank::io {

namespace {

// Runs a parser, converting library and json exceptions into FormatError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid ") + what + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid ") + what + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::uint64_t get_uint(const Json& j, const char* what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    throw FormatError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

unsigned get_ground(const Json& j, const char* key) {
  const std::uint64_t n = get_uint(require(j, key), key);
  if (n > 63) throw FormatError(std::string(key) + " must be at most 63");
  return static_cast<unsigned>(n);
}

}  // namespace

Json field_to_json(const FieldDescriptor& field) {
  if (field.kind() == FieldKind::Prime) return Json{{"kind", "prime"}, {"p", field.characteristic()}};
  return Json{{"kind", "binary"}, {"k", field.degree()}};
}

FieldDescriptor field_from_json(const Json& j) {
  return guarded("field descriptor", [&] {
    const auto kind = require(j, "kind").get<std::string>();
    if (kind == "prime") return make_prime_field(get_uint(require(j, "p"), "p"));
    if (kind == "binary") return make_binary_field(static_cast<int>(get_uint(require(j, "k"), "k")));
    throw FormatError("unknown field kind \"" + kind + "\"");
  });
}

FieldDescriptor parse_field_spec(const std::string& spec) {
  return guarded("field spec", [&] {
    const auto colon = spec.find(':');
    std::string kind = colon == std::string::npos ? "prime" : spec.substr(0, colon);
    const std::string value = colon == std::string::npos ? spec : spec.substr(colon + 1);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw FormatError("bad field spec \"" + spec + "\"");
    if (kind == "prime") return make_prime_field(v);
    if (kind == "binary") return make_binary_field(static_cast<int>(v));
    throw FormatError("bad field spec \"" + spec + "\"");
  });
}

Json tensor_to_json(const Tensor& t, const Json& meta) {
  Json j;
  j["dims"] = t.dims();
  j["field"] = field_to_json(t.field());
  j["entries"] = std::vector<std::uint64_t>(t.entries().begin(), t.entries().end());
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

Tensor tensor_from_json(const Json& j) {
  return guarded("tensor document", [&] {
    const auto& jd = require(j, "dims");
    if (!jd.is_array() || jd.empty()) throw FormatError("dims must be a nonempty array");
    std::vector<std::size_t> dims;
    for (const auto& x : jd) dims.push_back(static_cast<std::size_t>(get_uint(x, "dimension")));
    const FieldDescriptor field = field_from_json(require(j, "field"));
    const bool dense = j.contains("entries");
    const bool sparse = j.contains("sparse");
    if (dense == sparse) throw FormatError("tensor needs exactly one of \"entries\" or \"sparse\"");
    if (dense) {
      std::vector<std::uint64_t> entries;
      for (const auto& x : j["entries"]) entries.push_back(get_uint(x, "entry"));
      return Tensor(dims, field, std::move(entries));
    }
    Tensor t(dims, field);
    for (const auto& pair : j["sparse"]) {
      if (!pair.is_array() || pair.size() != 2) throw FormatError("sparse entries are [index, value] pairs");
      std::vector<std::size_t> index;
      for (const auto& x : pair[0]) index.push_back(static_cast<std::size_t>(get_uint(x, "index")));
      t.set(index, get_uint(pair[1], "entry"));
    }
    return t;
  });
}

std::uint64_t set_from_json(const Json& j, unsigned ground) {
  std::uint64_t mask = 0;
  if (j.is_number_integer()) {
    mask = get_uint(j, "set mask");
  } else if (j.is_array()) {
    for (const auto& x : j) {
      const std::uint64_t e = get_uint(x, "set element");
      if (e >= 63) throw FormatError("set element out of range");
      if ((mask >> e) & 1U) throw FormatError("repeated set element");
      mask |= std::uint64_t{1} << e;
    }
  } else {
    throw FormatError("a set is an index list or an integer mask");
  }
  if ((mask & ~low_bits(ground)) != 0) throw FormatError("set leaves the ground set of size " + std::to_string(ground));
  return mask;
}

Json set_to_json(std::uint64_t mask) {
  Json out = Json::array();
  for (unsigned i = 0; i < 64; ++i) {
    if ((mask >> i) & 1U) out.push_back(i);
  }
  return out;
}

Json set_family_to_json(const SetFamily& f) {
  Json members = Json::array();
  for (std::uint64_t m : f.members) members.push_back(set_to_json(m));
  return Json{{"n", f.n}, {"members", members}};
}

SetFamily set_family_from_json(const Json& j) {
  return guarded("set family", [&] {
    SetFamily f{get_ground(j, "n"), {}};
    for (const auto& m : require(j, "members")) f.members.push_back(set_from_json(m, f.n));
    return f;
  });
}

Json tuple_family_to_json(const TupleFamily& f) {
  Json members = Json::array();
  for (const auto& tuple : f.members) {
    Json row = Json::array();
    for (std::uint64_t m : tuple) row.push_back(set_to_json(m));
    members.push_back(row);
  }
  return Json{{"n", f.n}, {"d", f.d}, {"members", members}};
}

TupleFamily tuple_family_from_json(const Json& j) {
  return guarded("tuple family", [&] {
    TupleFamily f{get_ground(j, "n"), 0, {}};
    const auto& members = require(j, "members");
    if (j.contains("d")) {
      f.d = static_cast<std::size_t>(get_uint(j["d"], "d"));
    } else if (!members.empty()) {
      f.d = members.front().size();
    }
    for (const auto& tuple : members) {
      if (!tuple.is_array()) throw FormatError("tuple family members are arrays of sets");
      std::vector<std::uint64_t> row;
      for (const auto& m : tuple) row.push_back(set_from_json(m, f.n));
      f.members.push_back(std::move(row));
    }
    f.validate();
    return f;
  });
}

Json configuration_to_json(const Configuration& c) {
  Json sets = Json::array();
  for (std::uint64_t x : c.sets) sets.push_back(set_to_json(x));
  return Json{{"k", c.k}, {"p", c.p}, {"L", c.residues}, {"C", sets}};
}

Configuration configuration_from_json(const Json& j) {
  return guarded("configuration", [&] {
    Configuration c;
    c.k = get_ground(j, "k");
    c.p = get_uint(require(j, "p"), "p");
    for (const auto& x : require(j, "L")) c.residues.push_back(get_uint(x, "residue"));
    for (const auto& x : require(j, "C")) c.sets.push_back(set_from_json(x, c.k));
    c.validate();
    return c;
  });
}

Json hypergraph_to_json(const ColoredHypergraph& h) {
  Json colors = Json::array();
  for (const auto& cls : h.colors) {
    Json edges = Json::array();
    for (std::uint64_t e : cls) edges.push_back(set_to_json(e));
    colors.push_back(edges);
  }
  return Json{{"N", h.vertices}, {"r", h.r}, {"t", h.t}, {"colors", colors}};
}

ColoredHypergraph hypergraph_from_json(const Json& j) {
  return guarded("hypergraph", [&] {
    ColoredHypergraph h;
    h.vertices = get_ground(j, "N");
    for (const auto& cls : require(j, "colors")) {
      if (!cls.is_array()) throw FormatError("a color class is an array of edges");
      std::vector<std::uint64_t> edges;
      for (const auto& e : cls) edges.push_back(set_from_json(e, h.vertices));
      h.colors.push_back(std::move(edges));
    }
    if (j.contains("t")) {
      h.t = static_cast<unsigned>(get_uint(j["t"], "t"));
    } else if (!h.colors.empty()) {
      h.t = static_cast<unsigned>(h.colors.front().size());
    }
    if (j.contains("r")) {
      h.r = static_cast<unsigned>(get_uint(j["r"], "r"));
    } else if (!h.colors.empty() && !h.colors.front().empty()) {
      h.r = static_cast<unsigned>(popcount(h.colors.front().front()));
    }
    h.validate();
    return h;
  });
}

Json set_pair_system_to_json(const SetPairSystem& s) {
  Json members = Json::array();
  for (const auto& tuple : s.members) {
    Json row = Json::array();
    for (std::uint64_t m : tuple) row.push_back(set_to_json(m));
    members.push_back(row);
  }
  return Json{{"N", s.ground}, {"r", s.sizes}, {"members", members}};
}

SetPairSystem set_pair_system_from_json(const Json& j) {
  return guarded("set-pair system", [&] {
    SetPairSystem s;
    s.ground = get_ground(j, "N");
    for (const auto& tuple : require(j, "members")) {
      if (!tuple.is_array()) throw FormatError("set-pair members are arrays of sets");
      std::vector<std::uint64_t> row;
      for (const auto& m : tuple) row.push_back(set_from_json(m, s.ground));
      s.members.push_back(std::move(row));
    }
    if (j.contains("r")) {
      for (const auto& x : j["r"]) s.sizes.push_back(static_cast<unsigned>(get_uint(x, "r_i")));
    } else if (!s.members.empty()) {
      for (std::uint64_t m : s.members.front()) s.sizes.push_back(static_cast<unsigned>(popcount(m)));
    }
    s.validate();
    return s;
  });
}

Json badbox_family_to_json(const BadboxFamily& f) {
  Json members = Json::array();
  for (const auto& p : f.members) {
    Json row = Json::array();
    for (std::uint64_t factor : p.factors) row.push_back(set_to_json(factor));
    members.push_back(row);
  }
  Json flat = Json::array();
  for (const auto& p : f.members) flat.push_back(set_to_json(flatten_product(p, f.t)));
  return Json{{"t", f.t},       {"s", f.s},           {"k", f.k}, {"seed", f.seed}, {"attempts", f.attempts},
              {"members", members}, {"flat", flat}};
}

BadboxFamily badbox_family_from_json(const Json& j) {
  return guarded("bad-box family", [&] {
    BadboxFamily f;
    f.t = static_cast<unsigned>(get_uint(require(j, "t"), "t"));
    f.s = static_cast<unsigned>(get_uint(require(j, "s"), "s"));
    if (f.t < 2 || f.t > 20) throw FormatError("t must be in [2, 20]");
    f.k = j.contains("k") ? static_cast<std::size_t>(get_uint(j["k"], "k")) : badbox_k(f.t);
    if (j.contains("seed")) f.seed = get_uint(j["seed"], "seed");
    if (j.contains("attempts")) f.attempts = static_cast<std::size_t>(get_uint(j["attempts"], "attempts"));
    for (const auto& row : require(j, "members")) {
      if (!row.is_array() || row.size() != f.s) throw FormatError("each member lists s factors");
      ProductSet p;
      for (const auto& factor : row) p.factors.push_back(set_from_json(factor, f.t));
      f.members.push_back(std::move(p));
    }
    return f;
  });
}

Json search_report_to_json(const SearchReport& r, bool include_timing) {
  Json j;
  j["population"] = r.population;
  j["examined"] = r.examined;
  if (r.seed) j["seed"] = *r.seed;
  if (r.min_mfrank) {
    j["mfrank_lower_bound"] = r.mfrank_lower_bound;
    j["sum_lower_bound"] = r.sum_lower_bound;
    j["min_mfrank"] = *r.min_mfrank;
    j["min_sum_frank"] = *r.min_sum_frank;
    j["violations"] = r.violations;
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
      witnesses.push_back(tensor_to_json(w, Json{{"ranks", flattening_ranks(w)}}));
    }
    j["witnesses"] = witnesses;
  }
  if (r.best_family) {
    j["family_bound"] = r.family_bound;
    j["best_size"] = r.best_family->size();
    j["best_family"] = tuple_family_to_json(*r.best_family);
    j["violations"] = r.violations;
  }
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

Json rainbow_report_to_json(const RainbowReport& r) {
  Json j;
  j["z"] = r.z;
  j["r"] = r.r;
  j["t"] = r.t;
  j["field"] = r.field;
  j["size_bound"] = r.size_bound;
  if (r.matching) {
    Json m = Json::array();
    for (const auto& e : *r.matching) m.push_back(Json{{"color", e.color}, {"edge", e.edge}});
    j["rainbow_matching"] = m;
    j["chain_holds"] = false;
    return j;
  }
  j["rainbow_matching"] = nullptr;
  j["semi_diagonal"] = r.semi_diagonal;
  j["ranks"] = r.ranks;
  j["mfrank"] = r.mfrank;
  j["rank_lower_bound"] = r.rank_lower_bound;
  j["rank_upper_bound"] = r.rank_upper_bound;
  j["chain_holds"] = r.chain_holds;
  return j;
}

Json bollobas_report_to_json(const BollobasReport& r) {
  Json j;
  j["size"] = r.size;
  j["bound"] = r.bound;
  j["sizes_ok"] = r.sizes_ok;
  j["members_disjoint"] = r.members_disjoint;
  j["cross_condition"] = r.cross_condition;
  j["hypothesis"] = r.hypothesis();
  j["violation"] = r.violation ? Json(*r.violation) : Json(nullptr);
  if (!r.ranks.empty()) {
    j["field"] = r.field;
    j["semi_diagonal"] = r.semi_diagonal;
    j["ranks"] = r.ranks;
    j["mfrank"] = r.mfrank;
    j["rank_upper_bounds"] = r.rank_upper_bounds;
  }
  j["verified"] = r.verified();
  return j;
}

std::string digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

Json make_report(const std::string& command, const Json& inputs, const Json& results,
                 std::optional<std::uint64_t> seed) {
  Json j;
  j["command"] = command;
  j["tool_version"] = kToolVersion;
  j["inputs_digest"] = digest(inputs);
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["results"] = results;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace flatrank::io
