#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "../common/generators.hpp"
#include "flatrank/io.hpp"

using namespace flatrank;
using io::Json;

TEST_CASE("field documents") {
  for (const auto& f : {make_prime_field(2), make_prime_field(7), make_binary_field(1), make_binary_field(8)}) {
    CHECK(io::field_from_json(io::field_to_json(f)) == f);
  }
  CHECK(io::parse_field_spec("prime:5") == make_prime_field(5));
  CHECK(io::parse_field_spec("binary:8") == make_binary_field(8));
  CHECK(io::parse_field_spec("3") == make_prime_field(3));
  CHECK_THROWS_AS(io::parse_field_spec("prime:6"), io::FormatError);
  CHECK_THROWS_AS(io::parse_field_spec("ternary:2"), io::FormatError);
  CHECK_THROWS_AS(io::parse_field_spec("binary:"), io::FormatError);
  CHECK_THROWS_AS(io::field_from_json(Json{{"kind", "prime"}}), io::FormatError);
  CHECK_THROWS_AS(io::field_from_json(Json{{"kind", "prime"}, {"p", -3}}), io::FormatError);
}

TEST_CASE("tensor documents round-trip bit-exactly") {
  Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = trial % 3 == 0 ? make_binary_field(5) : make_prime_field(trial % 2 == 0 ? 2 : 11);
    std::vector<std::size_t> dims(1 + rng.uniform(3));
    for (auto& d : dims) d = 1 + rng.uniform(4);
    const auto t = gen::random_tensor(dims, f, rng);
    const auto doc = io::tensor_to_json(t);
    const auto text = io::dump(doc);
    const auto back = io::tensor_from_json(Json::parse(text));
    CHECK(back == t);
    CHECK(io::dump(io::tensor_to_json(back)) == text);
  }
}

TEST_CASE("sparse and dense tensor documents agree") {
  const auto dense = Json::parse(R"({"dims":[2,2],"field":{"kind":"prime","p":3},"entries":[0,2,0,1]})");
  const auto sparse = Json::parse(R"({"dims":[2,2],"field":{"kind":"prime","p":3},"sparse":[[[0,1],2],[[1,1],1]]})");
  CHECK(io::tensor_from_json(dense) == io::tensor_from_json(sparse));

  const auto meta = io::tensor_to_json(io::tensor_from_json(dense), Json{{"note", "x"}});
  CHECK(meta["meta"]["note"] == "x");
}

TEST_CASE("malformed tensor documents") {
  const char* bad[] = {
      R"({"field":{"kind":"prime","p":3},"entries":[0]})",
      R"({"dims":[],"field":{"kind":"prime","p":3},"entries":[]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"entries":[0]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"entries":[0,3]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"entries":[0,-1]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"entries":[0,1],"sparse":[]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3}})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"sparse":[[[2],1]]})",
      R"({"dims":[2],"field":{"kind":"prime","p":3},"sparse":[[0,1,2]]})",
      R"({"dims":["a"],"field":{"kind":"prime","p":3},"entries":[0]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::tensor_from_json(Json::parse(text)), io::FormatError);
  }
}

TEST_CASE("set and family documents") {
  CHECK(io::set_from_json(Json::parse("[0,2]"), 3) == 0b101);
  CHECK(io::set_from_json(Json(5), 3) == 0b101);
  CHECK(io::set_to_json(0b101) == Json::parse("[0,2]"));
  CHECK_THROWS_AS(io::set_from_json(Json::parse("[0,0]"), 3), io::FormatError);
  CHECK_THROWS_AS(io::set_from_json(Json::parse("[3]"), 3), io::FormatError);
  CHECK_THROWS_AS(io::set_from_json(Json("x"), 3), io::FormatError);

  SetFamily sf{4, {0b0011, 0b1000, 0}};
  CHECK(io::set_family_from_json(io::set_family_to_json(sf)) == sf);
  const auto tf = repeated_singletons(3, 3, 2);
  CHECK(io::tuple_family_from_json(io::tuple_family_to_json(tf)) == tf);
  auto no_d = io::tuple_family_to_json(tf);
  no_d.erase("d");
  CHECK(io::tuple_family_from_json(no_d) == tf);

  const auto cfg = Configuration::complete_graph(3, 3, {0, 2});
  CHECK(io::configuration_from_json(io::configuration_to_json(cfg)) == cfg);

  Rng rng(97);
  const auto h = gen::random_hypergraph(rng);
  CHECK(io::hypergraph_from_json(io::hypergraph_to_json(h)) == h);

  SetPairSystem sp{4, {1, 2}, {{0b0001, 0b0110}}};
  const auto sp_back = io::set_pair_system_from_json(io::set_pair_system_to_json(sp));
  CHECK(sp_back.ground == sp.ground);
  CHECK(sp_back.sizes == sp.sizes);
  CHECK(sp_back.members == sp.members);

  const auto bb = sample_badbox_family(3, 2, 7);
  const auto bb_back = io::badbox_family_from_json(io::badbox_family_to_json(bb));
  CHECK(bb_back.members == bb.members);
  CHECK(bb_back.k == bb.k);
  CHECK(bb_back.attempts == bb.attempts);
}

TEST_CASE("reports and digests") {
  const Json inputs{{"a", 3}, {"d", 3}};
  CHECK(io::digest(inputs) == io::digest(Json::parse(R"({"a":3,"d":3})")));
  CHECK(io::digest(inputs) != io::digest(Json{{"a", 3}, {"d", 4}}));
  CHECK(io::digest(inputs).size() == 16);
  // FNV-1a of the empty object "{}".
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : std::string("{}")) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  CHECK(io::digest(Json::object()) == std::string(hex));

  const auto report = io::make_report("experiment exhaustive", inputs, Json{{"x", 1}});
  CHECK(report["seed"].is_null());
  CHECK(report["tool_version"] == io::kToolVersion);
  const auto seeded = io::make_report("experiment exhaustive", inputs, Json{{"x", 1}}, 7);
  CHECK(seeded["seed"] == 7);
  CHECK(io::dump(report).back() == '\n');

  SearchReport r;
  r.population = "p";
  r.elapsed_seconds = 1.5;
  CHECK_FALSE(io::search_report_to_json(r).contains("elapsed_seconds"));
  CHECK(io::search_report_to_json(r, true)["elapsed_seconds"] == 1.5);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "flatrank_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "doc.json";
  io::write_file_atomic(path, io::dump(Json{{"k", 1}}));
  CHECK(io::read_json_file(path) == Json{{"k", 1}});
  CHECK_FALSE(std::filesystem::exists(dir / "doc.json.tmp"));
  {
    std::ofstream out(dir / "broken.json");
    out << "{\"k\":";
  }
  CHECK_THROWS_AS(io::read_json_file(dir / "broken.json"), io::FormatError);
  CHECK_THROWS_AS(io::read_json_file(dir / "missing.json"), io::FormatError);
  std::filesystem::remove_all(dir);
}
