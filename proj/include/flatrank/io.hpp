#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "flatrank/field.hpp"
#include "flatrank/fw.hpp"
#include "flatrank/rainbow.hpp"
#include "flatrank/search.hpp"
#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

namespace flatrank::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field descriptors: {"kind":"prime","p":N} or {"kind":"binary","k":N}.
Json field_to_json(const FieldDescriptor& field);
FieldDescriptor field_from_json(const Json& j);
/// "prime:5", "binary:8", or a bare prime "5".
FieldDescriptor parse_field_spec(const std::string& spec);

// Tensor documents: {"dims":[...], "field":{...}, "entries":[...]} with
// entries dense row-major, or "sparse":[[[i_1,...,i_d], v], ...] with
// implicit zeros. An optional "meta" object is carried through untouched.
Json tensor_to_json(const Tensor& t, const Json& meta = Json());
Tensor tensor_from_json(const Json& j);

// Sets are written as ascending 0-based index lists and read from either an
// index list or an integer bit-mask.
std::uint64_t set_from_json(const Json& j, unsigned ground);
Json set_to_json(std::uint64_t mask);

// {"n":N, "members":[set, ...]}
Json set_family_to_json(const SetFamily& f);
SetFamily set_family_from_json(const Json& j);
// {"n":N, "d":D, "members":[[set, ...], ...]}; d is inferred when absent.
Json tuple_family_to_json(const TupleFamily& f);
TupleFamily tuple_family_from_json(const Json& j);
// {"k":K, "p":P, "L":[...], "C":[set over [k], ...]}
Json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);
// {"N":N, "r":R, "t":T, "colors":[[edge, ...], ...]}; r and t are inferred
// from the first edge and color when absent.
Json hypergraph_to_json(const ColoredHypergraph& h);
ColoredHypergraph hypergraph_from_json(const Json& j);
// {"N":N, "r":[r_1, ...], "members":[[set, ...], ...]}; r inferred from
// the first member when absent.
Json set_pair_system_to_json(const SetPairSystem& s);
SetPairSystem set_pair_system_from_json(const Json& j);
// {"t":T, "s":S, "k":K, "seed":..., "attempts":..., "members":[[factor, ...], ...],
//  "flat":[set over [t^s], ...]}
Json badbox_family_to_json(const BadboxFamily& f);
BadboxFamily badbox_family_from_json(const Json& j);

// Result bodies.
Json search_report_to_json(const SearchReport& r, bool include_timing = false);
Json rainbow_report_to_json(const RainbowReport& r);
Json bollobas_report_to_json(const BollobasReport& r);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const Json& j);

/// {"command", "tool_version", "inputs_digest", "seed", "results"}
Json make_report(const std::string& command, const Json& inputs, const Json& results,
                 std::optional<std::uint64_t> seed = std::nullopt);

/// Pretty dump with a trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace flatrank::io
