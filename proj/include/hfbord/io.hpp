#pragma once
// JSON formats, canonical serialization and the checksum manifest.

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "hfbord/bimodule.hpp"
#include "hfbord/cfk.hpp"
#include "hfbord/typed.hpp"

namespace hfb {

using json = nlohmann::ordered_json;

// Malformed input (exit code 2 at the command line).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const TypeDModule& n);
json to_json(const TypeDAModule& m);
json to_json(const TypeAModule& m);
json to_json(const CFKComplex& c);
json to_json(const TypeDMorphism& h, const TypeDModule& src, const TypeDModule& tgt);

TypeDModule typed_from_json(const json& j);
TypeDAModule typeda_from_json(const json& j);
TypeAModule typea_from_json(const json& j);
CFKComplex cfk_from_json(const json& j);
TypeDMorphism morphism_from_json(const json& j, const TypeDModule& src, const TypeDModule& tgt);

using AnyObject = std::variant<TypeDModule, TypeDAModule, TypeAModule, CFKComplex>;
AnyObject any_from_json(const json& j);
json any_to_json(const AnyObject& o);

json read_json_file(const std::string& path);
std::string dump(const json& j);  // two-space indent, trailing newline
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace hfb
