#pragma once

// JSON (de)serialization of models, partitions and valuations.
//
// Model:      {"states":[names], "labels":[{"name":..,"co":..}],
//              "transitions":[{"from":s,"label":l,"dist":{s:"p/q",...}}],
//              "props":{p:{s:"p/q"}}}
// Partition:  [[names], ...]
// Valuation:  {s:"p/q", ...}   (omitted states are 0)

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pnts/model.hpp"

namespace pnts::io {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r, bool as_float = false);

Pnts model_from_json(const Json& j);
Json model_to_json(const Pnts& m);
Pnts load_model(const std::filesystem::path& path);
Pnts parse_model(const std::string& text);

Partition partition_from_json(const Json& j, const Pnts& m);
Json partition_to_json(const Partition& p, const Pnts& m);

Valuation valuation_from_json(const Json& j, const Pnts& m, bool unit_interval = false);
Json valuation_to_json(const Valuation& f, const Pnts& m, bool as_float = false);

/// Reads a JSON document from `arg`, which is either inline JSON text or a file path.
Json read_json_argument(const std::string& arg);

/// Graphviz dump of the transition structure.
std::string to_dot(const Pnts& m);

}  // namespace pnts::io
