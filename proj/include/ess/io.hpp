#pragma once

// JSON space descriptions and the built-in corpus.
//
// A document is an object with
//   "field":  "Q" | "Z" | "Fp:<p>" | "cyclotomic:<d>"
//   "group":  "Z" | "Z^<n>" | "Zmod:<m>"
// and exactly one of
//   "presentation": {"generators": [...], "relators": [...],
//                    "nu": {"<gen>": <int> | [<int>, ...]}}
//   "matrices":     {"dims": [1, ...], "boundaries": [[["<elem>", ...], ...], ...]}
// Presentations may carry "extra_cells": [[["<elem>", ...], ...], ...], the
// boundary matrices of cells in degrees 3, 4, ... Optional keys: "name",
// "description", "character" (a default epimorphism Z^n -> Z), "parameter"
// and "expected" (checks run by the selftest).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ess/complex.hpp"

namespace ess {

using Json = nlohmann::json;

struct SpaceInput {
  std::string name;
  Json document;
  EquivariantComplex complex;
  /// Default character for reducing Z^n to Z, if the document gives one.
  std::optional<std::vector<std::int64_t>> character;
};

/// Parses JSON text; syntax errors become InputError with line and column.
Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::filesystem::path& path);

/// Builds and validates the complex. Schema errors name the offending key.
EquivariantComplex parse_input(const Json& doc);
SpaceInput load_space(const Json& doc, const std::string& name);

/// Directory holding the built-in documents.
std::filesystem::path builtin_dir();
/// Plain names plus one instance of each parametrized family.
std::vector<std::string> builtin_names();
/// Instances exercised by the selftest and the acceptance checks.
std::vector<std::string> builtin_instances();
/// "trefoil", "lyndon:6", "comm-p:3": the document with parameters
/// substituted.
Json builtin_document(const std::string& name);
SpaceInput load_builtin(const std::string& name);

/// Parses "a=2,b=1" or "a=1:0,b=0:1" against the presentation generators.
std::vector<Exponent> parse_images(const std::string& text, const Presentation& p);

}  // namespace ess
