#include "ess/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "ess/errors.hpp"
#include "ess/field.hpp"

#ifndef ESS_BUILTIN_DIR
#define ESS_BUILTIN_DIR "data/builtins"
#endif

namespace ess {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing required key '" + key + "'");
  return *it;
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

std::int64_t as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

template <class F>
auto forward_errors(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

bool integral(const GroupRingElem& a) {
  for (const auto& [e, c] : a.terms())
    if (c.rational().get_den() != 1) return false;
  return true;
}

struct ParsedMatrix {
  GRMatrix m;
  std::optional<GRMatrix> integral;
};

// Entries are parsed over the document field; Q and Z documents with
// integer entries also keep the matrix over Z.
ParsedMatrix parse_matrix(const Json& rows, std::size_t nrows, std::size_t ncols, const GroupDescriptor& g,
                          const FieldDescriptor& f, const std::string& where) {
  if (!rows.is_array() || rows.size() != nrows)
    fail(where, "expected " + std::to_string(nrows) + " rows");
  const bool rational = f.kind() == FieldKind::Integers || f.kind() == FieldKind::Rationals;
  const FieldDescriptor parse_field = rational ? FieldDescriptor::rationals() : f;
  const FieldDescriptor z = FieldDescriptor::integers();
  ParsedMatrix out{GRMatrix(nrows, ncols, GroupRingElem(g, f)), std::nullopt};
  GRMatrix ints(nrows, ncols, GroupRingElem(g, z));
  bool all_integral = rational;
  for (std::size_t i = 0; i < nrows; ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != ncols)
      fail(rw, "expected " + std::to_string(ncols) + " entries");
    for (std::size_t j = 0; j < ncols; ++j) {
      const std::string ew = rw + "[" + std::to_string(j) + "]";
      const Json& cell = rows[i][j];
      std::string text = cell.is_number_integer() ? std::to_string(cell.get<std::int64_t>()) : as_string(cell, ew);
      GroupRingElem a = forward_errors(ew, [&] { return GroupRingElem::parse(g, parse_field, text); });
      if (rational && integral(a)) {
        ints(i, j) = a.converted(z);
      } else {
        if (f.kind() == FieldKind::Integers) fail(ew, "non-integer coefficient in '" + text + "' over Z");
        all_integral = false;
      }
      out.m(i, j) = rational ? a.converted(f) : a;
    }
  }
  if (all_integral) out.integral = ints;
  return out;
}

Exponent parse_image(const Json& v, const GroupDescriptor& g, const std::string& where) {
  Exponent e;
  if (v.is_number_integer()) {
    e.push_back(v.get<std::int64_t>());
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) e.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
  } else {
    fail(where, "expected an integer or an array of integers");
  }
  if (e.size() != g.arity())
    fail(where, "image has " + std::to_string(e.size()) + " entries, " + g.to_string() + " needs " +
                    std::to_string(g.arity()));
  return e;
}

EquivariantComplex from_presentation(const Json& doc, const FieldDescriptor& f, const GroupDescriptor& g) {
  const Json& pres = doc.at("presentation");
  check_keys(pres, {"generators", "relators", "nu"}, "presentation");
  Presentation p;
  const Json& gens = require(pres, "generators", "presentation");
  if (!gens.is_array() || gens.empty()) fail("presentation.generators", "expected a non-empty array");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string name = as_string(gens[i], "presentation.generators[" + std::to_string(i) + "]");
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
      fail("presentation.generators[" + std::to_string(i) + "]", "generator names start with a lowercase letter");
    if (std::find(p.generators.begin(), p.generators.end(), name) != p.generators.end())
      fail("presentation.generators[" + std::to_string(i) + "]", "duplicate generator '" + name + "'");
    p.generators.push_back(name);
  }
  if (pres.contains("relators")) {
    const Json& rels = pres.at("relators");
    if (!rels.is_array()) fail("presentation.relators", "expected an array");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string w = "presentation.relators[" + std::to_string(i) + "]";
      const std::string text = as_string(rels[i], w);
      p.relators.push_back(forward_errors(w, [&] { return parse_word(text, p.generators); }));
    }
  }
  const Json& nu = require(pres, "nu", "presentation");
  if (!nu.is_object()) fail("presentation.nu", "expected an object mapping generators to images");
  Epimorphism eps{g, {}};
  for (const auto& name : p.generators) {
    if (!nu.contains(name)) fail("presentation.nu", "no image for generator '" + name + "'");
    eps.images.push_back(parse_image(nu.at(name), g, "presentation.nu." + name));
  }
  for (const auto& [key, v] : nu.items())
    if (std::find(p.generators.begin(), p.generators.end(), key) == p.generators.end())
      fail("presentation.nu", "image given for unknown generator '" + key + "'");
  EquivariantComplex c = forward_errors("presentation", [&] { return presentation_complex(p, eps, f); });
  if (doc.contains("extra_cells")) {
    const Json& extra = doc.at("extra_cells");
    if (!extra.is_array()) fail("extra_cells", "expected an array of boundary matrices");
    for (std::size_t k = 0; k < extra.size(); ++k) {
      const std::string w = "extra_cells[" + std::to_string(k) + "]";
      if (!extra[k].is_array()) fail(w, "expected a matrix");
      if (c.top_degree() < 2) fail(w, "extra cells need a 2-skeleton with relators");
      const std::size_t below = c.dim(c.top_degree());
      ParsedMatrix m = parse_matrix(extra[k], extra[k].size(), below, g, f, w);
      c = forward_errors(w, [&] { return attach_cells(c, m.m, m.integral); });
    }
  }
  return c;
}

EquivariantComplex from_matrices(const Json& doc, const FieldDescriptor& f, const GroupDescriptor& g) {
  const Json& mats = doc.at("matrices");
  check_keys(mats, {"dims", "boundaries"}, "matrices");
  const Json& dj = require(mats, "dims", "matrices");
  if (!dj.is_array() || dj.empty()) fail("matrices.dims", "expected a non-empty array");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    const std::int64_t v = as_int(dj[i], "matrices.dims[" + std::to_string(i) + "]");
    if (v < 0) fail("matrices.dims[" + std::to_string(i) + "]", "negative dimension");
    dims.push_back(static_cast<std::size_t>(v));
  }
  const Json& bj = require(mats, "boundaries", "matrices");
  if (!bj.is_array() || bj.size() + 1 != dims.size())
    fail("matrices.boundaries", "expected " + std::to_string(dims.size() - 1) + " matrices for dims of length " +
                                    std::to_string(dims.size()));
  std::vector<GRMatrix> bds, ints;
  bool shadow = true;
  for (std::size_t q = 1; q < dims.size(); ++q) {
    const std::string w = "matrices.boundaries[" + std::to_string(q - 1) + "]";
    ParsedMatrix m = parse_matrix(bj[q - 1], dims[q], dims[q - 1], g, f, w);
    bds.push_back(m.m);
    if (m.integral)
      ints.push_back(*m.integral);
    else
      shadow = false;
  }
  if (shadow && f.kind() != FieldKind::Integers)
    return EquivariantComplex(f, g, dims, bds, ints, "matrices");
  return complex_from_matrices(f, g, dims, bds);
}

std::size_t line_of(const std::string& text, std::size_t byte, std::size_t& column) {
  std::size_t line = 1, last = 0;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') {
      ++line;
      last = i + 1;
    }
  column = byte >= last ? byte - last : 0;
  return line;
}

std::string substitute(const std::string& s, const std::string& param, std::uint64_t value) {
  std::string out = std::regex_replace(s, std::regex("\\{" + param + "\\}"), std::to_string(value));
  static const std::regex phi("\\{Phi:([A-Za-z0-9]+)\\}");
  std::smatch m;
  while (std::regex_search(out, m, phi)) {
    const std::string poly = "(" + cyclotomic_polynomial(value).to_string(m[1].str()) + ")";
    out = m.prefix().str() + poly + m.suffix().str();
  }
  return out;
}

Json substitute_all(const Json& j, const std::string& param, std::uint64_t value) {
  if (j.is_string()) return substitute(j.get<std::string>(), param, value);
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& x : j) out.push_back(substitute_all(x, param, value));
    return out;
  }
  if (j.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : j.items()) out[k] = substitute_all(v, param, value);
    return out;
  }
  return j;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1, col);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col + 1) +
                     ": invalid JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

EquivariantComplex parse_input(const Json& doc) {
  check_keys(doc,
             {"name", "description", "field", "group", "presentation", "matrices", "extra_cells", "character",
              "parameter", "expected"},
             "document");
  const FieldDescriptor f =
      forward_errors("field", [&] { return FieldDescriptor::parse(as_string(require(doc, "field", "document"), "field")); });
  const GroupDescriptor g =
      forward_errors("group", [&] { return GroupDescriptor::parse(as_string(require(doc, "group", "document"), "group")); });
  const bool pres = doc.contains("presentation"), mats = doc.contains("matrices");
  if (pres == mats) fail("document", "give exactly one of 'presentation' and 'matrices'");
  if (mats && doc.contains("extra_cells")) fail("extra_cells", "only allowed together with 'presentation'");
  return pres ? from_presentation(doc, f, g) : from_matrices(doc, f, g);
}

SpaceInput load_space(const Json& doc, const std::string& name) {
  SpaceInput in{doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>() : name, doc,
                parse_input(doc), std::nullopt};
  if (doc.contains("character")) {
    const Json& ch = doc.at("character");
    std::vector<std::int64_t> v;
    if (!ch.is_array()) fail("character", "expected an array of integers");
    for (std::size_t i = 0; i < ch.size(); ++i) v.push_back(as_int(ch[i], "character[" + std::to_string(i) + "]"));
    if (!in.complex.group().is_free_abelian() || v.size() != in.complex.group().rank())
      fail("character", "needs one entry per coordinate of " + in.complex.group().to_string());
    in.character = v;
  }
  return in;
}

std::filesystem::path builtin_dir() { return ESS_BUILTIN_DIR; }

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(builtin_dir()))
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> builtin_instances() {
  std::vector<std::string> out;
  for (const auto& name : builtin_names()) {
    const Json doc = read_json_file(builtin_dir() / (name + ".json"));
    if (!doc.contains("parameter")) {
      out.push_back(name);
      continue;
    }
    for (const auto& v : doc.at("parameter").at("instances"))
      out.push_back(name + ":" + std::to_string(v.get<std::uint64_t>()));
  }
  return out;
}

Json builtin_document(const std::string& name) {
  const auto colon = name.find(':');
  const std::string base = name.substr(0, colon);
  const auto path = builtin_dir() / (base + ".json");
  if (base.empty() || base.find_first_of("/\\.") != std::string::npos || !std::filesystem::exists(path)) {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown built-in '" + name + "' (available: " + known + ")");
  }
  Json doc = read_json_file(path);
  if (!doc.contains("parameter")) {
    if (colon != std::string::npos) throw InputError("built-in '" + base + "' takes no parameter");
    return doc;
  }
  const Json& param = doc.at("parameter");
  const std::string pname = param.at("name").get<std::string>();
  if (colon == std::string::npos)
    throw InputError("built-in '" + base + "' needs a parameter, e.g. " + base + ":" +
                     std::to_string(param.at("instances").at(0).get<std::uint64_t>()));
  const std::string text = name.substr(colon + 1);
  std::uint64_t value = 0;
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      text.size() > 6)
    throw InputError("bad parameter '" + text + "' for built-in '" + base + "'");
  value = std::stoull(text);
  if (value < param.value("min", std::uint64_t{1}))
    throw InputError(base + ": parameter " + pname + " must be at least " + std::to_string(param.value("min", 1)));
  if (param.value("prime", false) && !is_prime(value))
    throw InputError(base + ": parameter " + pname + " must be prime");
  Json expected = doc.contains("expected") ? doc.at("expected") : Json::array();
  doc.erase("expected");
  doc.erase("parameter");
  doc = substitute_all(doc, pname, value);
  doc["name"] = name;
  // Only the checks recorded for this instance apply.
  Json kept = Json::array();
  for (const auto& check : expected)
    if (check.contains("instance") && check.at("instance").get<std::uint64_t>() == value) {
      Json c = check;
      c.erase("instance");
      kept.push_back(c);
    }
  doc["expected"] = kept;
  return doc;
}

SpaceInput load_builtin(const std::string& name) {
  Json doc = builtin_document(name);
  try {
    return load_space(doc, name);
  } catch (const InputError& e) {
    throw InputError("built-in '" + name + "': " + e.what());
  }
}

std::vector<Exponent> parse_images(const std::string& text, const Presentation& p) {
  std::vector<std::optional<Exponent>> images(p.arity());
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--nu: expected name=value in '" + item + "'");
    const std::size_t i = p.index_of(item.substr(0, eq));
    Exponent e;
    std::stringstream vs(item.substr(eq + 1));
    std::string part;
    while (std::getline(vs, part, ':')) {
      try {
        std::size_t used = 0;
        e.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw InputError("--nu: bad integer '" + part + "'");
      }
    }
    if (images[i]) throw InputError("--nu: generator '" + p.generators[i] + "' given twice");
    images[i] = e;
  }
  std::vector<Exponent> out;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!images[i]) throw InputError("--nu: no image for generator '" + p.generators[i] + "'");
    out.push_back(*images[i]);
  }
  return out;
}

}  // namespace ess
