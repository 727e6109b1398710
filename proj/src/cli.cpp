#include "ess/cli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "ess/aomoto.hpp"
#include "ess/errors.hpp"
#include "ess/modz.hpp"
#include "ess/pages.hpp"
#include "ess/twisted.hpp"

namespace ess {

namespace {

class HypothesisNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* describe(const std::string& verb) {
  if (verb == "pages") return "pages E^1..E^R of the J-adic spectral sequence on 0 <= s <= S";
  if (verb == "decompose") return "H_q(X, kZ) as a k[t^{+-1}]-module (G = Z)";
  if (verb == "monodromy") return "the three trivial-monodromy conditions per degree (G = Z)";
  if (verb == "aomoto") return "Aomoto Betti numbers beta_q(X, nu_k)";
  if (verb == "universal-aomoto") return "universal Aomoto complex of a minimal complex over kZ^n";
  if (verb == "twisted") return "twisted Betti numbers b_q(X, nu/d)";
  if (verb == "alexander") return "Alexander polynomial (G = Z)";
  if (verb == "bounds") return "b_q(X, nu/p^r), b_q(X, F_p) and beta_q(X, nu_{F_p}) side by side";
  if (verb == "betti") return "Betti numbers b_q(X, k)";
  if (verb == "validate") return "parse and validate the input";
  if (verb == "selftest") return "run the stored checks of every built-in";
  return "";
}

// ------------------------------------------------------------ resolving

std::pair<std::size_t, std::size_t> q_bounds(const CommandOptions& o, std::size_t top) {
  if (!o.q_range) return {0, top};
  const std::string& s = *o.q_range;
  auto num = [&](const std::string& t) -> std::size_t {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InputError("--q-range: expected q or lo:hi, got '" + s + "'");
    return std::stoul(t);
  };
  const auto colon = s.find(':');
  std::size_t lo = 0, hi = 0;
  if (colon == std::string::npos) {
    lo = hi = num(s);
  } else {
    lo = num(s.substr(0, colon));
    hi = num(s.substr(colon + 1));
  }
  if (lo > hi) throw InputError("--q-range: empty range '" + s + "'");
  return {lo, std::min(hi, top)};
}

SpaceInput load(const CommandOptions& o) {
  if (o.input.has_value() == o.builtin.has_value())
    throw InputError("give exactly one input: a JSON file or --builtin <name>");
  if (o.builtin) return load_builtin(*o.builtin);
  return load_space(read_json_file(*o.input), *o.input);
}

std::vector<std::int64_t> character_of(const SpaceInput& in, const EquivariantComplex& c, bool renamed) {
  if (!c.group().is_free_abelian()) throw UnsupportedInput("a character needs G = Z^n, got " + c.group().to_string());
  if (c.group().rank() == 1) return {1};
  if (in.character && !renamed) return *in.character;
  throw InputError("G = " + c.group().to_string() + ": give --nu or a \"character\" in the document");
}

// Applies --nu and --group-quotient. `renamed` reports whether the group
// of the document was replaced, which voids its stored character.
EquivariantComplex apply_group(const SpaceInput& in, const CommandOptions& o, bool& renamed) {
  renamed = false;
  const EquivariantComplex& c = in.complex;
  if (o.nu) {
    if (!c.presentation()) throw InputError("--nu needs a presentation input");
    if (in.document.contains("extra_cells"))
      throw InputError("--nu cannot move extra_cells; use --group-quotient instead");
    const Presentation& p = *c.presentation();
    const auto images = parse_images(*o.nu, p);
    const GroupDescriptor target =
        o.group_quotient ? GroupDescriptor::parse(*o.group_quotient) : GroupDescriptor::free_abelian(images[0].size());
    renamed = true;
    return presentation_complex(p, {target, images}, c.field());
  }
  if (!o.group_quotient) return c;
  const GroupDescriptor target = GroupDescriptor::parse(*o.group_quotient);
  if (target == c.group()) return c;
  renamed = true;
  if (c.group().is_free_abelian() && target.is_free_abelian() && target.rank() == 1) {
    std::vector<Exponent> images;
    for (auto v : character_of(in, c, false)) images.push_back({v});
    return base_change(c, target, images);
  }
  if (c.group().is_free_abelian() && !target.is_free_abelian()) {
    std::vector<Exponent> images;
    for (auto v : character_of(in, c, false)) images.push_back({v});
    return base_change(c, target, images);
  }
  if (!c.group().is_free_abelian() && !target.is_free_abelian())
    return base_change(c, target, {{1}});
  throw InputError("no canonical map " + c.group().to_string() + " -> " + target.to_string() + "; give --nu");
}

EquivariantComplex apply_field(const EquivariantComplex& c, const std::optional<std::string>& field) {
  if (!field) return c;
  const FieldDescriptor f = FieldDescriptor::parse(*field);
  return f == c.field() ? c : change_field(c, f);
}

// G = Z^n is reduced along the (primitive) character.
EquivariantComplex over_z(const SpaceInput& in, const EquivariantComplex& c, bool renamed) {
  if (!c.group().is_free_abelian())
    throw UnsupportedInput("this verb needs G = Z, got " + c.group().to_string());
  if (c.group().rank() == 1) return c;
  const auto chi = character_of(in, c, renamed);
  std::int64_t g = 0;
  for (auto v : chi) g = std::gcd(g, v);
  if (g != 1) throw InputError("the character is not primitive; it does not define an epimorphism onto Z");
  std::vector<Exponent> images;
  for (auto v : chi) images.push_back({v});
  return base_change(c, GroupDescriptor::free_abelian(1), images);
}

FieldDescriptor field_or_q(const FieldDescriptor& f) {
  return f.kind() == FieldKind::Integers ? FieldDescriptor::rationals() : f;
}

Json header(const std::string& verb, const SpaceInput& in, const EquivariantComplex& c) {
  return Json{{"verb", verb}, {"space", in.name}, {"field", c.field().to_string()}, {"group", c.group().to_string()}};
}

Json matrix_json(const GRMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- verbs

Json do_validate(const SpaceInput& in, const EquivariantComplex& c) {
  Json r = header("validate", in, c);
  r["valid"] = true;
  r["provenance"] = c.provenance();
  r["dims"] = c.dims();
  r["integral_shadow"] = c.has_integral_shadow();
  r["minimal"] = is_minimal(c);
  Json bds = Json::array();
  for (std::size_t q = 1; q <= c.top_degree(); ++q) bds.push_back(matrix_json(c.boundary(q)));
  r["boundaries"] = bds;
  return r;
}

Json do_betti(const SpaceInput& in, const EquivariantComplex& c) {
  Json r = header("betti", in, c);
  r["b"] = betti_numbers(c);
  return r;
}

Json do_pages(const SpaceInput& in, const EquivariantComplex& input, const CommandOptions& o) {
  const EquivariantComplex c = input.field().kind() == FieldKind::Integers
                                   ? change_field(input, FieldDescriptor::rationals())
                                   : input;
  if (o.pages == 0) throw InputError("--R must be at least 1");
  const PageSet ps = compute_pages(c, o.pages, o.window);
  const auto [lo, hi] = q_bounds(o, c.top_degree());
  Json r = header("pages", in, c);
  r["window"] = {{"R", o.pages}, {"S", o.window}, {"truncation", ps.truncation}};
  r["window_collapse"] = ps.window_collapse ? Json(*ps.window_collapse) : Json(nullptr);
  Json pages = Json::array();
  for (const auto& page : ps.pages) {
    Json entries = Json::array();
    for (const auto& e : page.entries())
      if (e.q >= lo && e.q <= hi) entries.push_back({{"s", e.s}, {"q", e.q}, {"dim", e.dim}, {"d_rank", e.d_rank}});
    pages.push_back({{"r", page.r}, {"entries", entries}});
  }
  r["pages"] = pages;
  return r;
}

Json do_decompose(const SpaceInput& in, const EquivariantComplex& c, const CommandOptions& o) {
  const auto [lo, hi] = q_bounds(o, c.top_degree());
  Json r = header("decompose", in, c);
  r["field"] = field_or_q(c.field()).to_string();
  Json mods = Json::array();
  for (std::size_t q = lo; q <= hi; ++q) {
    const LaurentModuleDecomp d = homology_decomposition(c, q);
    Json inv = Json::array(), other = Json::array(), gr = Json::array();
    for (const auto& f : d.invariant_factors) inv.push_back(f.to_string());
    for (const auto& op : d.other_primary)
      other.push_back({{"poly", op.poly.to_string()}, {"exp", op.exp}, {"mult", op.mult}});
    const GrModule g = einf_gr_module(d);
    for (std::size_t s = 0; s <= o.window; ++s) gr.push_back(g.dim(s));
    mods.push_back({{"q", q},
                    {"free_rank", d.free_rank},
                    {"invariant_factors", inv},
                    {"t_minus_1_blocks", d.t_minus_1_blocks},
                    {"other_primary", other},
                    {"separated", d.separated()},
                    {"gr_dims", gr}});
  }
  r["modules"] = mods;
  return r;
}

Json do_monodromy(const SpaceInput& in, const EquivariantComplex& c, const CommandOptions& o) {
  const std::size_t k = q_bounds(o, c.top_degree()).second;
  const MonodromyReport rep = monodromy_report(c, k);
  Json r = header("monodromy", in, c);
  r["field"] = field_or_q(c.field()).to_string();
  Json degs = Json::array();
  for (const auto& d : rep.degrees)
    degs.push_back({{"q", d.q},
                    {"beta", d.beta},
                    {"free_rank", d.decomposition.free_rank},
                    {"t_minus_1_blocks", d.decomposition.t_minus_1_blocks},
                    {"snf_trivial", d.snf_trivial},
                    {"pages_trivial", d.pages_trivial},
                    {"aomoto_trivial", d.beta == 0}});
  r["degrees"] = degs;
  r["trivial"] = rep.verdicts;
  return r;
}

Json do_aomoto(const SpaceInput& in, const EquivariantComplex& c, bool renamed) {
  const FieldDescriptor k = field_or_q(c.field());
  AomotoData a;
  if (c.group().is_free_abelian() && c.group().rank() > 1)
    a = aomoto_betti_character(c, character_of(in, c, renamed), k);
  else
    a = aomoto_betti(c, k);
  Json r = header("aomoto", in, c);
  r["field"] = k.to_string();
  r["beta"] = a.beta;
  r["ranks"] = a.ranks;
  r["route"] = a.route;
  return r;
}

Json do_universal(const SpaceInput& in, const EquivariantComplex& c) {
  const UniversalAomoto u = universal_aomoto(c);
  Json r = header("universal-aomoto", in, c);
  r["field"] = u.field.to_string();
  r["variables"] = u.variables;
  r["dims"] = u.dims;
  Json ds = Json::array();
  for (std::size_t q = 0; q < u.differentials.size(); ++q) {
    const auto& m = u.differentials[q];
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
      rows.push_back(row);
    }
    ds.push_back({{"from", q}, {"matrix", rows}});
  }
  r["differentials"] = ds;
  r["squares_to_zero"] = u.squares_to_zero();
  return r;
}

Json do_twisted(const SpaceInput& in, const EquivariantComplex& c, const CommandOptions& o, bool renamed) {
  if (!o.d) throw InputError("twisted needs --d");
  if (o.field) throw InputError("twisted evaluates over Q(zeta_d); --field does not apply");
  std::vector<std::size_t> b;
  if (c.group().is_free_abelian() && c.group().rank() > 1)
    b = twisted_betti_character(c, *o.d, character_of(in, c, renamed));
  else
    b = twisted_betti(c, *o.d);
  Json r = header("twisted", in, c);
  r["d"] = *o.d;
  r["b"] = b;
  return r;
}

Json do_alexander(const SpaceInput& in, const EquivariantComplex& c) {
  const AlexanderResult a = alexander_polynomial(c);
  Json r = header("alexander", in, c);
  r["polynomial"] = a.poly.to_string();
  r["notice"] = a.notice.empty() ? Json(nullptr) : Json(a.notice);
  return r;
}

Json do_bounds(const SpaceInput& in, const EquivariantComplex& c, const CommandOptions& o) {
  if (!o.p) throw InputError("bounds needs --p");
  if (o.field) throw InputError("bounds fixes its own coefficients; --field does not apply");
  const BoundsReport b = bounds_report(c, *o.p, o.r);
  Json r = header("bounds", in, c);
  r["p"] = b.p;
  r["r"] = b.r;
  r["twisted"] = b.twisted;
  r["mod_p"] = b.mod_p;
  r["beta"] = b.beta;
  r["torsion_free"] = b.torsion_free;
  std::vector<bool> strict_low, strict_high;
  for (std::size_t q = 0; q < b.twisted.size(); ++q) {
    strict_low.push_back(b.twisted[q] < b.beta[q]);
    strict_high.push_back(b.beta[q] < b.mod_p[q]);
  }
  r["twisted_lt_beta"] = strict_low;
  r["beta_lt_mod_p"] = strict_high;
  r["bettibound"] = b.bettibound;
  r["cohobound_raw"] = b.cohobound;
  r["cohobound"] = !b.cohobound_applicable ? "not-applicable" : (b.cohobound ? "holds" : "fails");
  return r;
}

Json dispatch(const CommandOptions& o) {
  const SpaceInput in = load(o);
  bool renamed = false;
  const EquivariantComplex grouped = apply_group(in, o, renamed);
  const std::string& v = o.verb;
  if (v == "validate") return do_validate(in, apply_field(grouped, o.field));
  if (v == "betti") return do_betti(in, apply_field(grouped, o.field));
  if (v == "pages") return do_pages(in, apply_field(grouped, o.field), o);
  if (v == "universal-aomoto") return do_universal(in, apply_field(grouped, o.field));
  if (v == "aomoto") return do_aomoto(in, apply_field(grouped, o.field), renamed);
  if (v == "twisted") return do_twisted(in, grouped, o, renamed);
  const EquivariantComplex z = over_z(in, grouped, renamed);
  if (v == "decompose") return do_decompose(in, apply_field(z, o.field), o);
  if (v == "monodromy") return do_monodromy(in, apply_field(z, o.field), o);
  if (v == "alexander") return do_alexander(in, apply_field(z, o.field));
  if (v == "bounds") return do_bounds(in, z, o);
  throw InputError("unknown verb '" + v + "'");
}

// ------------------------------------------------------------- selftest

Json do_selftest() {
  Json checks = Json::array();
  std::size_t failed = 0;
  auto record = [&](const std::string& space, const std::string& command, const std::string& pointer,
                    const Json& expected, const Json& actual) {
    const bool ok = expected == actual;
    if (!ok) ++failed;
    checks.push_back({{"space", space},
                      {"command", command},
                      {"pointer", pointer},
                      {"expected", expected},
                      {"actual", actual},
                      {"ok", ok}});
  };
  for (const auto& inst : builtin_instances()) {
    std::vector<std::pair<std::vector<std::string>, Json>> runs{{{"validate"}, Json::array()}};
    const Json doc = builtin_document(inst);
    for (const auto& check : doc.value("expected", Json::array())) {
      std::vector<std::string> args = check.at("command").get<std::vector<std::string>>();
      runs.push_back({args, check});
    }
    for (auto& [args, check] : runs) {
      std::string line;
      for (const auto& a : args) line += (line.empty() ? "" : " ") + a;
      args.push_back("--builtin");
      args.push_back(inst);
      CommandOutcome out;
      try {
        out = run_command(parse_command_line(args));
      } catch (const InputError& e) {
        out.exit_code = kExitInput;
        out.error = e.what();
      }
      const int want_exit = check.is_object() ? check.value("exit", 0) : 0;
      if (out.exit_code != want_exit) {
        record(inst, line, "exit", want_exit, out.exit_code);
        continue;
      }
      if (out.report.is_null()) continue;
      // Reports must survive a print/parse cycle unchanged.
      const std::string dumped = out.report.dump(2);
      if (Json::parse(dumped).dump(2) != dumped) record(inst, line, "roundtrip", true, false);
      if (!check.is_object()) {
        record(inst, line, "/valid", true, out.report.value("valid", false));
        continue;
      }
      const std::string pointer = check.at("pointer").get<std::string>();
      const Json::json_pointer ptr(pointer);
      record(inst, line, pointer, check.at("value"), out.report.contains(ptr) ? out.report.at(ptr) : Json(nullptr));
    }
  }
  return Json{{"verb", "selftest"}, {"checks", checks}, {"total", checks.size()}, {"failed", failed}};
}

// ------------------------------------------------------------- rendering

std::string table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size(), 0);
  for (std::size_t j = 0; j < head.size(); ++j) w[j] = head[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size() && j < w.size(); ++j) w[j] = std::max(w[j], row[j].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      std::string cell = cells[j];
      if (j + 1 < cells.size()) cell.resize(w[j], ' ');
      s += (j ? "  " : "") + cell;
    }
    os << s << "\n";
  };
  line(head);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  line(rule);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string str(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_null()) return "-";
  return j.dump();
}

std::string list(const Json& arr) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) out += (i ? ", " : "") + str(arr[i]);
  return out + ")";
}

std::string render_pages(const Json& r) {
  std::ostringstream os;
  const std::size_t S = r.at("window").at("S");
  for (const auto& page : r.at("pages")) {
    os << "E^" << page.at("r").get<std::size_t>() << "   dim (rank of d^r out)\n";
    std::map<std::size_t, std::map<std::size_t, std::string>> grid;
    for (const auto& e : page.at("entries")) {
      std::string cell = std::to_string(e.at("dim").get<std::size_t>());
      if (e.at("d_rank").get<std::size_t>()) cell += "(" + std::to_string(e.at("d_rank").get<std::size_t>()) + ")";
      grid[e.at("q")][e.at("s")] = cell;
    }
    std::vector<std::string> head{"q \\ s"};
    for (std::size_t s = 0; s <= S; ++s) head.push_back(std::to_string(s));
    std::vector<std::vector<std::string>> rows;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
      std::vector<std::string> row{std::to_string(it->first)};
      for (std::size_t s = 0; s <= S; ++s) row.push_back(it->second.count(s) ? it->second.at(s) : "");
      rows.push_back(row);
    }
    os << table(head, rows) << "\n";
  }
  os << "truncation M = " << str(r.at("window").at("truncation")) << "\n";
  os << "window collapse: "
     << (r.at("window_collapse").is_null() ? "not within R" : "page " + str(r.at("window_collapse"))) << "\n";
  return os.str();
}

std::string render_body(const Json& r) {
  const std::string v = r.at("verb");
  std::ostringstream os;
  if (v == "validate") {
    os << "valid: yes\nprovenance: " << str(r.at("provenance")) << "\ndims: " << list(r.at("dims"))
       << "\nintegral shadow: " << str(r.at("integral_shadow")) << "\nminimal: " << str(r.at("minimal")) << "\n";
    const Json& b = r.at("boundaries");
    for (std::size_t q = 0; q < b.size(); ++q) {
      os << "d_" << q + 1 << ":\n";
      for (const auto& row : b[q]) os << "  " << list(row) << "\n";
    }
  } else if (v == "betti") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t q = 0; q < r.at("b").size(); ++q) rows.push_back({std::to_string(q), str(r.at("b")[q])});
    os << table({"q", "b_q"}, rows);
  } else if (v == "pages") {
    os << render_pages(r);
  } else if (v == "decompose") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : r.at("modules")) {
      std::string other;
      for (const auto& op : m.at("other_primary"))
        other += (other.empty() ? "" : ", ") + ("(" + str(op.at("poly")) + ")^" + str(op.at("exp")) + " x" + str(op.at("mult")));
      rows.push_back({str(m.at("q")), str(m.at("free_rank")), list(m.at("t_minus_1_blocks")),
                      other.empty() ? "-" : other, str(m.at("separated")), list(m.at("gr_dims"))});
    }
    os << table({"q", "free", "(t-1) blocks", "other primary", "separated", "gr dims s=0.."}, rows);
  } else if (v == "monodromy") {
    std::vector<std::vector<std::string>> rows;
    const Json& t = r.at("trivial");
    for (std::size_t i = 0; i < r.at("degrees").size(); ++i) {
      const Json& d = r.at("degrees")[i];
      rows.push_back({str(d.at("q")), str(d.at("free_rank")), list(d.at("t_minus_1_blocks")), str(d.at("beta")),
                      str(d.at("snf_trivial")), str(d.at("pages_trivial")), str(d.at("aomoto_trivial")), str(t[i])});
    }
    os << table({"q", "free", "(t-1) blocks", "beta", "snf", "E^inf", "aomoto", "trivial up to q"}, rows);
  } else if (v == "aomoto") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t q = 0; q < r.at("beta").size(); ++q)
      rows.push_back({std::to_string(q), str(r.at("beta")[q]), str(r.at("ranks")[q])});
    os << table({"q", "beta_q", "rank in"}, rows) << "route: " << str(r.at("route")) << "\n";
  } else if (v == "universal-aomoto") {
    os << "variables: " << str(r.at("variables")) << "\ndims: " << list(r.at("dims")) << "\n";
    for (const auto& d : r.at("differentials")) {
      os << "D^" << str(d.at("from")) << ":\n";
      for (const auto& row : d.at("matrix")) os << "  " << list(row) << "\n";
    }
    os << "D o D = 0: " << str(r.at("squares_to_zero")) << "\n";
  } else if (v == "twisted") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t q = 0; q < r.at("b").size(); ++q) rows.push_back({std::to_string(q), str(r.at("b")[q])});
    os << "d = " << str(r.at("d")) << "\n" << table({"q", "b_q(X, nu/d)"}, rows);
  } else if (v == "alexander") {
    os << "Delta = " << str(r.at("polynomial")) << "\n";
    if (!r.at("notice").is_null()) os << "note: " << str(r.at("notice")) << "\n";
  } else if (v == "bounds") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t q = 0; q < r.at("twisted").size(); ++q)
      rows.push_back({std::to_string(q), str(r.at("twisted")[q]), str(r.at("beta")[q]), str(r.at("mod_p")[q]),
                      str(r.at("torsion_free")[q])});
    os << "p = " << str(r.at("p")) << ", r = " << str(r.at("r")) << "\n"
       << table({"q", "b_q(nu/p^r)", "beta_q(F_p)", "b_q(F_p)", "H_q(Z) torsion-free"}, rows)
       << "b_q(nu/p^r) <= b_q(F_p): " << str(r.at("bettibound")) << "\n"
       << "b_q(nu/p^r) <= beta_q(F_p): " << str(r.at("cohobound"))
       << " (raw comparison: " << str(r.at("cohobound_raw")) << ")\n";
  } else if (v == "selftest") {
    for (const auto& c : r.at("checks"))
      os << (c.at("ok").get<bool>() ? "ok    " : "FAIL  ") << str(c.at("space")) << "  " << str(c.at("command"))
         << "  " << str(c.at("pointer")) << " = " << c.at("actual").dump()
         << (c.at("ok").get<bool>() ? "" : " (expected " + c.at("expected").dump() + ")") << "\n";
    os << str(r.at("total")) << " checks, " << str(r.at("failed")) << " failed\n";
  }
  return os.str();
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"pages",     "decompose", "monodromy", "aomoto", "universal-aomoto", "twisted",
                                          "alexander", "bounds",    "betti",     "validate", "selftest"};
  return v;
}

CommandOptions parse_command_line(const std::vector<std::string>& args, std::string* help) {
  CLI::App app{"Equivariant spectral sequences of finite CW-complexes over group rings of Z^n, Z and Z_m."};
  app.require_subcommand(1);
  CommandOptions o;
  std::string input, builtin, field, quotient, nu, q_range;
  std::uint64_t d = 0, p = 0;
  for (const auto& verb : verbs()) {
    CLI::App* sub = app.add_subcommand(verb, describe(verb));
    if (verb == "selftest") continue;
    sub->add_option("input", input, "JSON space description");
    sub->add_option("--builtin", builtin, "built-in space, e.g. trefoil or lyndon:6 (see data/builtins)");
    sub->add_option("--field", field,
                    "coefficients Q, Z, Fp:<p>, cyclotomic:<d> (default: the document's field; Z is read as Q "
                    "where a field is needed)");
    sub->add_option("--group-quotient", quotient,
                    "push to Z, Z^<n> or Zmod:<m> (default: the document's group; Z^n -> Z uses the "
                    "document's character)");
    sub->add_option("--nu", nu, "generator images, e.g. a=2,b=1,c=1 or a=1:0,b=0:1 (presentations only)");
    sub->add_option("--q-range", q_range, "degrees q or lo:hi (default: all)");
    sub->add_flag("--json", o.json, "print the JSON report");
    sub->add_flag("--strict", o.strict, "exit 3 when a hypothesis of the requested comparison is not met");
    if (verb == "twisted") sub->add_option("--d", d, "order of the root of unity (required)")->check(CLI::PositiveNumber);
    if (verb == "bounds") {
      sub->add_option("--p", p, "prime (required)")->check(CLI::PositiveNumber);
      sub->add_option("--r", o.r, "exponent r, order p^r (default 1)")->check(CLI::PositiveNumber);
    }
    if (verb == "pages" || verb == "decompose") {
      sub->add_option("--R", o.pages, "last page computed (default 3)");
      sub->add_option("--S", o.window, "filtration window 0..S (default 4)");
    }
  }
  app.get_subcommand("selftest")->add_flag("--json", o.json, "print the JSON report");
  std::vector<std::string> argv_store{"ess"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return o;
  } catch (const CLI::ParseError& e) {
    if (help && e.get_exit_code() == 0) {
      *help = app.help();
      return o;
    }
    throw InputError(e.what());
  }
  for (const auto& verb : verbs()) {
    CLI::App* sub = app.get_subcommand(verb);
    if (!sub->parsed()) continue;
    if (help && (sub->count("--help") || sub->get_help_ptr()->count())) *help = sub->help();
    o.verb = verb;
    if (verb == "selftest") break;
    if (sub->count("input")) o.input = input;
    if (sub->count("--builtin")) o.builtin = builtin;
    if (sub->count("--field")) o.field = field;
    if (sub->count("--group-quotient")) o.group_quotient = quotient;
    if (sub->count("--nu")) o.nu = nu;
    if (sub->count("--q-range")) o.q_range = q_range;
    if (verb == "twisted" && sub->count("--d")) o.d = d;
    if (verb == "bounds" && sub->count("--p")) o.p = p;
  }
  return o;
}

CommandOutcome run_command(const CommandOptions& o) {
  CommandOutcome out;
  try {
    out.report = o.verb == "selftest" ? do_selftest() : dispatch(o);
    if (o.verb == "selftest" && out.report.at("failed") != 0)
      throw CrossCheckFailure("selftest: " + out.report.at("failed").dump() + " check(s) failed");
    if (o.strict && o.verb == "bounds" && out.report.at("cohobound") == "not-applicable")
      throw HypothesisNotMet("integral homology has torsion; the cohomological bound is not guaranteed");
  } catch (const HypothesisNotMet& e) {
    out.exit_code = kExitHypothesis;
    out.error = e.what();
  } catch (const CrossCheckFailure& e) {
    out.exit_code = kExitCrossCheck;
    out.error = std::string("internal cross-check failed: ") + e.what();
  } catch (const InputError& e) {
    out.exit_code = kExitInput;
    out.error = e.what();
  } catch (const DescriptorMismatch& e) {
    out.exit_code = kExitInput;
    out.error = e.what();
  } catch (const DivisionByZero& e) {
    out.exit_code = kExitInput;
    out.error = e.what();
  }
  if (!out.report.is_null()) out.text = render_text(out.report);
  return out;
}

std::string render_text(const Json& r) {
  std::ostringstream os;
  if (r.contains("space"))
    os << r.at("verb").get<std::string>() << ": " << str(r.at("space")) << " over " << str(r.at("field")) << "["
       << str(r.at("group")) << "]\n";
  os << render_body(r);
  return os.str();
}

}  // namespace ess
