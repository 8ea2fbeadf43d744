// cofinex: command-line front end.
//
// Exit codes: 0 success / property true, 1 property false or suite failure,
// 2 invalid input.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cofinex/error.hpp"
#include "cofinex/fixtures.hpp"
#include "cofinex/io.hpp"
#include "cofinex/verify.hpp"

namespace fs = std::filesystem;
using namespace cofinex;
using io::json;

namespace {

enum class Format { table, json };

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kInvalid = 2;

int exit_code(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::dangling_reference:
    case Errc::duplicate_id:
    case Errc::kind_mismatch:
    case Errc::unknown_element:
    case Errc::unknown_vertex:
    case Errc::law_kind_mismatch:
    case Errc::carrier_mismatch:
    case Errc::bad_parameter:
      return kInvalid;
    default:
      return kFalse;
  }
}

fs::path dir_of(const std::string& file) { return fs::path(file).parent_path(); }

/// Rows of cells, left-aligned to the widest cell of each column.
std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string tuple_text(const std::vector<T>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(std::to_string(v));
  return "(" + join(parts, ",") + ")";
}

std::string partition_table(const Partition& p) {
  std::vector<std::vector<std::string>> rows{{"class", "members"}};
  const json doc = io::to_json(p);
  std::size_t i = 0;
  for (const auto& c : doc["classes"]) rows.push_back({std::to_string(i++), join(c.get<std::vector<std::string>>(), " ")});
  rows.push_back({"index", std::to_string(p.index())});
  return aligned(rows);
}

std::string structure_table(const FiniteStructure& s) {
  std::vector<std::vector<std::string>> rows{{"element", "type", "src", "tgt"}};
  if (s.has_inv()) rows.front().push_back("inv");
  std::vector<Elem> order(s.size());
  for (Elem x = 0; x < s.size(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return s.name(a) < s.name(b); });
  for (Elem x : order) {
    std::vector<std::string> row{s.name(x), s.is_vertex(x) ? "vertex" : "edge",
                                 s.name(s.src(x)), s.name(s.tgt(x))};
    if (s.has_inv()) row.push_back(s.inv(x) == kNoElem ? "-" : s.name(s.inv(x)));
    rows.push_back(std::move(row));
  }
  return "kind " + std::string(to_string(s.kind())) + "\n" + aligned(rows);
}

void emit(Format format, const json& doc, const std::string& table) {
  if (format == Format::json) std::cout << io::canonical(doc);
  else std::cout << table;
}

std::vector<ElemPair> load_pairs(const std::string& file, const FiniteStructure& s) {
  json doc = io::load_file(file);
  if (doc.is_object() && doc.contains("pairs")) doc = doc["pairs"];
  if (!doc.is_array()) throw Error(Errc::parse_error, "pairs file must hold an array of [x, y]");
  std::vector<ElemPair> out;
  for (const auto& p : doc) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw Error(Errc::parse_error, "each pair must be [x, y]");
    out.emplace_back(s.id(p[0].get<std::string>()), s.id(p[1].get<std::string>()));
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, Format format) {
  const auto s = io::load_structure(file);
  const auto report = validate(*s);
  std::string table = report.ok() ? "valid\n" : "";
  for (const auto& v : report.violations) table += "violation  " + v.describe() + "\n";
  emit(format, io::to_json(report), table);
  return report.ok() ? kTrue : kFalse;
}

int cmd_close(const std::string& law_text, const std::string& pairs_file,
              const std::string& structure_file, Format format) {
  const auto law = parse_law(law_text);
  const auto s = io::load_structure(structure_file);
  const auto pairs = load_pairs(pairs_file, *s);
  const auto result = close(law, s, pairs);
  std::string table = partition_table(result.partition);
  if (!result.valid) table += "valid  false  (" + join(result.witness, ", ") + ")\n";
  emit(format, io::to_json(result), table);
  return result.valid ? kTrue : kFalse;
}

int cmd_quotient(const std::string& structure_file, const std::string& relation_file,
                 const std::string& law_text, Format format) {
  const auto s = io::load_structure(structure_file);
  const auto r = io::partition_from_json(io::load_file(relation_file), s);
  const auto law = law_text.empty() ? (s->kind() == Kind::groupoid ? LawTag::congruence
                                       : s->kind() == Kind::graph   ? LawTag::graph_equivalence
                                                                    : LawTag::compatible)
                                    : parse_law(law_text);
  const auto q = quotient(r, law);
  json nu = json::object();
  std::vector<std::vector<std::string>> rows{{"element", "class"}};
  for (Elem x = 0; x < s->size(); ++x) {
    nu[s->name(x)] = q.structure->name(q.nu(x));
    rows.push_back({s->name(x), q.structure->name(q.nu(x))});
  }
  std::sort(rows.begin() + 1, rows.end());
  emit(format, json{{"quotient", io::to_json(*q.structure)}, {"nu", nu}},
       structure_table(*q.structure) + "\n" + aligned(rows));
  return kTrue;
}

int cmd_hausdorff(const std::string& file, Format format) {
  const auto base = io::filterbase_from_json(io::load_file(file), dir_of(file));
  const auto fb = is_filter_base(base);
  const bool h = fb.pass && is_hausdorff(base);
  const auto cert = discreteness_certificate(meet_closure(base));
  json certificate = json::object();
  std::vector<std::vector<std::string>> rows{{"element", "separated"}};
  for (Elem x = 0; x < base.carrier->size(); ++x) {
    certificate[base.carrier->name(x)] = static_cast<bool>(cert[x]);
    rows.push_back({base.carrier->name(x), cert[x] ? "yes" : "no"});
  }
  std::sort(rows.begin() + 1, rows.end());
  std::string table = "filter_base  " + std::string(fb.pass ? "true" : "false");
  if (!fb.pass) table += "  (members " + join(fb.witness, ", ") + ")";
  table += "\nhausdorff    " + std::string(h ? "true" : "false") + "\n" + aligned(rows);
  emit(format,
       json{{"filter_base", io::to_json(fb)}, {"hausdorff", h}, {"certificate", certificate}},
       table);
  return h ? kTrue : kFalse;
}

int cmd_separate(const std::string& structure_file, const std::string& at, Format format) {
  const auto s = io::load_structure(structure_file);
  const auto p = separating_congruence(s, s->id(at));
  json doc = io::to_json(p);
  doc["index"] = p.index();
  emit(format, doc, partition_table(p));
  return kTrue;
}

int cmd_complete(const std::string& spec, int depth, const std::string& report,
                 std::optional<int> window, std::optional<int> level, Format format) {
  if (depth < 0) throw Error(Errc::bad_parameter, "depth must be non-negative");
  const auto sys = io::load_system(spec, depth);
  const int w = window.value_or(default_window(depth));

  if (report == "ends") {
    const auto r = count_new_points(sys, depth, w);
    std::vector<std::vector<std::string>> rows{
        {"status", r.status_text()},
        {"per-level", tuple_text(r.per_level)},
        {"labels", tuple_text(r.labels)},
        {"stabilization", r.stabilization ? std::to_string(*r.stabilization) : "none"},
        {"source", std::string(to_string(r.source))}};
    const json doc = io::to_json(r, sys);
    for (const auto& t : doc["threads"])
      rows.push_back({"thread", join(t.get<std::vector<std::string>>(), " <- ")});
    emit(format, doc, aligned(rows));
    return r.status == EndStatus::exact ? kTrue : kFalse;
  }

  std::vector<int> labels;
  if (level) labels.push_back(*level);
  else
    for (int l : sys.labels)
      if (l >= 1 && l <= depth) labels.push_back(l);

  if (report == "census") {
    json doc = json::array();
    std::vector<std::vector<std::string>> rows{{"label", "class", "fiber", "growing", "unbounded"}};
    for (int l : labels) {
      const auto c = fiber_census(sys, l, w);
      doc.push_back(io::to_json(c, sys));
      const auto& lv = *sys.levels[sys.level_index(l)];
      for (const auto& f : c.classes)
        rows.push_back({std::to_string(l), lv.name(f.cls), std::to_string(f.fiber),
                        f.growing ? "yes" : "no", f.unbounded ? "yes" : "no"});
    }
    emit(format, json{{"census", doc}}, aligned(rows));
    return kTrue;
  }

  if (report == "quotient-check") {
    json doc = json::array();
    bool all = true;
    std::vector<std::vector<std::string>> rows{{"label", "isomorphic", "classes", "level size"}};
    for (int l : labels) {
      const auto r = discrete_quotient_check(sys, l, depth, w);
      all = all && r.isomorphic;
      json entry = io::to_json(r);
      entry["label"] = l;
      doc.push_back(entry);
      rows.push_back({std::to_string(l), r.isomorphic ? "yes" : "no",
                      std::to_string(r.extended_classes), std::to_string(r.level_size)});
    }
    emit(format, json{{"levels", doc}, {"isomorphic", all}}, aligned(rows));
    return all ? kTrue : kFalse;
  }
  throw Error(Errc::bad_parameter, "unknown report (ends, census, quotient-check)", {report});
}

int cmd_rigid(const std::string& groupoid_file, const std::string& normal_file,
              const std::string& at, const std::string& family_file, Format format) {
  std::optional<RigidCongruence> rho;
  if (!family_file.empty()) {
    rho = rigid_from_coherent(io::family_from_json(io::load_file(family_file), dir_of(family_file)));
  } else {
    if (groupoid_file.empty() || normal_file.empty() || at.empty())
      throw Error(Errc::bad_parameter, "rigid needs --normal, --at and a groupoid (or --family)");
    const auto g = io::load_structure(groupoid_file);
    json normal = io::load_file(normal_file);
    if (normal.is_object() && normal.contains("normal")) normal = normal["normal"];
    const Elem x = g->id(at);
    if (!g->is_vertex(x)) throw Error(Errc::unknown_vertex, "not a vertex", {at});
    rho = rho_from_subgroup(g, x, io::ids_from_json(normal, *g));
  }
  json doc = io::to_json(rho->partition());
  doc["index"] = rho->index();
  doc["subgroups"] = io::to_json(coherent_from_rigid(*rho))["subgroups"];
  std::string table = partition_table(rho->partition());
  std::vector<std::vector<std::string>> rows{{"vertex", "subgroup"}};
  for (const auto& [v, ids] : doc["subgroups"].items())
    rows.push_back({v, join(ids.get<std::vector<std::string>>(), " ")});
  emit(format, doc, table + aligned(rows));
  return kTrue;
}

int cmd_gen(const std::string& name, const std::vector<std::string>& params) {
  auto generated = fixtures::generate(name, params);
  if (auto* s = std::get_if<FiniteStructure>(&generated)) {
    std::cout << io::canonical(io::to_json(*s));
  } else {
    std::cout << io::canonical(json{{"generator", name}, {"max_level", std::stoi(params.at(0))}});
  }
  return kTrue;
}

int cmd_verify(const std::string& suite, std::size_t max_size, std::uint64_t seed,
               const std::string& fault, Format format) {
  verify::Fault f = verify::Fault::none;
  if (fault == "skip-product-closure") f = verify::Fault::skip_product_closure;
  else if (!fault.empty()) throw Error(Errc::bad_parameter, "unknown fault", {fault});
  const auto report = verify::run_verify(suite, max_size, seed, f);

  json props = json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : report.properties) {
    props.push_back({{"suite", p.suite}, {"name", p.name}, {"pass", p.pass},
                     {"cases", p.cases}, {"witness", p.witness}});
    rows.push_back({p.pass ? "PASS" : "FAIL", p.suite, p.name, std::to_string(p.cases)});
    if (!p.pass) rows.push_back({"", "", "witness: " + join(p.witness, "; "), ""});
  }
  rows.push_back({report.pass() ? "PASS" : "FAIL", report.suite,
                  "seed " + std::to_string(seed) + ", max-size " + std::to_string(max_size), ""});
  emit(format,
       json{{"suite", report.suite}, {"seed", seed}, {"max_size", max_size},
            {"pass", report.pass()}, {"properties", props}},
       aligned(rows));
  return report.pass() ? kTrue : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cofinite directed graphs, graphs and groupoids: closures, quotients, "
               "filter bases, completions and rigid congruences."};
  app.require_subcommand(1);

  Format format = Format::table;
  const std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}};
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: table or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::string file, structure, relation, law, pairs, at, system, report = "ends", normal,
                                                             family, suite = "all", fault;
  int depth = 0;
  std::optional<int> window, level;
  std::size_t max_size = 8;
  std::uint64_t seed = 42;
  std::string fixture;
  std::vector<std::string> params;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a structure file");
  validate_cmd->add_option("file", file)->required();
  add_format(validate_cmd);

  auto* close_cmd = app.add_subcommand("close", "Closure of a pair set under a law");
  close_cmd->add_option("--law", law, "compatible, graph_equivalence or congruence")->required();
  close_cmd->add_option("--pairs", pairs, "JSON file with [[x, y], ...]")->required();
  close_cmd->add_option("structure", structure)->required();
  add_format(close_cmd);

  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient by a relation");
  quotient_cmd->add_option("structure", structure)->required();
  quotient_cmd->add_option("relation", relation)->required();
  quotient_cmd->add_option("--law", law, "defaults to the natural law of the kind");
  add_format(quotient_cmd);

  auto* hausdorff_cmd = app.add_subcommand("hausdorff", "Hausdorff test for a filter base");
  hausdorff_cmd->add_option("filterbase", file)->required();
  add_format(hausdorff_cmd);

  auto* separate_cmd = app.add_subcommand("separate", "Separating congruence at an element");
  separate_cmd->add_option("structure", structure)->required();
  separate_cmd->add_option("--at", at)->required();
  add_format(separate_cmd);

  auto* complete_cmd = app.add_subcommand("complete", "Inverse-system completion reports");
  complete_cmd->add_option("--system", system, "system file or zline-circles / zline-arcs")
      ->required();
  complete_cmd->add_option("--depth", depth)->required();
  complete_cmd->add_option("--report", report, "ends, census or quotient-check")
      ->check(CLI::IsMember({"ends", "census", "quotient-check"}));
  complete_cmd->add_option("--window", window, "window size (default 2*depth+2)");
  complete_cmd->add_option("--level", level, "restrict census/quotient-check to one label");
  add_format(complete_cmd);

  auto* rigid_cmd = app.add_subcommand("rigid", "Rigid congruence from a normal subgroup");
  rigid_cmd->add_option("groupoid", structure);
  rigid_cmd->add_option("--normal", normal, "JSON file with the subgroup ids");
  rigid_cmd->add_option("--at", at, "base vertex");
  rigid_cmd->add_option("--family", family, "coherent family file instead");
  add_format(rigid_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Print a fixture");
  gen_cmd->add_option("fixture", fixture)->required();
  gen_cmd->add_option("params", params);

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suites");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(verify::suite_names()));
  verify_cmd->add_option("--max-size", max_size);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--fault", fault)->group("");
  add_format(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, format);
    if (*close_cmd) return cmd_close(law, pairs, structure, format);
    if (*quotient_cmd) return cmd_quotient(structure, relation, law, format);
    if (*hausdorff_cmd) return cmd_hausdorff(file, format);
    if (*separate_cmd) return cmd_separate(structure, at, format);
    if (*complete_cmd) return cmd_complete(system, depth, report, window, level, format);
    if (*rigid_cmd) return cmd_rigid(structure, normal, at, family, format);
    if (*gen_cmd) return cmd_gen(fixture, params);
    if (*verify_cmd) return cmd_verify(suite, max_size, seed, fault, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
