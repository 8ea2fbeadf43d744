#include "cofinex/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cofinex/error.hpp"
#include "cofinex/fixtures.hpp"

namespace cofinex::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void shape_error(const std::string& what) {
  throw Error(Errc::parse_error, what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    shape_error(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) shape_error(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) shape_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

json sorted_ids(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

json map_table(const StructureMap& f) {
  json table = json::object();
  for (Elem x = 0; x < f.domain->size(); ++x)
    table[f.domain->name(x)] = f.codomain->name(f(x));
  return table;
}

}  // namespace

std::string canonical(const json& doc) { return doc.dump() + "\n"; }

json parse(std::string_view source) {
  try {
    return json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

json load_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::parse_error, "cannot read file", {file.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

// ---------------------------------------------------------------------------
// Structures

json to_json(const FiniteStructure& s) {
  json doc;
  doc["kind"] = std::string(to_string(s.kind()));
  doc["elements"] = sorted_ids(s.names());
  std::vector<std::string> vertices;
  json src = json::object(), tgt = json::object();
  for (Elem x = 0; x < s.size(); ++x) {
    if (s.is_vertex(x)) vertices.push_back(s.name(x));
    src[s.name(x)] = s.name(s.src(x));
    tgt[s.name(x)] = s.name(s.tgt(x));
  }
  doc["vertices"] = sorted_ids(std::move(vertices));
  doc["src"] = std::move(src);
  doc["tgt"] = std::move(tgt);
  if (s.has_inv()) {
    json inv = json::object();
    for (Elem x = 0; x < s.size(); ++x)
      if (s.inv(x) != kNoElem) inv[s.name(x)] = s.name(s.inv(x));
    doc["inv"] = std::move(inv);
  }
  if (s.has_mul()) {
    std::vector<std::array<std::string, 3>> rows;
    for (Elem g = 0; g < s.size(); ++g)
      for (Elem h = 0; h < s.size(); ++h)
        if (Elem gh = s.mul(g, h); gh != kNoElem)
          rows.push_back({s.name(g), s.name(h), s.name(gh)});
    std::sort(rows.begin(), rows.end());
    doc["mul"] = rows;
  }
  return doc;
}

FiniteStructure structure_from_json(const json& doc) {
  if (!doc.is_object()) shape_error("structure must be an object");
  const Kind kind = parse_kind(text(field(doc, "kind"), "kind"));
  const json& elements = field(doc, "elements");
  if (!elements.is_array()) shape_error("\"elements\" must be an array");

  std::vector<std::string> ids;
  for (const auto& e : elements) ids.push_back(text(e, "element id"));
  std::sort(ids.begin(), ids.end());

  std::vector<std::string> vertex_ids;
  if (doc.contains("vertices")) {
    if (!doc["vertices"].is_array()) shape_error("\"vertices\" must be an array");
    for (const auto& v : doc["vertices"]) {
      auto id = text(v, "vertex id");
      if (!std::binary_search(ids.begin(), ids.end(), id))
        throw Error(Errc::dangling_reference, "vertex is not an element", {id});
      vertex_ids.push_back(std::move(id));
    }
  }
  std::sort(vertex_ids.begin(), vertex_ids.end());

  auto lookup = [&](const char* table, const std::string& id) -> std::optional<std::string> {
    if (!doc.contains(table)) return std::nullopt;
    const json& t = doc[table];
    if (!t.is_object()) shape_error(std::string("\"") + table + "\" must be an object");
    if (!t.contains(id)) return std::nullopt;
    return text(t[id], table);
  };
  for (const char* table : {"src", "tgt", "inv"})
    if (doc.contains(table) && doc[table].is_object())
      for (const auto& [key, value] : doc[table].items())
        if (!std::binary_search(ids.begin(), ids.end(), key))
          throw Error(Errc::dangling_reference, std::string(table) + " mentions unknown id",
                      {key});

  StructureBuilder b(kind);
  for (const auto& id : ids) {
    const bool is_vertex = std::binary_search(vertex_ids.begin(), vertex_ids.end(), id);
    auto s = lookup("src", id), t = lookup("tgt", id);
    if (!is_vertex && (!s || !t)) shape_error("edge \"" + id + "\" needs src and tgt");
    b.element(id, is_vertex, s.value_or(id), t.value_or(id));
  }
  if (doc.contains("inv")) {
    if (kind == Kind::digraph)
      throw Error(Errc::kind_mismatch, "digraph carries an involution table");
    for (const auto& id : ids)
      if (auto y = lookup("inv", id)) b.inverse(id, *y);
  }
  if (doc.contains("mul")) {
    if (kind != Kind::groupoid)
      throw Error(Errc::kind_mismatch, "only groupoids carry a product table");
    const json& mul = doc["mul"];
    if (!mul.is_array()) shape_error("\"mul\" must be an array");
    for (const auto& row : mul) {
      if (!row.is_array() || row.size() != 3) shape_error("\"mul\" rows are [g, h, gh]");
      b.product(text(row[0], "g"), text(row[1], "h"), text(row[2], "gh"));
    }
  }
  return b.build();
}

StructurePtr resolve_structure(const json& ref, const fs::path& base_dir) {
  if (ref.is_object()) return share(structure_from_json(ref));
  const std::string s = text(ref, "structure reference");
  if (s.rfind("gen:", 0) == 0) {
    auto parts = split(s.substr(4), ':');
    if (parts.empty()) throw Error(Errc::bad_parameter, "empty generator reference");
    const std::string name = parts.front();
    parts.erase(parts.begin());
    auto generated = fixtures::generate(name, parts);
    if (auto* fs = std::get_if<FiniteStructure>(&generated)) return share(std::move(*fs));
    throw Error(Errc::kind_mismatch, "generator does not produce a finite structure", {name});
  }
  fs::path p(s);
  if (p.is_relative()) p = base_dir / p;
  return load_structure(p);
}

StructurePtr load_structure(const fs::path& file) {
  return share(structure_from_json(load_file(file)));
}

// ---------------------------------------------------------------------------
// Partitions and families

json to_json(const Partition& p) {
  const FiniteStructure& s = *p.carrier();
  std::vector<std::vector<std::string>> classes;
  for (const auto& members : p.classes()) {
    if (members.size() < 2) continue;
    std::vector<std::string> ids;
    for (Elem x : members) ids.push_back(s.name(x));
    std::sort(ids.begin(), ids.end());
    classes.push_back(std::move(ids));
  }
  std::sort(classes.begin(), classes.end());
  return json{{"classes", classes}};
}

Partition partition_from_json(const json& doc, const StructurePtr& carrier) {
  const json& classes = field(doc, "classes");
  if (!classes.is_array()) shape_error("\"classes\" must be an array");
  std::vector<std::vector<Elem>> out;
  for (const auto& c : classes) {
    if (!c.is_array()) shape_error("each class must be an array");
    std::vector<Elem> members;
    for (const auto& id : c) members.push_back(carrier->id(text(id, "element id")));
    out.push_back(std::move(members));
  }
  return Partition::from_classes(carrier, out);
}

std::vector<Elem> ids_from_json(const json& doc, const FiniteStructure& s) {
  if (!doc.is_array()) shape_error("expected an array of ids");
  std::vector<Elem> out;
  for (const auto& id : doc) out.push_back(s.id(text(id, "element id")));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json to_json(const FilterBase& base) {
  json members = json::array();
  for (const auto& m : base.members) members.push_back(to_json(m));
  return json{{"carrier", to_json(*base.carrier)},
              {"law", std::string(to_string(base.law))},
              {"members", members}};
}

FilterBase filterbase_from_json(const json& doc, const fs::path& base_dir) {
  FilterBase out;
  out.carrier = resolve_structure(field(doc, "carrier"), base_dir);
  out.law = doc.contains("law") ? parse_law(text(doc["law"], "law")) : LawTag::compatible;
  const json& members = field(doc, "members");
  if (!members.is_array()) shape_error("\"members\" must be an array");
  for (const auto& m : members) out.members.push_back(partition_from_json(m, out.carrier));
  return out;
}

json to_json(const CoherentFamily& family) {
  const FiniteStructure& g = *family.groupoid;
  json subgroups = json::object();
  for (const auto& [x, members] : family.subgroups) {
    std::vector<std::string> ids;
    for (Elem a : members) ids.push_back(g.name(a));
    subgroups[g.name(x)] = sorted_ids(std::move(ids));
  }
  return json{{"groupoid", to_json(g)}, {"subgroups", subgroups}};
}

CoherentFamily family_from_json(const json& doc, const fs::path& base_dir) {
  CoherentFamily out{resolve_structure(field(doc, "groupoid"), base_dir), {}};
  const json& subgroups = field(doc, "subgroups");
  if (!subgroups.is_object()) shape_error("\"subgroups\" must be an object");
  for (const auto& [vertex, members] : subgroups.items()) {
    const Elem x = out.groupoid->id(vertex);
    out.subgroups[x] = ids_from_json(members, *out.groupoid);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Systems

InverseSystem system_from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) shape_error("system must be an object");
  if (doc.contains("generator")) {
    const std::string name = text(doc["generator"], "generator");
    const int max_level = integer(field(doc, "max_level"), "max_level");
    if (name == "zline-circles") return zline_system(ZLineMode::circles, max_level);
    if (name == "zline-arcs") return zline_system(ZLineMode::arcs, max_level);
    throw Error(Errc::bad_parameter, "unknown system generator", {name});
  }
  if (doc.contains("filterbase"))
    return system_from_filterbase(filterbase_from_json(doc["filterbase"], base_dir));

  InverseSystem sys;
  const json& levels = field(doc, "levels");
  if (!levels.is_array() || levels.empty()) shape_error("\"levels\" must be a nonempty array");
  for (const auto& ref : levels) sys.levels.push_back(resolve_structure(ref, base_dir));
  const std::size_t k = sys.levels.size();
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != k)
      shape_error("\"labels\" must list one label per level");
    for (const auto& l : doc["labels"]) sys.labels.push_back(integer(l, "label"));
    for (std::size_t i = 1; i < k; ++i)
      if (sys.labels[i] <= sys.labels[i - 1])
        throw Error(Errc::bad_parameter, "labels must increase");
  } else {
    for (std::size_t i = 0; i < k; ++i) sys.labels.push_back(static_cast<int>(i) + 1);
  }

  std::vector<std::optional<StructureMap>> consecutive(k > 0 ? k - 1 : 0);
  const json& bondings = doc.contains("bondings") ? doc["bondings"] : json::array();
  if (!bondings.is_array()) shape_error("\"bondings\" must be an array");
  for (const auto& b : bondings) {
    const int from = integer(field(b, "from"), "from");
    const int to = integer(field(b, "to"), "to");
    if (to < 0 || from <= to || static_cast<std::size_t>(from) >= k)
      throw Error(Errc::bad_parameter, "bonding must map a finer level to a coarser one",
                  {std::to_string(from), std::to_string(to)});
    const auto& dom = sys.levels[from];
    const auto& cod = sys.levels[to];
    const json& table = field(b, "table");
    if (!table.is_object()) shape_error("bonding table must be an object");
    StructureMap f{dom, cod, std::vector<Elem>(dom->size(), kNoElem),
                   MapLaws::for_kind(cod->kind())};
    for (const auto& [x, y] : table.items()) f.table[dom->id(x)] = cod->id(text(y, "image"));
    for (Elem x = 0; x < dom->size(); ++x)
      if (f.table[x] == kNoElem)
        throw Error(Errc::dangling_reference, "bonding table misses an element",
                    {dom->name(x)});
    if (from == to + 1) consecutive[to] = std::move(f);
    else sys.direct[{static_cast<std::size_t>(to), static_cast<std::size_t>(from)}] = std::move(f);
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!consecutive[i])
      throw Error(Errc::bad_parameter, "missing consecutive bonding",
                  {std::to_string(i + 1), std::to_string(i)});
    sys.bondings.push_back(std::move(*consecutive[i]));
  }
  return sys;
}

json to_json(const InverseSystem& sys) {
  json levels = json::array(), bondings = json::array();
  for (const auto& level : sys.levels) levels.push_back(to_json(*level));
  for (std::size_t i = 0; i < sys.bondings.size(); ++i)
    bondings.push_back({{"from", i + 1}, {"to", i}, {"table", map_table(sys.bondings[i])}});
  for (const auto& [key, f] : sys.direct)
    bondings.push_back({{"from", key.second}, {"to", key.first}, {"table", map_table(f)}});
  return json{{"levels", levels}, {"bondings", bondings}, {"labels", sys.labels}};
}

InverseSystem load_system(const std::string& spec, int depth) {
  if (fs::exists(spec)) {
    const fs::path p(spec);
    return system_from_json(load_file(p), p.parent_path());
  }
  if (spec == "zline-circles") return zline_system(ZLineMode::circles, depth);
  if (spec == "zline-arcs") return zline_system(ZLineMode::arcs, depth);
  throw Error(Errc::parse_error, "no such system file or generator", {spec});
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"witness", v.witness}});
  return json{{"valid", report.ok()}, {"violations", violations}};
}

json to_json(const CheckReport& report) {
  return json{{"pass", report.pass}, {"rule", report.rule}, {"witness", report.witness}};
}

json to_json(const ClosureResult& result) {
  json doc = to_json(result.partition);
  doc["valid"] = result.valid;
  doc["witness"] = result.witness;
  return doc;
}

json to_json(const EndReport& report, const InverseSystem& sys) {
  json threads = json::array();
  for (const auto& t : report.threads) {
    json names = json::array();
    for (std::size_t i = 0; i < t.size(); ++i)
      names.push_back(sys.levels[sys.level_index(report.labels[i])]->name(t[i]));
    threads.push_back(std::move(names));
  }
  json doc{{"status", report.status_text()},
           {"labels", report.labels},
           {"per_level", report.per_level},
           {"source", std::string(to_string(report.source))},
           {"threads", threads}};
  doc["ends"] = report.status == EndStatus::exact ? json(report.ends) : json(nullptr);
  doc["stabilization"] = report.stabilization ? json(*report.stabilization) : json(nullptr);
  return doc;
}

json to_json(const FiberCensus& census, const InverseSystem& sys) {
  const auto& level = *sys.levels[sys.level_index(census.label)];
  json classes = json::array();
  for (const auto& c : census.classes)
    classes.push_back({{"class", level.name(c.cls)},
                       {"fiber", c.fiber},
                       {"growing", c.growing},
                       {"unbounded", c.unbounded}});
  return json{{"label", census.label},
              {"source", std::string(to_string(census.source))},
              {"unbounded", census.unbounded_count()},
              {"classes", classes}};
}

json to_json(const DiscreteQuotientReport& report) {
  return json{{"isomorphic", report.isomorphic},
              {"extended_classes", report.extended_classes},
              {"level_size", report.level_size},
              {"end_classes", report.end_classes}};
}

}  // namespace cofinex::io
