#ifndef COFINEX_IO_HPP
#define COFINEX_IO_HPP

// JSON documents. Canonical form: keys sorted, id arrays sorted, compact,
// newline-terminated.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cofinex/completion.hpp"
#include "cofinex/groupoid.hpp"

namespace cofinex::io {

using json = nlohmann::json;

/// Compact dump plus trailing newline.
std::string canonical(const json& doc);

/// Throws ParseError.
json parse(std::string_view text);
json load_file(const std::filesystem::path& file);

json to_json(const FiniteStructure& s);
/// Throws ParseError (shape), DanglingReference, DuplicateId, KindMismatch.
FiniteStructure structure_from_json(const json& doc);

/// A structure reference: an inline object, "gen:<fixture>[:<param>...]",
/// or a file path (relative paths resolve against `base_dir`).
StructurePtr resolve_structure(const json& ref, const std::filesystem::path& base_dir);
StructurePtr load_structure(const std::filesystem::path& file);

/// {"classes": [[ids...], ...]}, singleton classes omitted.
json to_json(const Partition& p);
/// Throws ParseError, UnknownElement, BadParameter (overlapping classes).
Partition partition_from_json(const json& doc, const StructurePtr& carrier);

json to_json(const FilterBase& base);
FilterBase filterbase_from_json(const json& doc, const std::filesystem::path& base_dir);

/// {"generator": ..., "max_level": n}, {"filterbase": ...}, or explicit
/// {"levels": [...], "bondings": [{"from", "to", "table"}], "labels": [...]}.
/// Explicit systems carry no base.
InverseSystem system_from_json(const json& doc, const std::filesystem::path& base_dir);
/// Explicit form; the base is not serialized.
json to_json(const InverseSystem& sys);
/// Accepts a file path or a bare generator name ("zline-circles" with
/// max_level = depth when no file of that name exists).
InverseSystem load_system(const std::string& spec, int depth);

json to_json(const CoherentFamily& family);
CoherentFamily family_from_json(const json& doc, const std::filesystem::path& base_dir);

/// Sorted, deduplicated element ids from a JSON array. Throws UnknownElement.
std::vector<Elem> ids_from_json(const json& doc, const FiniteStructure& s);

// Reports.
json to_json(const ValidationReport& report);
json to_json(const CheckReport& report);
json to_json(const ClosureResult& result);
json to_json(const EndReport& report, const InverseSystem& sys);
json to_json(const FiberCensus& census, const InverseSystem& sys);
json to_json(const DiscreteQuotientReport& report);

}  // namespace cofinex::io

#endif  // COFINEX_IO_HPP
