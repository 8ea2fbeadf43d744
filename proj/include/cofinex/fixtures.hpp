#ifndef COFINEX_FIXTURES_HPP
#define COFINEX_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cofinex/completion.hpp"

namespace cofinex::fixtures {

/// Path digraph: vertices "0".."n", edges "e{i}{i+1}".
FiniteStructure path(int n);
/// Path as a Serre graph: each edge "e{i}{i+1}" has reverse "e{i+1}{i}".
FiniteStructure path_graph(int n);
/// The six-element graph with vertices a, b and edges e: a->a, f: b->b,
/// g: a->b, gbar: b->a.
FiniteStructure delta_graph();
/// n vertices "p0".., no edges.
FiniteStructure discrete_space(int n);

/// Finite group as a multiplication table over 0..order-1, 0 the identity.
struct GroupTable {
  std::string name;
  std::vector<std::vector<int>> mul;

  int order() const { return static_cast<int>(mul.size()); }
};

/// "z{n}" (cyclic), "klein" and "s3" (permutations of three points in
/// lexicographic order).
GroupTable group_table(std::string_view name);

/// One-vertex groupoid Z/n: elements "0".."n-1", vertex "0".
FiniteStructure cyclic(int n);
/// A group as a one-vertex groupoid, elements named by table index.
FiniteStructure group_groupoid(const GroupTable& h);
/// Vertices "a", "b", ..; one arrow "xy" for each ordered pair x != y.
FiniteStructure pair_groupoid(int n);
/// Arrows (i, h, j) named "{i}.{h}.{j}"; vertex i is "{i}.0.{i}".
FiniteStructure connected_groupoid(int n, const GroupTable& h);

/// Copy of `s` with every id prefixed.
FiniteStructure prefixed(const FiniteStructure& s, std::string_view prefix);

/// Seeded digraph with at most `max_size` elements and at least one vertex.
FiniteStructure random_digraph(std::mt19937_64& rng, std::size_t max_size);

struct Named {
  std::string name;
  StructurePtr structure;
};

/// Fixture digraphs, graphs and groupoids with at most `max_size` elements.
std::vector<Named> small_carriers(std::size_t max_size);
/// Fixture groupoids with at most `max_size` elements.
std::vector<Named> small_groupoids(std::size_t max_size);

using Generated = std::variant<FiniteStructure, InverseSystem>;

/// Fixture by CLI name and parameters. Throws BadParameter.
Generated generate(std::string_view name, const std::vector<std::string>& params);

/// The fixture names generate() accepts.
const std::vector<std::string>& fixture_names();

}  // namespace cofinex::fixtures

#endif  // COFINEX_FIXTURES_HPP
