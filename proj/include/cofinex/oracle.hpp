#ifndef COFINEX_ORACLE_HPP
#define COFINEX_ORACLE_HPP

// Exhaustive reference implementations for small carriers. Nothing here
// calls the closure, check or census code of the library; results are
// compared against it by the tests and the verification suite.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cofinex/carrier.hpp"

namespace cofinex::oracle {

/// Restricted growth string: labels[0] = 0 and each label is at most one
/// more than the largest before it. This is the same canonical numbering
/// Partition::labels() uses.
using Labels = std::vector<std::uint32_t>;

/// Visits every set partition of {0..n-1}; stop early by returning false.
void for_each_partition(std::size_t n, const std::function<bool(const Labels&)>& visit);

/// Canonical form of arbitrary labels.
Labels canonical(const std::vector<std::uint64_t>& labels);

std::size_t bell_number(std::size_t n);

bool compatible(const FiniteStructure& s, const Labels& r);
/// Compatible, inverse-closed, and x ~ x^-1 only when x shares a class with
/// a vertex.
bool graph_equivalence(const FiniteStructure& s, const Labels& r);
/// Related elements have related inverses.
bool inverse_closed(const FiniteStructure& s, const Labels& r);
/// An equivalence that is a subgroupoid of G x G, tested pair by pair.
bool congruence(const FiniteStructure& s, const Labels& r);

enum class Law { compatible, graph_equivalence, congruence };
bool satisfies(Law law, const FiniteStructure& s, const Labels& r);

/// Meet of every partition that contains `seed` and satisfies `law`, if that
/// meet satisfies `law` itself (then it is the minimum).
std::optional<Labels> minimal_closure(Law law, const FiniteStructure& s,
                                      const std::vector<std::pair<Elem, Elem>>& seed);

/// Every partition satisfying `law`.
std::vector<Labels> all_partitions(Law law, const FiniteStructure& s);

/// Meet of the listed partitions that contain `seed`; nullopt when none
/// does. The meet is the minimum iff it is itself listed.
std::optional<Labels> meet_containing(const std::vector<Labels>& family,
                                      const std::vector<std::pair<Elem, Elem>>& seed);

/// Every composable triple of classes lifts to a composable triple.
bool triples_lift(const FiniteStructure& g, const Labels& r);

/// Quotient groupoid built from scratch and checked axiom by axiom.
bool quotient_is_groupoid(const FiniteStructure& g, const Labels& r);

/// Subsets of G(x, x) that are subgroups, each sorted.
std::vector<std::vector<Elem>> subgroups(const FiniteStructure& g, Elem x);
bool normal(const FiniteStructure& g, Elem x, const std::vector<Elem>& n);

/// Classes of {(g, h) : s, t equal and g h^-1 in N_s(g)}, counted directly.
std::size_t rigid_index(const FiniteStructure& g, const std::map<Elem, std::vector<Elem>>& n);

/// Every two distinct elements are told apart by some member.
bool pairwise_separated(const std::vector<Labels>& members, std::size_t n);

struct ZLineCensus {
  std::vector<std::size_t> per_level;  ///< unbounded classes at levels 1..depth
  std::size_t ends = 0;
  std::vector<std::size_t> level_sizes;  ///< |level n| for n = 1..depth
};

/// Integer model of the subdivided line and its circle/arc quotients.
/// Unboundedness is read off fibre growth between windows w and 2w.
ZLineCensus zline_census(bool circles, int depth, int window);

}  // namespace cofinex::oracle

#endif  // COFINEX_ORACLE_HPP
