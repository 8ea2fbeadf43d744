#ifndef COFINEX_COFINITE_HPP
#define COFINEX_COFINITE_HPP

#include <vector>

#include "cofinex/partition.hpp"

namespace cofinex {

/// A finite family of finite-index relations on one carrier, each obeying
/// `law`. The filter-base property itself is checked by is_filter_base().
struct FilterBase {
  StructurePtr carrier;
  LawTag law = LawTag::compatible;
  std::vector<Partition> members;
};

/// Passes iff for every pair of members some member refines their meet.
/// The witness lists the two member indices. Throws CarrierMismatch, and
/// LawCheckFailed for a member breaking the declared law.
CheckReport is_filter_base(const FilterBase& base);

/// Meet of all members (full relation for an empty family).
Partition meet(const FilterBase& base);

/// The meet of all members is the diagonal.
bool is_hausdorff(const FilterBase& base);

/// Kernel of the map onto the six-element two-vertex graph (vertex case) or
/// onto the one-loop graph (edge case); the class of `y` is {y}.
/// Throws KindMismatch (non-digraph), UnknownElement.
Partition separating_congruence(const StructurePtr& structure, Elem y);

/// All separating congruences, one per element, in element order.
std::vector<Partition> separating_family(const StructurePtr& structure);

/// R /\ (s x s)^-1[R] /\ (t x t)^-1[R]: the largest compatible relation
/// inside R.
Partition compatible_interior(const Partition& r);

/// entry x is true iff some member has {x} as a class.
std::vector<bool> discreteness_certificate(const FilterBase& base);

/// Closes the family under pairwise meets (members stay unique).
FilterBase meet_closure(const FilterBase& base);

}  // namespace cofinex

#endif  // COFINEX_COFINITE_HPP
