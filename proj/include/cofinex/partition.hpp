#ifndef COFINEX_PARTITION_HPP
#define COFINEX_PARTITION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cofinex/carrier.hpp"

namespace cofinex {

/// An equivalence relation on a carrier, stored as a canonical labelling:
/// classes are numbered in order of their first element, and each class
/// has as representative its lexicographically smallest id.
class Partition {
 public:
  static Partition discrete(StructurePtr carrier);
  static Partition full(StructurePtr carrier);
  /// Elements with equal labels share a class. Labels are arbitrary.
  static Partition from_labels(StructurePtr carrier,
                               std::span<const std::uint64_t> labels);
  /// Listed classes; unlisted elements become singletons. Throws
  /// BadParameter when classes overlap.
  static Partition from_classes(StructurePtr carrier,
                                const std::vector<std::vector<Elem>>& classes);

  const StructurePtr& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return class_of_.size(); }
  std::size_t index() const noexcept { return classes_.size(); }

  std::uint32_t class_of(Elem x) const { return class_of_[x]; }
  const std::vector<std::uint32_t>& labels() const noexcept { return class_of_; }
  bool related(Elem x, Elem y) const { return class_of_[x] == class_of_[y]; }
  const std::vector<Elem>& members(std::uint32_t c) const { return classes_[c]; }
  const std::vector<std::vector<Elem>>& classes() const noexcept { return classes_; }
  Elem representative(std::uint32_t c) const { return reps_[c]; }

  bool is_discrete() const noexcept { return index() == size(); }
  /// Every class of *this lies inside a class of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b);

 private:
  Partition(StructurePtr carrier, std::vector<std::uint32_t> class_of);

  StructurePtr carrier_;
  std::vector<std::uint32_t> class_of_;
  std::vector<std::vector<Elem>> classes_;
  std::vector<Elem> reps_;
};

/// Same carrier object, or structurally equal carriers.
bool same_carrier(const Partition& a, const Partition& b);

enum class LawTag { compatible, graph_equivalence, congruence };

std::string_view to_string(LawTag law);
LawTag parse_law(std::string_view text);

/// Throws LawKindMismatch when the carrier kind cannot host `law`.
void require_law_kind(LawTag law, Kind kind);

struct CheckReport {
  bool pass = true;
  std::string rule;                  ///< which condition failed
  std::vector<std::string> witness;  ///< ids (or indices) of the failure

  explicit operator bool() const noexcept { return pass; }
};

/// Compatible: related pairs have related sources and targets.
/// Graph equivalence: additionally related inverses, and x ~ x^-1 only for
/// x in the class of a vertex. Congruence: compatible, closed under
/// inverses and under products of composable related pairs.
CheckReport check(LawTag law, const Partition& r);

struct ClosureResult {
  Partition partition;
  /// false only for graph_equivalence when the self-inverse side condition
  /// fails; that condition is reported, never forced.
  bool valid = true;
  std::vector<std::string> witness;
};

using ElemPair = std::pair<Elem, Elem>;

/// Smallest equivalence containing `seed` closed under the generation rules
/// of `law`.
ClosureResult close(LawTag law, const StructurePtr& structure,
                    std::span<const ElemPair> seed);

namespace detail {
/// Generation rules used by close(); exposed so that the verification suite
/// can run with a rule switched off and watch the oracles catch it.
struct ClosureRules {
  bool source_target = true;
  bool involution = true;
  bool product = true;
};
ClosureResult close_with(LawTag law, const StructurePtr& structure,
                         std::span<const ElemPair> seed, ClosureRules rules);

/// First composable triple of the quotient digraph G/rho that has no lift to
/// a composable triple of G, as class ids. Pairs are tried first: if (X, Y)
/// has no composable lift the triple (X, Y, Y^-1) is returned.
std::optional<std::array<std::uint32_t, 3>> find_unlifted_triple(
    const Partition& rho);
}  // namespace detail

/// Common refinement. Throws CarrierMismatch.
Partition intersect(const Partition& r1, const Partition& r2);

/// Partition by equal images.
Partition kernel(const StructureMap& f);

struct Quotient {
  StructurePtr structure;
  StructureMap nu;  ///< natural map, element -> its class
};

/// Gamma / r. Class ids are the representatives' ids. The quotient has the
/// kind the law produces: digraph for compatible, graph for
/// graph_equivalence, groupoid for congruence.
/// Throws LawKindMismatch, LawCheckFailed, QuotientProductUndefined.
Quotient quotient(const Partition& r, LawTag law);

/// The raw groupoid quotient table: products are filled from composable
/// lifts and left undefined where no lift exists. No gating; validate()
/// decides whether the result is a groupoid.
FiniteStructure groupoid_quotient_table(const Partition& rho);

struct IsoReport {
  Partition kernel;
  Quotient quotient;
  StructureMap induced;  ///< K[x] -> f(x)
  bool injective = false;
  bool isomorphism = false;  ///< onto the codomain
  bool triangle_commutes = false;
};

IsoReport first_isomorphism(const StructureMap& f);

/// Map Gamma/fine -> Gamma/coarse, fine class S[x] to coarse class R[x].
/// Throws NotARefinement with the offending fine class.
StructureMap induced_bonding(const Partition& coarse, const Partition& fine,
                             LawTag law = LawTag::compatible);
StructureMap induced_bonding(const Quotient& coarse, const Quotient& fine);

}  // namespace cofinex

#endif  // COFINEX_PARTITION_HPP
