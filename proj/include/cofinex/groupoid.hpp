#ifndef COFINEX_GROUPOID_HPP
#define COFINEX_GROUPOID_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cofinex/completion.hpp"

namespace cofinex {

/// Per-vertex subgroups N_x of the vertex groups G(x, x).
struct CoherentFamily {
  StructurePtr groupoid;
  std::map<Elem, std::vector<Elem>> subgroups;  ///< vertex -> sorted members
};

/// Throws NotNormal{x} (not a normal subgroup of G(x,x)) or NotCoherent{g}
/// (g^-1 N_s(g) g differs from N_t(g)). Missing vertices count as trivial.
void verify_family(const CoherentFamily& family);

/// A congruence that relates no two distinct vertices.
class RigidCongruence {
 public:
  /// Throws NotACongruence, or BadParameter when vertices are merged.
  static RigidCongruence certify(Partition partition);

  const Partition& partition() const noexcept { return partition_; }
  std::size_t index() const noexcept { return partition_.index(); }

 private:
  explicit RigidCongruence(Partition p) : partition_(std::move(p)) {}
  Partition partition_;
};

/// Throws NotACongruence.
bool is_rigid(const Partition& rho);

/// (g, h) related iff same source, same target and g h^-1 in N_s(g).
RigidCongruence rigid_from_coherent(const CoherentFamily& family);

/// N_x = rho[x] for every vertex x.
CoherentFamily coherent_from_rigid(const RigidCongruence& rho);

/// Elements of `g` (a groupoid) connected to vertex x by some arrow.
std::vector<Elem> component_vertices(const FiniteStructure& g, Elem x);
bool is_connected(const FiniteStructure& g);

/// The rigid congruence with class N at vertex x, N_y = g^-1 N g for any
/// g in G(x, y). Throws NotConnected, NotNormal, UnknownVertex.
RigidCongruence rho_from_subgroup(const StructurePtr& g, Elem x,
                                  const std::vector<Elem>& normal);

/// Component-wise variant: one (base vertex, normal subgroup) per connected
/// component. Throws BadParameter when a component has no entry or two.
RigidCongruence rho_from_subgroups(
    const StructurePtr& g, const std::vector<std::pair<Elem, std::vector<Elem>>>& bases);

struct Condition3Result {
  bool holds = true;
  /// Ids of class representatives of an unliftable composable triple.
  std::optional<std::array<std::string, 3>> witness;

  explicit operator bool() const noexcept { return holds; }
};

/// Every composable triple of G/rho lifts to a composable triple of G.
/// Throws NotACongruence.
Condition3Result condition3_check(const Partition& rho);

/// {rho /\ sigma} where sigma meets one vertex-separating member per vertex.
/// Throws VerticesInseparable{x, y}.
FilterBase rigid_base(const FilterBase& family);

/// Levels are the quotient groupoids, coarse to fine. Throws NotAChain.
InverseSystem profinite_groupoid_system(const StructurePtr& g,
                                        const std::vector<RigidCongruence>& chain);

/// For every nonempty G(x, y) some member keeps every class meeting G(x, y)
/// inside G(x, y).
bool openness_shadow(const FilterBase& family);

// Small group-theory helpers on vertex groups.

/// All subgroups of G(x, x), each sorted.
std::vector<std::vector<Elem>> vertex_subgroups(const FiniteStructure& g, Elem x);
bool is_subgroup(const FiniteStructure& g, Elem x, const std::vector<Elem>& n);
bool is_normal_subgroup(const FiniteStructure& g, Elem x, const std::vector<Elem>& n);
/// g^-1 N g, sorted.
std::vector<Elem> conjugate(const FiniteStructure& g, const std::vector<Elem>& n, Elem by);

}  // namespace cofinex

#endif  // COFINEX_GROUPOID_HPP
