#ifndef COFINEX_CARRIER_HPP
#define COFINEX_CARRIER_HPP

// Finite carriers for directed graphs, Serre graphs and groupoids.
//
// All three kinds share one representation: a dense element numbering with
// a vertex flag, source/target tables, and kind-gated optional tables for
// the involution (graphs, groupoids) and the partial product (groupoids).
// The identities of a groupoid are its vertices.

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cofinex {

using Elem = std::uint32_t;
inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

enum class Kind { digraph, graph, groupoid };

std::string_view to_string(Kind kind);
Kind parse_kind(std::string_view text);

class FiniteStructure {
 public:
  /// Dense constructor. `inv` must be empty unless kind uses an involution;
  /// `mul` is either empty or an n*n row-major table with kNoElem holes.
  /// A groupoid given without `inv` gets one derived from `mul`.
  FiniteStructure(Kind kind, std::vector<std::string> names,
                  std::vector<bool> vertex, std::vector<Elem> src,
                  std::vector<Elem> tgt, std::vector<Elem> inv = {},
                  std::vector<Elem> mul = {});

  Kind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(Elem x) const { return names_[x]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Elem> find(std::string_view id) const;
  /// Throws Error(unknown_element).
  Elem id(std::string_view name) const;

  bool is_vertex(Elem x) const { return vertex_[x]; }
  Elem src(Elem x) const { return src_[x]; }
  Elem tgt(Elem x) const { return tgt_[x]; }

  bool has_inv() const noexcept { return !inv_.empty(); }
  bool has_mul() const noexcept { return !mul_.empty(); }
  /// kNoElem when the table lacks an entry.
  Elem inv(Elem x) const { return inv_[x]; }
  /// kNoElem when the product is undefined (or missing).
  Elem mul(Elem g, Elem h) const { return mul_[g * names_.size() + h]; }
  bool composable(Elem g, Elem h) const { return tgt_[g] == src_[h]; }

  std::vector<Elem> vertices() const;
  std::vector<Elem> edges() const;
  std::size_t vertex_count() const;

  const std::vector<bool>& vertex_flags() const noexcept { return vertex_; }
  const std::vector<Elem>& src_table() const noexcept { return src_; }
  const std::vector<Elem>& tgt_table() const noexcept { return tgt_; }
  const std::vector<Elem>& inv_table() const noexcept { return inv_; }
  const std::vector<Elem>& mul_table() const noexcept { return mul_; }

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

 private:
  Kind kind_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<bool> vertex_;
  std::vector<Elem> src_;
  std::vector<Elem> tgt_;
  std::vector<Elem> inv_;
  std::vector<Elem> mul_;
};

using StructurePtr = std::shared_ptr<const FiniteStructure>;

inline StructurePtr share(FiniteStructure s) {
  return std::make_shared<const FiniteStructure>(std::move(s));
}

/// Name-based assembly, used by fixtures and the JSON reader.
class StructureBuilder {
 public:
  explicit StructureBuilder(Kind kind) : kind_(kind) {}

  StructureBuilder& vertex(std::string id);
  StructureBuilder& edge(std::string id, std::string src, std::string tgt);
  /// General element; `src`/`tgt` are taken as given, validation judges them.
  StructureBuilder& element(std::string id, bool is_vertex, std::string src,
                            std::string tgt);
  /// Sets x_inv as the inverse of x and, unless given separately, x as the
  /// inverse of x_inv. Vertices without an entry become self-inverse.
  StructureBuilder& inverse(std::string x, std::string x_inv);
  StructureBuilder& product(std::string g, std::string h, std::string gh);

  /// Resolves names. Throws DanglingReference, DuplicateId, KindMismatch.
  FiniteStructure build() const;

 private:
  struct Entry {
    std::string id;
    bool is_vertex;
    std::string src;
    std::string tgt;
  };
  Kind kind_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, std::string>> inverses_;
  std::vector<std::array<std::string, 3>> products_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  SourceNotVertex,
  TargetNotVertex,
  VertexNotFixed,
  InvolutionMissing,
  InvolutionNotInvolutive,
  InverseSourceMismatch,
  InverseTargetMismatch,
  FixedEdge,
  VertexNotSelfInverse,
  PartialProductDomain,
  ProductEndpoints,
  Associativity,
  LeftIdentity,
  RightIdentity,
  InverseAxiom,
  // map laws
  SourceNotPreserved,
  TargetNotPreserved,
  InvolutionNotPreserved,
  ProductNotPreserved,
  MapNotTotal,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> witness;  ///< original ids

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate(const FiniteStructure& structure);

// ---------------------------------------------------------------------------
// Maps

struct MapLaws {
  bool src_tgt = true;
  bool involution = false;
  bool product = false;

  /// The laws natural for maps between carriers of `kind`.
  static MapLaws for_kind(Kind kind);
  friend bool operator==(const MapLaws&, const MapLaws&) = default;
};

struct StructureMap {
  StructurePtr domain;
  StructurePtr codomain;
  std::vector<Elem> table;
  MapLaws laws;

  Elem operator()(Elem x) const { return table[x]; }
};

ValidationReport validate_map(const StructureMap& f);

/// Edges go to edges. Only meaningful for maps satisfying src_tgt.
bool is_rigid(const StructureMap& f);
bool is_injective(const StructureMap& f);
bool is_surjective(const StructureMap& f);

StructureMap identity_map(const StructurePtr& s, MapLaws laws);
/// g after f.
StructureMap compose(const StructureMap& g, const StructureMap& f);

// ---------------------------------------------------------------------------
// Constructions

/// Coordinate-wise product; element (x, y) has index x * |b| + y and id
/// "(x,y)". Throws KindMismatch.
FiniteStructure product(const FiniteStructure& a, const FiniteStructure& b);

/// Projection of `prod = product(*a, *b)` onto its first (`which` = 0) or
/// second coordinate.
StructureMap product_projection(const StructurePtr& a, const StructurePtr& b,
                                const StructurePtr& prod, int which);

/// Disjoint union of two carriers of the same kind. Ids must be disjoint.
FiniteStructure disjoint_union(const FiniteStructure& a, const FiniteStructure& b);

/// Smallest subset containing `seed` closed under src, tgt (and inv for
/// graphs; inv and mul for groupoids), as elements of `structure`.
std::vector<Elem> generated_closure(const FiniteStructure& structure,
                                    std::span<const Elem> seed);

/// The induced substructure on `generated_closure`, keeping original ids.
FiniteStructure generated_substructure(const FiniteStructure& structure,
                                       std::span<const Elem> seed);

/// Induced substructure on an arbitrary element subset that is already
/// closed. Throws DanglingReference when it is not.
FiniteStructure induced_substructure(const FiniteStructure& structure,
                                     std::span<const Elem> subset);

/// G(x, y) for a groupoid. Throws KindMismatch, UnknownVertex.
std::vector<Elem> hom_set(const FiniteStructure& g, Elem x, Elem y);

}  // namespace cofinex

#endif  // COFINEX_CARRIER_HPP
