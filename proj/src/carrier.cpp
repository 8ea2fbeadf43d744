#include "cofinex/carrier.hpp"

#include <algorithm>
#include <numeric>

#include "cofinex/error.hpp"

namespace cofinex {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::digraph: return "digraph";
    case Kind::graph: return "graph";
    case Kind::groupoid: return "groupoid";
  }
  return "?";
}

Kind parse_kind(std::string_view text) {
  if (text == "digraph") return Kind::digraph;
  if (text == "graph") return Kind::graph;
  if (text == "groupoid") return Kind::groupoid;
  throw Error(Errc::parse_error, "unknown kind", {std::string(text)});
}

// ---------------------------------------------------------------------------

FiniteStructure::FiniteStructure(Kind kind, std::vector<std::string> names,
                                 std::vector<bool> vertex,
                                 std::vector<Elem> src, std::vector<Elem> tgt,
                                 std::vector<Elem> inv, std::vector<Elem> mul)
    : kind_(kind),
      names_(std::move(names)),
      vertex_(std::move(vertex)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      inv_(std::move(inv)),
      mul_(std::move(mul)) {
  const std::size_t n = names_.size();
  if (vertex_.size() != n || src_.size() != n || tgt_.size() != n)
    throw Error(Errc::bad_parameter, "table sizes disagree with element count");
  index_.reserve(n);
  for (Elem x = 0; x < n; ++x) {
    if (!index_.emplace(names_[x], x).second)
      throw Error(Errc::duplicate_id, "element id repeated", {names_[x]});
  }
  for (Elem x = 0; x < n; ++x) {
    if (src_[x] >= n || tgt_[x] >= n)
      throw Error(Errc::dangling_reference, "source/target outside carrier",
                  {names_[x]});
  }

  if (!inv_.empty() && kind_ == Kind::digraph)
    throw Error(Errc::kind_mismatch, "digraph carries an involution table");
  if (!mul_.empty() && kind_ != Kind::groupoid)
    throw Error(Errc::kind_mismatch, "only groupoids carry a product table");
  if (kind_ == Kind::graph && inv_.empty() && n > 0)
    throw Error(Errc::kind_mismatch, "graph requires an involution table");
  if (kind_ == Kind::groupoid && mul_.empty() && n > 0)
    throw Error(Errc::kind_mismatch, "groupoid requires a product table");

  if (!inv_.empty()) {
    if (inv_.size() != n)
      throw Error(Errc::bad_parameter, "involution table has wrong size");
    for (Elem x = 0; x < n; ++x)
      if (inv_[x] != kNoElem && inv_[x] >= n)
        throw Error(Errc::dangling_reference, "inverse outside carrier",
                    {names_[x]});
  }
  if (!mul_.empty()) {
    if (mul_.size() != n * n)
      throw Error(Errc::bad_parameter, "product table has wrong size");
    for (std::size_t i = 0; i < mul_.size(); ++i)
      if (mul_[i] != kNoElem && mul_[i] >= n)
        throw Error(Errc::dangling_reference, "product outside carrier",
                    {names_[i / n], names_[i % n]});
  }

  if (kind_ == Kind::groupoid && inv_.empty() && n > 0) {
    inv_.assign(n, kNoElem);
    for (Elem g = 0; g < n; ++g) {
      for (Elem h = 0; h < n; ++h) {
        if (this->mul(g, h) == src_[g] && this->mul(h, g) == tgt_[g]) {
          inv_[g] = h;
          break;
        }
      }
    }
  }
}

std::optional<Elem> FiniteStructure::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteStructure::id(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw Error(Errc::unknown_element, "no such element", {std::string(name)});
}

std::vector<Elem> FiniteStructure::vertices() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < size(); ++x)
    if (vertex_[x]) out.push_back(x);
  return out;
}

std::vector<Elem> FiniteStructure::edges() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < size(); ++x)
    if (!vertex_[x]) out.push_back(x);
  return out;
}

std::size_t FiniteStructure::vertex_count() const {
  return static_cast<std::size_t>(std::count(vertex_.begin(), vertex_.end(), true));
}

// ---------------------------------------------------------------------------

StructureBuilder& StructureBuilder::vertex(std::string id) {
  std::string copy = id;
  entries_.push_back({std::move(id), true, copy, copy});
  return *this;
}

StructureBuilder& StructureBuilder::edge(std::string id, std::string src,
                                         std::string tgt) {
  entries_.push_back({std::move(id), false, std::move(src), std::move(tgt)});
  return *this;
}

StructureBuilder& StructureBuilder::element(std::string id, bool is_vertex,
                                            std::string src, std::string tgt) {
  entries_.push_back({std::move(id), is_vertex, std::move(src), std::move(tgt)});
  return *this;
}

StructureBuilder& StructureBuilder::inverse(std::string x, std::string x_inv) {
  inverses_.emplace_back(std::move(x), std::move(x_inv));
  return *this;
}

StructureBuilder& StructureBuilder::product(std::string g, std::string h,
                                            std::string gh) {
  products_.push_back({std::move(g), std::move(h), std::move(gh)});
  return *this;
}

FiniteStructure StructureBuilder::build() const {
  const std::size_t n = entries_.size();
  std::unordered_map<std::string, Elem> index;
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& e : entries_) {
    if (!index.emplace(e.id, static_cast<Elem>(names.size())).second)
      throw Error(Errc::duplicate_id, "element id repeated", {e.id});
    names.push_back(e.id);
  }
  auto resolve = [&](const std::string& id, const std::string& context) {
    auto it = index.find(id);
    if (it == index.end())
      throw Error(Errc::dangling_reference, "table mentions unknown id",
                  {context, id});
    return it->second;
  };

  std::vector<bool> vertex(n);
  std::vector<Elem> src(n), tgt(n);
  for (Elem x = 0; x < n; ++x) {
    vertex[x] = entries_[x].is_vertex;
    src[x] = resolve(entries_[x].src, entries_[x].id);
    tgt[x] = resolve(entries_[x].tgt, entries_[x].id);
  }

  std::vector<Elem> inv;
  if (!inverses_.empty() || kind_ == Kind::graph) {
    if (kind_ == Kind::digraph)
      throw Error(Errc::kind_mismatch, "digraph carries an involution table");
    inv.assign(n, kNoElem);
    for (const auto& [x, y] : inverses_) inv[resolve(x, x)] = resolve(y, x);
    for (const auto& [x, y] : inverses_)
      if (Elem yi = resolve(y, x); inv[yi] == kNoElem) inv[yi] = resolve(x, x);
    for (Elem x = 0; x < n; ++x)
      if (vertex[x] && inv[x] == kNoElem) inv[x] = x;
  }
  std::vector<Elem> mul;
  if (!products_.empty()) {
    if (kind_ != Kind::groupoid)
      throw Error(Errc::kind_mismatch, "only groupoids carry a product table");
    mul.assign(n * n, kNoElem);
    for (const auto& [g, h, gh] : products_)
      mul[resolve(g, g) * n + resolve(h, g)] = resolve(gh, g);
  }
  return FiniteStructure(kind_, std::move(names), std::move(vertex),
                         std::move(src), std::move(tgt), std::move(inv),
                         std::move(mul));
}

// ---------------------------------------------------------------------------

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::SourceNotVertex: return "SourceNotVertex";
    case ViolationKind::TargetNotVertex: return "TargetNotVertex";
    case ViolationKind::VertexNotFixed: return "VertexNotFixed";
    case ViolationKind::InvolutionMissing: return "InvolutionMissing";
    case ViolationKind::InvolutionNotInvolutive: return "InvolutionNotInvolutive";
    case ViolationKind::InverseSourceMismatch: return "InverseSourceMismatch";
    case ViolationKind::InverseTargetMismatch: return "InverseTargetMismatch";
    case ViolationKind::FixedEdge: return "FixedEdge";
    case ViolationKind::VertexNotSelfInverse: return "VertexNotSelfInverse";
    case ViolationKind::PartialProductDomain: return "PartialProductDomain";
    case ViolationKind::ProductEndpoints: return "ProductEndpoints";
    case ViolationKind::Associativity: return "Associativity";
    case ViolationKind::LeftIdentity: return "LeftIdentity";
    case ViolationKind::RightIdentity: return "RightIdentity";
    case ViolationKind::InverseAxiom: return "InverseAxiom";
    case ViolationKind::SourceNotPreserved: return "SourceNotPreserved";
    case ViolationKind::TargetNotPreserved: return "TargetNotPreserved";
    case ViolationKind::InvolutionNotPreserved: return "InvolutionNotPreserved";
    case ViolationKind::ProductNotPreserved: return "ProductNotPreserved";
    case ViolationKind::MapNotTotal: return "MapNotTotal";
  }
  return "?";
}

std::string Violation::describe() const {
  std::string out(to_string(kind));
  out += '{';
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) out += ',';
    out += witness[i];
  }
  out += '}';
  return out;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const FiniteStructure& s) {
  ValidationReport report;
  const auto n = static_cast<Elem>(s.size());
  auto add = [&](ViolationKind k, std::initializer_list<Elem> xs) {
    Violation v{k, {}};
    for (Elem x : xs) v.witness.push_back(s.name(x));
    report.violations.push_back(std::move(v));
  };

  for (Elem x = 0; x < n; ++x) {
    if (s.is_vertex(x)) {
      if (s.src(x) != x || s.tgt(x) != x) add(ViolationKind::VertexNotFixed, {x});
    } else {
      if (!s.is_vertex(s.src(x))) add(ViolationKind::SourceNotVertex, {x});
      if (!s.is_vertex(s.tgt(x))) add(ViolationKind::TargetNotVertex, {x});
    }
  }

  if (s.kind() == Kind::graph) {
    for (Elem x = 0; x < n; ++x) {
      const Elem y = s.inv(x);
      if (y == kNoElem) {
        add(ViolationKind::InvolutionMissing, {x});
        continue;
      }
      if (s.inv(y) != x) add(ViolationKind::InvolutionNotInvolutive, {x});
      if (s.src(y) != s.tgt(x)) add(ViolationKind::InverseSourceMismatch, {x});
      if (s.tgt(y) != s.src(x)) add(ViolationKind::InverseTargetMismatch, {x});
      if (!s.is_vertex(x) && y == x) add(ViolationKind::FixedEdge, {x});
      if (s.is_vertex(x) && y != x) add(ViolationKind::VertexNotSelfInverse, {x});
    }
  }

  if (s.kind() == Kind::groupoid) {
    bool domain_ok = true;
    for (Elem g = 0; g < n; ++g) {
      for (Elem h = 0; h < n; ++h) {
        const bool defined = s.mul(g, h) != kNoElem;
        if (defined != s.composable(g, h)) {
          add(ViolationKind::PartialProductDomain, {g, h});
          domain_ok = false;
          continue;
        }
        if (defined) {
          const Elem gh = s.mul(g, h);
          if (s.src(gh) != s.src(g) || s.tgt(gh) != s.tgt(h)) {
            add(ViolationKind::ProductEndpoints, {g, h});
            domain_ok = false;
          }
        }
      }
    }
    // Associativity needs every product on a composable triple to exist.
    if (domain_ok) {
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) {
          if (!s.composable(g, h)) continue;
          const Elem gh = s.mul(g, h);
          for (Elem k = 0; k < n; ++k) {
            if (!s.composable(h, k)) continue;
            if (s.mul(gh, k) != s.mul(g, s.mul(h, k)))
              add(ViolationKind::Associativity, {g, h, k});
          }
        }
    }
    for (Elem g = 0; g < n; ++g) {
      if (s.mul(s.src(g), g) != g) add(ViolationKind::LeftIdentity, {g});
      if (s.mul(g, s.tgt(g)) != g) add(ViolationKind::RightIdentity, {g});
      const Elem gi = s.inv(g);
      if (gi == kNoElem || s.src(gi) != s.tgt(g) || s.tgt(gi) != s.src(g) ||
          s.mul(g, gi) != s.src(g) || s.mul(gi, g) != s.tgt(g))
        add(ViolationKind::InverseAxiom, {g});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

MapLaws MapLaws::for_kind(Kind kind) {
  switch (kind) {
    case Kind::digraph: return {true, false, false};
    case Kind::graph: return {true, true, false};
    case Kind::groupoid: return {true, true, true};
  }
  return {};
}

ValidationReport validate_map(const StructureMap& f) {
  ValidationReport report;
  const FiniteStructure& a = *f.domain;
  const FiniteStructure& b = *f.codomain;
  const auto n = static_cast<Elem>(a.size());
  if (f.table.size() != a.size()) {
    report.violations.push_back({ViolationKind::MapNotTotal, {}});
    return report;
  }
  for (Elem x = 0; x < n; ++x) {
    if (f.table[x] >= b.size())
      report.violations.push_back({ViolationKind::MapNotTotal, {a.name(x)}});
  }
  if (!report.ok()) return report;

  if (f.laws.src_tgt) {
    for (Elem x = 0; x < n; ++x) {
      if (f(a.src(x)) != b.src(f(x)))
        report.violations.push_back({ViolationKind::SourceNotPreserved, {a.name(x)}});
      if (f(a.tgt(x)) != b.tgt(f(x)))
        report.violations.push_back({ViolationKind::TargetNotPreserved, {a.name(x)}});
    }
  }
  if (f.laws.involution) {
    if (!a.has_inv() || !b.has_inv()) {
      report.violations.push_back({ViolationKind::InvolutionNotPreserved, {}});
    } else {
      for (Elem x = 0; x < n; ++x) {
        const Elem xi = a.inv(x);
        const Elem fi = b.inv(f(x));
        if (xi == kNoElem || fi == kNoElem || f(xi) != fi)
          report.violations.push_back(
              {ViolationKind::InvolutionNotPreserved, {a.name(x)}});
      }
    }
  }
  if (f.laws.product) {
    if (!a.has_mul() || !b.has_mul()) {
      report.violations.push_back({ViolationKind::ProductNotPreserved, {}});
    } else {
      for (Elem g = 0; g < n; ++g)
        for (Elem h = 0; h < n; ++h) {
          const Elem gh = a.mul(g, h);
          if (gh == kNoElem) continue;
          const Elem img = b.mul(f(g), f(h));
          if (img == kNoElem || img != f(gh))
            report.violations.push_back(
                {ViolationKind::ProductNotPreserved, {a.name(g), a.name(h)}});
        }
    }
  }
  return report;
}

bool is_rigid(const StructureMap& f) {
  for (Elem x = 0; x < f.domain->size(); ++x)
    if (!f.domain->is_vertex(x) && f.codomain->is_vertex(f(x))) return false;
  return true;
}

bool is_injective(const StructureMap& f) {
  std::vector<bool> hit(f.codomain->size());
  for (Elem y : f.table) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool is_surjective(const StructureMap& f) {
  std::vector<bool> hit(f.codomain->size());
  for (Elem y : f.table) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

StructureMap identity_map(const StructurePtr& s, MapLaws laws) {
  std::vector<Elem> table(s->size());
  std::iota(table.begin(), table.end(), Elem{0});
  return {s, s, std::move(table), laws};
}

StructureMap compose(const StructureMap& g, const StructureMap& f) {
  std::vector<Elem> table(f.table.size());
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = g(f(static_cast<Elem>(x)));
  MapLaws laws{f.laws.src_tgt && g.laws.src_tgt,
               f.laws.involution && g.laws.involution,
               f.laws.product && g.laws.product};
  return {f.domain, g.codomain, std::move(table), laws};
}

// ---------------------------------------------------------------------------

FiniteStructure product(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.kind() != b.kind())
    throw Error(Errc::kind_mismatch, "product of carriers of different kinds",
                {std::string(to_string(a.kind())), std::string(to_string(b.kind()))});
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  auto at = [nb](Elem x, Elem y) { return static_cast<Elem>(x * nb + y); };

  std::vector<std::string> names(n);
  std::vector<bool> vertex(n);
  std::vector<Elem> src(n), tgt(n), inv, mul;
  if (a.has_inv() && b.has_inv()) inv.resize(n);
  if (a.kind() == Kind::groupoid) mul.assign(n * n, kNoElem);

  for (Elem x = 0; x < na; ++x)
    for (Elem y = 0; y < nb; ++y) {
      const Elem p = at(x, y);
      names[p] = "(" + a.name(x) + "," + b.name(y) + ")";
      vertex[p] = a.is_vertex(x) && b.is_vertex(y);
      src[p] = at(a.src(x), b.src(y));
      tgt[p] = at(a.tgt(x), b.tgt(y));
      if (!inv.empty()) {
        const Elem xi = a.inv(x), yi = b.inv(y);
        inv[p] = (xi == kNoElem || yi == kNoElem) ? kNoElem : at(xi, yi);
      }
    }
  if (!mul.empty()) {
    for (Elem g1 = 0; g1 < na; ++g1)
      for (Elem g2 = 0; g2 < nb; ++g2)
        for (Elem h1 = 0; h1 < na; ++h1) {
          const Elem p1 = a.mul(g1, h1);
          if (p1 == kNoElem) continue;
          for (Elem h2 = 0; h2 < nb; ++h2) {
            const Elem p2 = b.mul(g2, h2);
            if (p2 == kNoElem) continue;
            mul[at(g1, g2) * n + at(h1, h2)] = at(p1, p2);
          }
        }
  }
  return FiniteStructure(a.kind(), std::move(names), std::move(vertex),
                         std::move(src), std::move(tgt), std::move(inv),
                         std::move(mul));
}

StructureMap product_projection(const StructurePtr& a, const StructurePtr& b,
                                const StructurePtr& prod, int which) {
  const std::size_t nb = b->size();
  std::vector<Elem> table(prod->size());
  for (std::size_t p = 0; p < table.size(); ++p)
    table[p] = static_cast<Elem>(which == 0 ? p / nb : p % nb);
  return {prod, which == 0 ? a : b, std::move(table),
          MapLaws::for_kind(prod->kind())};
}

FiniteStructure disjoint_union(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.kind() != b.kind())
    throw Error(Errc::kind_mismatch, "disjoint union of different kinds");
  const auto na = static_cast<Elem>(a.size());
  const std::size_t n = a.size() + b.size();
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  std::vector<bool> vertex = a.vertex_flags();
  vertex.insert(vertex.end(), b.vertex_flags().begin(), b.vertex_flags().end());
  std::vector<Elem> src = a.src_table(), tgt = a.tgt_table(), inv, mul;
  for (Elem x = 0; x < b.size(); ++x) {
    src.push_back(b.src(x) + na);
    tgt.push_back(b.tgt(x) + na);
  }
  auto shift = [](Elem x, Elem by) { return x == kNoElem ? kNoElem : x + by; };
  if (a.has_inv() && b.has_inv()) {
    inv = a.inv_table();
    for (Elem x = 0; x < b.size(); ++x) inv.push_back(shift(b.inv(x), na));
  }
  if (a.has_mul() && b.has_mul()) {
    mul.assign(n * n, kNoElem);
    for (Elem g = 0; g < na; ++g)
      for (Elem h = 0; h < na; ++h) mul[g * n + h] = a.mul(g, h);
    for (Elem g = 0; g < b.size(); ++g)
      for (Elem h = 0; h < b.size(); ++h)
        mul[(g + na) * n + (h + na)] = shift(b.mul(g, h), na);
  }
  return FiniteStructure(a.kind(), std::move(names), std::move(vertex),
                         std::move(src), std::move(tgt), std::move(inv),
                         std::move(mul));
}

// ---------------------------------------------------------------------------

std::vector<Elem> generated_closure(const FiniteStructure& s,
                                    std::span<const Elem> seed) {
  std::vector<bool> in(s.size());
  std::vector<Elem> members;
  std::vector<Elem> work;
  auto add = [&](Elem x) {
    if (x == kNoElem || in[x]) return;
    in[x] = true;
    members.push_back(x);
    work.push_back(x);
  };
  for (Elem x : seed) {
    if (x >= s.size())
      throw Error(Errc::unknown_element, "seed element outside carrier");
    add(x);
  }
  const bool use_inv = s.kind() != Kind::digraph && s.has_inv();
  const bool use_mul = s.kind() == Kind::groupoid && s.has_mul();
  while (!work.empty()) {
    const Elem x = work.back();
    work.pop_back();
    add(s.src(x));
    add(s.tgt(x));
    if (use_inv) add(s.inv(x));
    if (use_mul) {
      // `members` grows while we scan; new entries are queued anyway.
      for (std::size_t i = 0; i < members.size(); ++i) {
        const Elem y = members[i];
        if (s.composable(x, y)) add(s.mul(x, y));
        if (s.composable(y, x)) add(s.mul(y, x));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

FiniteStructure induced_substructure(const FiniteStructure& s,
                                     std::span<const Elem> subset) {
  std::vector<Elem> keep(subset.begin(), subset.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Elem> slot(s.size(), kNoElem);
  for (Elem i = 0; i < keep.size(); ++i) slot[keep[i]] = i;
  auto map_in = [&](Elem x, Elem from) {
    if (x == kNoElem) return kNoElem;
    if (slot[x] == kNoElem)
      throw Error(Errc::dangling_reference, "subset is not closed",
                  {s.name(from), s.name(x)});
    return slot[x];
  };

  const std::size_t n = keep.size();
  std::vector<std::string> names;
  std::vector<bool> vertex;
  std::vector<Elem> src, tgt, inv, mul;
  for (Elem x : keep) {
    names.push_back(s.name(x));
    vertex.push_back(s.is_vertex(x));
    src.push_back(map_in(s.src(x), x));
    tgt.push_back(map_in(s.tgt(x), x));
    if (s.has_inv()) inv.push_back(map_in(s.inv(x), x));
  }
  if (s.has_mul()) {
    mul.assign(n * n, kNoElem);
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j) {
        const Elem p = s.mul(keep[i], keep[j]);
        if (p != kNoElem) mul[i * n + j] = map_in(p, keep[i]);
      }
  }
  return FiniteStructure(s.kind(), std::move(names), std::move(vertex),
                         std::move(src), std::move(tgt), std::move(inv),
                         std::move(mul));
}

FiniteStructure generated_substructure(const FiniteStructure& s,
                                       std::span<const Elem> seed) {
  const auto closed = generated_closure(s, seed);
  return induced_substructure(s, closed);
}

std::vector<Elem> hom_set(const FiniteStructure& g, Elem x, Elem y) {
  if (g.kind() != Kind::groupoid)
    throw Error(Errc::kind_mismatch, "hom sets need a groupoid");
  for (Elem v : {x, y})
    if (v >= g.size() || !g.is_vertex(v))
      throw Error(Errc::unknown_vertex, "not a vertex",
                  {v < g.size() ? g.name(v) : std::to_string(v)});
  std::vector<Elem> out;
  for (Elem a = 0; a < g.size(); ++a)
    if (g.src(a) == x && g.tgt(a) == y) out.push_back(a);
  return out;
}

}  // namespace cofinex
