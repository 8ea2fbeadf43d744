#include "cofinex/partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "cofinex/error.hpp"

namespace cofinex {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), Elem{0});
  }
  Elem find(Elem x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<Elem> parent_;
  std::vector<std::uint8_t> rank_;
};

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

}  // namespace

// ---------------------------------------------------------------------------

Partition::Partition(StructurePtr carrier, std::vector<std::uint32_t> class_of)
    : carrier_(std::move(carrier)), class_of_(std::move(class_of)) {
  std::uint32_t k = 0;
  for (auto c : class_of_) k = std::max(k, c + 1);
  classes_.resize(k);
  for (Elem x = 0; x < class_of_.size(); ++x) classes_[class_of_[x]].push_back(x);
  reps_.resize(k);
  for (std::uint32_t c = 0; c < k; ++c) {
    reps_[c] = *std::min_element(
        classes_[c].begin(), classes_[c].end(), [this](Elem a, Elem b) {
          return carrier_->name(a) < carrier_->name(b);
        });
  }
}

Partition Partition::discrete(StructurePtr carrier) {
  std::vector<std::uint32_t> labels(carrier->size());
  std::iota(labels.begin(), labels.end(), 0u);
  return Partition(std::move(carrier), std::move(labels));
}

Partition Partition::full(StructurePtr carrier) {
  std::vector<std::uint32_t> labels(carrier->size(), 0u);
  return Partition(std::move(carrier), std::move(labels));
}

Partition Partition::from_labels(StructurePtr carrier,
                                 std::span<const std::uint64_t> labels) {
  if (labels.size() != carrier->size())
    throw Error(Errc::bad_parameter, "label vector does not cover the carrier");
  std::unordered_map<std::uint64_t, std::uint32_t> seen;
  std::vector<std::uint32_t> class_of(labels.size());
  for (std::size_t x = 0; x < labels.size(); ++x) {
    auto [it, inserted] =
        seen.emplace(labels[x], static_cast<std::uint32_t>(seen.size()));
    class_of[x] = it->second;
  }
  return Partition(std::move(carrier), std::move(class_of));
}

Partition Partition::from_classes(StructurePtr carrier,
                                  const std::vector<std::vector<Elem>>& classes) {
  const std::size_t n = carrier->size();
  std::vector<std::uint64_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::uint64_t{0});
  std::vector<bool> taken(n);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (Elem x : classes[c]) {
      if (x >= n) throw Error(Errc::unknown_element, "class member outside carrier");
      if (taken[x])
        throw Error(Errc::bad_parameter, "element listed in two classes",
                    {carrier->name(x)});
      taken[x] = true;
      labels[x] = n + c;
    }
  }
  return from_labels(std::move(carrier), labels);
}

bool Partition::refines(const Partition& coarser) const {
  for (const auto& cls : classes_)
    for (Elem x : cls)
      if (!coarser.related(cls.front(), x)) return false;
  return true;
}

bool same_carrier(const Partition& a, const Partition& b) {
  if (a.carrier() == b.carrier()) return true;
  if (!a.carrier() || !b.carrier()) return false;
  return *a.carrier() == *b.carrier();
}

bool operator==(const Partition& a, const Partition& b) {
  return a.class_of_ == b.class_of_ && same_carrier(a, b);
}

// ---------------------------------------------------------------------------

std::string_view to_string(LawTag law) {
  switch (law) {
    case LawTag::compatible: return "compatible";
    case LawTag::graph_equivalence: return "graph_equivalence";
    case LawTag::congruence: return "congruence";
  }
  return "?";
}

LawTag parse_law(std::string_view text) {
  if (text == "compatible") return LawTag::compatible;
  if (text == "graph_equivalence" || text == "graph") return LawTag::graph_equivalence;
  if (text == "congruence") return LawTag::congruence;
  throw Error(Errc::parse_error, "unknown law", {std::string(text)});
}

void require_law_kind(LawTag law, Kind kind) {
  const bool ok = law == LawTag::compatible ||
                  (law == LawTag::graph_equivalence && kind == Kind::graph) ||
                  (law == LawTag::congruence && kind == Kind::groupoid);
  if (!ok)
    throw Error(Errc::law_kind_mismatch, "law does not apply to this carrier kind",
                {std::string(to_string(law)), std::string(to_string(kind))});
}

CheckReport check(LawTag law, const Partition& r) {
  const FiniteStructure& s = *r.carrier();
  require_law_kind(law, s.kind());
  auto fail = [&](std::string rule, std::initializer_list<Elem> xs) {
    CheckReport rep{false, std::move(rule), {}};
    for (Elem x : xs) rep.witness.push_back(s.name(x));
    return rep;
  };

  for (const auto& cls : r.classes()) {
    const Elem x = cls.front();
    for (Elem y : cls) {
      if (!r.related(s.src(x), s.src(y)))
        return fail("source", {x, y, s.src(x), s.src(y)});
      if (!r.related(s.tgt(x), s.tgt(y)))
        return fail("target", {x, y, s.tgt(x), s.tgt(y)});
    }
  }
  if (law == LawTag::compatible) return {};

  for (const auto& cls : r.classes()) {
    const Elem x = cls.front();
    for (Elem y : cls) {
      const Elem xi = s.inv(x), yi = s.inv(y);
      if (xi == kNoElem || yi == kNoElem) return fail("involution", {x, y});
      if (!r.related(xi, yi)) return fail("involution", {x, y, xi, yi});
    }
  }

  if (law == LawTag::graph_equivalence) {
    for (Elem x = 0; x < s.size(); ++x) {
      if (!r.related(x, s.inv(x))) continue;
      const auto& cls = r.members(r.class_of(x));
      const bool has_vertex = std::any_of(cls.begin(), cls.end(),
                                          [&](Elem y) { return s.is_vertex(y); });
      if (!has_vertex) return fail("self_inverse", {x});
    }
    return {};
  }

  // congruence: products of composable related pairs stay related
  std::unordered_map<std::uint64_t, std::pair<Elem, Elem>> first;
  for (Elem g = 0; g < s.size(); ++g)
    for (Elem h = 0; h < s.size(); ++h) {
      if (!s.composable(g, h)) continue;
      const Elem gh = s.mul(g, h);
      if (gh == kNoElem) return fail("product", {g, h});
      auto [it, inserted] =
          first.emplace(pair_key(r.class_of(g), r.class_of(h)), std::pair{g, h});
      if (inserted) continue;
      const auto [g0, h0] = it->second;
      if (!r.related(s.mul(g0, h0), gh)) return fail("product", {g0, h0, g, h});
    }
  return {};
}

// ---------------------------------------------------------------------------

namespace detail {

ClosureResult close_with(LawTag law, const StructurePtr& structure,
                         std::span<const ElemPair> seed, ClosureRules rules) {
  const FiniteStructure& s = *structure;
  require_law_kind(law, s.kind());
  const std::size_t n = s.size();
  UnionFind uf(n);
  std::deque<ElemPair> work;
  for (const auto& [x, y] : seed) {
    if (x >= n || y >= n)
      throw Error(Errc::unknown_element, "seed pair outside carrier");
    work.emplace_back(x, y);
  }
  const bool use_inv = rules.involution && law != LawTag::compatible && s.has_inv();
  const bool use_mul = rules.product && law == LawTag::congruence;

  std::vector<ElemPair> composable;
  if (use_mul) {
    for (Elem g = 0; g < n; ++g)
      for (Elem h = 0; h < n; ++h)
        if (s.composable(g, h) && s.mul(g, h) != kNoElem) composable.emplace_back(g, h);
  }

  for (;;) {
    while (!work.empty()) {
      const auto [x, y] = work.front();
      work.pop_front();
      if (!uf.unite(x, y)) continue;
      if (rules.source_target) {
        work.emplace_back(s.src(x), s.src(y));
        work.emplace_back(s.tgt(x), s.tgt(y));
      }
      if (use_inv && s.inv(x) != kNoElem && s.inv(y) != kNoElem)
        work.emplace_back(s.inv(x), s.inv(y));
    }
    if (!use_mul) break;
    // Products of related composable pairs must land in one class.
    std::unordered_map<std::uint64_t, Elem> first;
    first.reserve(composable.size());
    for (const auto& [g, h] : composable) {
      const Elem gh = s.mul(g, h);
      auto [it, inserted] = first.emplace(pair_key(uf.find(g), uf.find(h)), gh);
      if (!inserted && uf.find(it->second) != uf.find(gh))
        work.emplace_back(it->second, gh);
    }
    if (work.empty()) break;
  }

  std::vector<std::uint64_t> labels(n);
  for (Elem x = 0; x < n; ++x) labels[x] = uf.find(x);
  ClosureResult result{Partition::from_labels(structure, labels), true, {}};

  if (law == LawTag::graph_equivalence) {
    const Partition& r = result.partition;
    for (Elem x = 0; x < n && result.valid; ++x) {
      if (s.inv(x) == kNoElem || !r.related(x, s.inv(x))) continue;
      const auto& cls = r.members(r.class_of(x));
      if (std::none_of(cls.begin(), cls.end(), [&](Elem y) { return s.is_vertex(y); })) {
        result.valid = false;
        result.witness = {s.name(x), s.name(s.inv(x))};
      }
    }
  }
  return result;
}

std::optional<std::array<std::uint32_t, 3>> find_unlifted_triple(
    const Partition& rho) {
  const FiniteStructure& s = *rho.carrier();
  const std::size_t n = s.size();
  const std::size_t k = rho.index();
  std::vector<std::uint32_t> qs(k), qt(k), qinv(k);
  for (std::uint32_t c = 0; c < k; ++c) {
    const Elem rep = rho.representative(c);
    qs[c] = rho.class_of(s.src(rep));
    qt[c] = rho.class_of(s.tgt(rep));
    qinv[c] = s.has_inv() && s.inv(rep) != kNoElem ? rho.class_of(s.inv(rep)) : c;
  }

  std::vector<bool> pair_lifted(k * k);
  for (Elem g = 0; g < n; ++g)
    for (Elem h = 0; h < n; ++h)
      if (s.composable(g, h)) pair_lifted[rho.class_of(g) * k + rho.class_of(h)] = true;
  for (std::uint32_t x = 0; x < k; ++x)
    for (std::uint32_t y = 0; y < k; ++y)
      if (qt[x] == qs[y] && !pair_lifted[x * k + y])
        return std::array<std::uint32_t, 3>{x, y, qinv[y]};

  // Classes of elements ending / starting at each vertex of G.
  std::vector<std::vector<std::uint32_t>> ends_at(n), starts_at(n);
  for (Elem g = 0; g < n; ++g) {
    ends_at[s.tgt(g)].push_back(rho.class_of(g));
    starts_at[s.src(g)].push_back(rho.class_of(g));
  }
  for (auto* table : {&ends_at, &starts_at})
    for (auto& v : *table) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }

  std::vector<bool> outer(k * k);
  for (std::uint32_t y = 0; y < k; ++y) {
    std::fill(outer.begin(), outer.end(), false);
    std::vector<std::pair<Elem, Elem>> seen_ends;
    for (Elem h : rho.members(y)) {
      const std::pair<Elem, Elem> ends{s.src(h), s.tgt(h)};
      if (std::find(seen_ends.begin(), seen_ends.end(), ends) != seen_ends.end())
        continue;
      seen_ends.push_back(ends);
      for (auto x : ends_at[ends.first])
        for (auto z : starts_at[ends.second]) outer[x * k + z] = true;
    }
    for (std::uint32_t x = 0; x < k; ++x) {
      if (qt[x] != qs[y]) continue;
      for (std::uint32_t z = 0; z < k; ++z)
        if (qs[z] == qt[y] && !outer[x * k + z])
          return std::array<std::uint32_t, 3>{x, y, z};
    }
  }
  return std::nullopt;
}

}  // namespace detail

ClosureResult close(LawTag law, const StructurePtr& structure,
                    std::span<const ElemPair> seed) {
  return detail::close_with(law, structure, seed, {});
}

// ---------------------------------------------------------------------------

Partition intersect(const Partition& r1, const Partition& r2) {
  if (!same_carrier(r1, r2))
    throw Error(Errc::carrier_mismatch, "partitions live on different carriers");
  std::vector<std::uint64_t> labels(r1.size());
  for (Elem x = 0; x < labels.size(); ++x)
    labels[x] = pair_key(r1.class_of(x), r2.class_of(x));
  return Partition::from_labels(r1.carrier(), labels);
}

Partition kernel(const StructureMap& f) {
  std::vector<std::uint64_t> labels(f.table.begin(), f.table.end());
  return Partition::from_labels(f.domain, labels);
}

namespace {

FiniteStructure quotient_structure(const Partition& r, LawTag law) {
  const FiniteStructure& s = *r.carrier();
  if (law == LawTag::congruence) return groupoid_quotient_table(r);
  const std::size_t k = r.index();
  std::vector<std::string> names(k);
  std::vector<bool> vertex(k);
  std::vector<Elem> src(k), tgt(k), inv;
  for (std::uint32_t c = 0; c < k; ++c) {
    const Elem rep = r.representative(c);
    names[c] = s.name(rep);
    const auto& cls = r.members(c);
    vertex[c] = std::any_of(cls.begin(), cls.end(), [&](Elem y) { return s.is_vertex(y); });
    src[c] = r.class_of(s.src(rep));
    tgt[c] = r.class_of(s.tgt(rep));
  }
  if (law == LawTag::graph_equivalence) {
    inv.resize(k);
    for (std::uint32_t c = 0; c < k; ++c) inv[c] = r.class_of(s.inv(r.representative(c)));
  }
  return FiniteStructure(law == LawTag::graph_equivalence ? Kind::graph : Kind::digraph,
                         std::move(names), std::move(vertex), std::move(src),
                         std::move(tgt), std::move(inv));
}

MapLaws laws_for(LawTag law) {
  switch (law) {
    case LawTag::compatible: return {true, false, false};
    case LawTag::graph_equivalence: return {true, true, false};
    case LawTag::congruence: return {true, true, true};
  }
  return {};
}

}  // namespace

FiniteStructure groupoid_quotient_table(const Partition& rho) {
  const FiniteStructure& s = *rho.carrier();
  if (s.kind() != Kind::groupoid)
    throw Error(Errc::law_kind_mismatch, "groupoid quotient of a non-groupoid");
  const std::size_t k = rho.index();
  std::vector<std::string> names(k);
  std::vector<bool> vertex(k);
  std::vector<Elem> src(k), tgt(k), inv(k), mul(k * k, kNoElem);
  for (std::uint32_t c = 0; c < k; ++c) {
    const Elem rep = rho.representative(c);
    names[c] = s.name(rep);
    const auto& cls = rho.members(c);
    vertex[c] = std::any_of(cls.begin(), cls.end(), [&](Elem y) { return s.is_vertex(y); });
    src[c] = rho.class_of(s.src(rep));
    tgt[c] = rho.class_of(s.tgt(rep));
    inv[c] = s.inv(rep) == kNoElem ? kNoElem : rho.class_of(s.inv(rep));
  }
  for (Elem g = 0; g < s.size(); ++g)
    for (Elem h = 0; h < s.size(); ++h) {
      const Elem gh = s.mul(g, h);
      if (gh == kNoElem) continue;
      Elem& slot = mul[rho.class_of(g) * k + rho.class_of(h)];
      if (slot == kNoElem) slot = rho.class_of(gh);
    }
  return FiniteStructure(Kind::groupoid, std::move(names), std::move(vertex),
                         std::move(src), std::move(tgt), std::move(inv),
                         std::move(mul));
}

Quotient quotient(const Partition& r, LawTag law) {
  const FiniteStructure& s = *r.carrier();
  require_law_kind(law, s.kind());
  if (auto rep = check(law, r); !rep)
    throw Error(Errc::law_check_failed, "partition fails the " +
                                            std::string(to_string(law)) + " law (" +
                                            rep.rule + ")",
                rep.witness);
  if (law == LawTag::congruence) {
    if (auto triple = detail::find_unlifted_triple(r)) {
      std::vector<std::string> witness;
      for (auto c : *triple) witness.push_back(s.name(r.representative(c)));
      throw Error(Errc::quotient_product_undefined,
                  "a composable triple of the quotient has no composable lift",
                  std::move(witness));
    }
  }
  auto q = share(quotient_structure(r, law));
  std::vector<Elem> table(r.labels().begin(), r.labels().end());
  StructureMap nu{r.carrier(), q, std::move(table), laws_for(law)};
  return {std::move(q), std::move(nu)};
}

IsoReport first_isomorphism(const StructureMap& f) {
  Partition k = kernel(f);
  Quotient q = quotient(k, LawTag::compatible);
  std::vector<Elem> table(k.index());
  for (std::uint32_t c = 0; c < k.index(); ++c) table[c] = f(k.representative(c));
  StructureMap induced{q.structure, f.codomain, std::move(table), {true, false, false}};

  bool triangle = true;
  for (Elem x = 0; x < f.domain->size(); ++x)
    if (f(x) != induced(q.nu(x))) triangle = false;
  const bool injective = is_injective(induced);
  const bool iso = injective && is_surjective(induced) && validate_map(induced).ok();
  return {std::move(k), std::move(q), std::move(induced), injective, iso, triangle};
}

StructureMap induced_bonding(const Quotient& coarse, const Quotient& fine) {
  if (coarse.nu.domain != fine.nu.domain && !(*coarse.nu.domain == *fine.nu.domain))
    throw Error(Errc::carrier_mismatch, "quotients of different carriers");
  const FiniteStructure& s = *fine.nu.domain;
  std::vector<Elem> table(fine.structure->size(), kNoElem);
  for (Elem x = 0; x < s.size(); ++x) {
    Elem& slot = table[fine.nu(x)];
    const Elem img = coarse.nu(x);
    if (slot == kNoElem) {
      slot = img;
    } else if (slot != img) {
      std::vector<std::string> witness;
      for (Elem y = 0; y < s.size(); ++y)
        if (fine.nu(y) == fine.nu(x)) witness.push_back(s.name(y));
      throw Error(Errc::not_a_refinement,
                  "a fine class meets two coarse classes", std::move(witness));
    }
  }
  MapLaws laws{fine.nu.laws.src_tgt && coarse.nu.laws.src_tgt,
               fine.nu.laws.involution && coarse.nu.laws.involution,
               fine.nu.laws.product && coarse.nu.laws.product};
  return {fine.structure, coarse.structure, std::move(table), laws};
}

StructureMap induced_bonding(const Partition& coarse, const Partition& fine,
                             LawTag law) {
  if (!same_carrier(coarse, fine))
    throw Error(Errc::carrier_mismatch, "partitions live on different carriers");
  for (const auto& cls : fine.classes())
    for (Elem x : cls)
      if (!coarse.related(cls.front(), x)) {
        std::vector<std::string> witness;
        for (Elem y : cls) witness.push_back(fine.carrier()->name(y));
        throw Error(Errc::not_a_refinement,
                    "a fine class meets two coarse classes", std::move(witness));
      }
  return induced_bonding(quotient(coarse, law), quotient(fine, law));
}

}  // namespace cofinex
