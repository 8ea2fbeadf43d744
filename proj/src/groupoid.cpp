#include "cofinex/groupoid.hpp"

#include <algorithm>
#include <set>

#include "cofinex/error.hpp"

namespace cofinex {

namespace {

void require_groupoid(const FiniteStructure& g) {
  if (g.kind() != Kind::groupoid)
    throw Error(Errc::kind_mismatch, "operation needs a groupoid");
}

void require_vertex(const FiniteStructure& g, Elem x) {
  if (x >= g.size() || !g.is_vertex(x))
    throw Error(Errc::unknown_vertex, "not a vertex",
                {x < g.size() ? g.name(x) : std::to_string(x)});
}

void require_congruence(const Partition& rho) {
  require_groupoid(*rho.carrier());
  if (auto rep = check(LawTag::congruence, rho); !rep)
    throw Error(Errc::not_a_congruence, "relation is not a congruence (" + rep.rule + ")",
                rep.witness);
}

std::vector<Elem> sorted(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Subgroup of G(x, x) generated by `gens`.
std::vector<Elem> generated_subgroup(const FiniteStructure& g, Elem x,
                                     const std::vector<Elem>& gens) {
  std::set<Elem> members{x};
  std::vector<Elem> work{x};
  while (!work.empty()) {
    const Elem a = work.back();
    work.pop_back();
    for (Elem b : gens) {
      const Elem ab = g.mul(a, b);
      if (members.insert(ab).second) work.push_back(ab);
    }
  }
  return {members.begin(), members.end()};
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Elem> conjugate(const FiniteStructure& g, const std::vector<Elem>& n, Elem by) {
  std::vector<Elem> out;
  out.reserve(n.size());
  const Elem by_inv = g.inv(by);
  for (Elem a : n) out.push_back(g.mul(g.mul(by_inv, a), by));
  return sorted(std::move(out));
}

bool is_subgroup(const FiniteStructure& g, Elem x, const std::vector<Elem>& n) {
  if (n.empty()) return false;
  std::set<Elem> set(n.begin(), n.end());
  if (!set.count(x)) return false;
  for (Elem a : set)
    if (a >= g.size() || g.src(a) != x || g.tgt(a) != x) return false;
  for (Elem a : set) {
    if (!set.count(g.inv(a))) return false;
    for (Elem b : set)
      if (!set.count(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal_subgroup(const FiniteStructure& g, Elem x, const std::vector<Elem>& n) {
  if (!is_subgroup(g, x, n)) return false;
  const auto normalised = sorted(n);
  for (Elem a : hom_set(g, x, x))
    if (conjugate(g, normalised, a) != normalised) return false;
  return true;
}

std::vector<std::vector<Elem>> vertex_subgroups(const FiniteStructure& g, Elem x) {
  require_groupoid(g);
  require_vertex(g, x);
  std::set<std::vector<Elem>> subs;
  subs.insert({x});
  for (Elem a : hom_set(g, x, x)) subs.insert(generated_subgroup(g, x, {a}));
  // Every subgroup is a join of cyclic ones; close under pairwise joins.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<Elem>> current(subs.begin(), subs.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<Elem> gens = current[i];
        gens.insert(gens.end(), current[j].begin(), current[j].end());
        if (subs.insert(generated_subgroup(g, x, gens)).second) grew = true;
      }
  }
  return {subs.begin(), subs.end()};
}

// ---------------------------------------------------------------------------

void verify_family(const CoherentFamily& family) {
  const FiniteStructure& g = *family.groupoid;
  require_groupoid(g);
  std::map<Elem, std::vector<Elem>> n;
  for (Elem x : g.vertices()) n[x] = {x};
  for (const auto& [x, members] : family.subgroups) {
    require_vertex(g, x);
    n[x] = sorted(members);
  }
  for (const auto& [x, members] : n)
    if (!is_normal_subgroup(g, x, members))
      throw Error(Errc::not_normal, "not a normal subgroup of the vertex group", {g.name(x)});
  for (Elem a = 0; a < g.size(); ++a)
    if (conjugate(g, n[g.src(a)], a) != n[g.tgt(a)])
      throw Error(Errc::not_coherent, "conjugation does not carry N_s onto N_t",
                  {g.name(a)});
}

RigidCongruence RigidCongruence::certify(Partition partition) {
  if (!is_rigid(partition))
    throw Error(Errc::bad_parameter, "congruence merges distinct vertices");
  return RigidCongruence(std::move(partition));
}

bool is_rigid(const Partition& rho) {
  require_congruence(rho);
  const FiniteStructure& g = *rho.carrier();
  std::set<std::uint32_t> seen;
  for (Elem v : g.vertices())
    if (!seen.insert(rho.class_of(v)).second) return false;
  return true;
}

RigidCongruence rigid_from_coherent(const CoherentFamily& family) {
  verify_family(family);
  const StructurePtr& gp = family.groupoid;
  const FiniteStructure& g = *gp;
  std::map<Elem, std::vector<Elem>> n;
  for (Elem x : g.vertices()) n[x] = {x};
  for (const auto& [x, members] : family.subgroups) n[x] = sorted(members);

  // Label each arrow by the smallest element of its right coset N_s(g) g.
  std::vector<std::uint64_t> labels(g.size());
  for (Elem a = 0; a < g.size(); ++a) {
    Elem least = kNoElem;
    for (Elem m : n[g.src(a)]) least = std::min(least, g.mul(m, a));
    labels[a] = least;
  }
  return RigidCongruence::certify(Partition::from_labels(gp, labels));
}

CoherentFamily coherent_from_rigid(const RigidCongruence& rho) {
  const Partition& p = rho.partition();
  CoherentFamily family{p.carrier(), {}};
  for (Elem x : p.carrier()->vertices()) family.subgroups[x] = p.members(p.class_of(x));
  return family;
}

std::vector<Elem> component_vertices(const FiniteStructure& g, Elem x) {
  std::set<Elem> seen{x};
  std::vector<Elem> work{x};
  while (!work.empty()) {
    const Elem v = work.back();
    work.pop_back();
    for (Elem a = 0; a < g.size(); ++a) {
      Elem other = kNoElem;
      if (g.src(a) == v) other = g.tgt(a);
      else if (g.tgt(a) == v) other = g.src(a);
      if (other != kNoElem && seen.insert(other).second) work.push_back(other);
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_connected(const FiniteStructure& g) {
  const auto vs = g.vertices();
  return vs.empty() || component_vertices(g, vs.front()).size() == vs.size();
}

namespace {

/// N_y = a^-1 N a for a in G(x, y), over the component of x.
void spread_from(const FiniteStructure& g, Elem x, const std::vector<Elem>& normal,
                 std::map<Elem, std::vector<Elem>>& out) {
  require_vertex(g, x);
  const auto n = sorted(normal);
  if (!is_normal_subgroup(g, x, n))
    throw Error(Errc::not_normal, "not a normal subgroup of the vertex group", {g.name(x)});
  for (Elem y : component_vertices(g, x)) {
    std::optional<std::vector<Elem>> ny;
    for (Elem a : hom_set(g, x, y)) {
      auto conj = conjugate(g, n, a);
      if (ny && *ny != conj)
        throw Error(Errc::not_normal, "conjugates depend on the chosen arrow", {g.name(a)});
      ny = std::move(conj);
    }
    out[y] = std::move(*ny);
  }
}

}  // namespace

RigidCongruence rho_from_subgroup(const StructurePtr& gp, Elem x,
                                  const std::vector<Elem>& normal) {
  const FiniteStructure& g = *gp;
  require_groupoid(g);
  require_vertex(g, x);
  if (!is_connected(g)) throw Error(Errc::not_connected, "groupoid is not connected");
  CoherentFamily family{gp, {}};
  spread_from(g, x, normal, family.subgroups);
  return rigid_from_coherent(family);
}

RigidCongruence rho_from_subgroups(
    const StructurePtr& gp, const std::vector<std::pair<Elem, std::vector<Elem>>>& bases) {
  const FiniteStructure& g = *gp;
  require_groupoid(g);
  CoherentFamily family{gp, {}};
  for (const auto& [x, normal] : bases) {
    require_vertex(g, x);
    if (family.subgroups.count(x))
      throw Error(Errc::bad_parameter, "two base vertices in one component", {g.name(x)});
    spread_from(g, x, normal, family.subgroups);
  }
  for (Elem v : g.vertices())
    if (!family.subgroups.count(v))
      throw Error(Errc::bad_parameter, "component without a base vertex", {g.name(v)});
  return rigid_from_coherent(family);
}

Condition3Result condition3_check(const Partition& rho) {
  require_congruence(rho);
  Condition3Result result;
  if (auto triple = detail::find_unlifted_triple(rho)) {
    const FiniteStructure& g = *rho.carrier();
    result.holds = false;
    result.witness = std::array<std::string, 3>{g.name(rho.representative((*triple)[0])),
                                                g.name(rho.representative((*triple)[1])),
                                                g.name(rho.representative((*triple)[2]))};
  }
  return result;
}

FilterBase rigid_base(const FilterBase& family) {
  const FiniteStructure& g = *family.carrier;
  require_groupoid(g);
  for (const auto& m : family.members) require_congruence(m);
  const auto vertices = g.vertices();

  auto separates = [&](const Partition& m, Elem x) {
    for (Elem v : vertices)
      if (v != x && m.related(v, x)) return false;
    return true;
  };

  Partition sigma = Partition::full(family.carrier);
  for (Elem x : vertices) {
    auto it = std::find_if(family.members.begin(), family.members.end(),
                           [&](const Partition& m) { return separates(m, x); });
    if (it != family.members.end()) {
      sigma = intersect(sigma, *it);
      continue;
    }
    if (family.members.empty()) break;
    // Name a vertex the first member does not tell apart from x.
    const Partition& probe = family.members.front();
    const Elem y = *std::find_if(vertices.begin(), vertices.end(), [&](Elem v) {
      return v != x && probe.related(v, x);
    });
    throw Error(Errc::vertices_inseparable, "no member separates this vertex",
                {g.name(x), g.name(y)});
  }

  FilterBase out{family.carrier, LawTag::congruence, {}};
  for (const auto& m : family.members) out.members.push_back(intersect(m, sigma));
  return out;
}

InverseSystem profinite_groupoid_system(const StructurePtr& g,
                                        const std::vector<RigidCongruence>& chain) {
  require_groupoid(*g);
  FilterBase base{g, LawTag::congruence, {}};
  for (const auto& rho : chain) base.members.push_back(rho.partition());
  return system_from_filterbase(base);
}

bool openness_shadow(const FilterBase& family) {
  const FiniteStructure& g = *family.carrier;
  require_groupoid(g);
  const auto vertices = g.vertices();
  for (Elem x : vertices)
    for (Elem y : vertices) {
      const auto arrows = hom_set(g, x, y);
      if (arrows.empty()) continue;
      const bool open = std::any_of(
          family.members.begin(), family.members.end(), [&](const Partition& m) {
            for (Elem a : arrows)
              for (Elem b : m.members(m.class_of(a)))
                if (g.src(b) != x || g.tgt(b) != y) return false;
            return true;
          });
      if (!open) return false;
    }
  return true;
}

}  // namespace cofinex
