#include "cofinex/cofinite.hpp"

#include <algorithm>

#include "cofinex/error.hpp"

namespace cofinex {

namespace {

void require_members_on(const FilterBase& base) {
  for (const auto& m : base.members) {
    if (m.carrier() != base.carrier &&
        !(m.carrier() && base.carrier && *m.carrier() == *base.carrier))
      throw Error(Errc::carrier_mismatch, "member lives on another carrier");
  }
}

}  // namespace

CheckReport is_filter_base(const FilterBase& base) {
  require_members_on(base);
  for (std::size_t i = 0; i < base.members.size(); ++i) {
    if (auto rep = check(base.law, base.members[i]); !rep)
      throw Error(Errc::law_check_failed,
                  "member " + std::to_string(i) + " fails the " +
                      std::string(to_string(base.law)) + " law",
                  rep.witness);
  }
  const auto& ms = base.members;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const Partition both = intersect(ms[i], ms[j]);
      const bool witnessed = std::any_of(ms.begin(), ms.end(), [&](const Partition& m) {
        return m.refines(both);
      });
      if (!witnessed)
        return {false, "no member refines the meet",
                {std::to_string(i), std::to_string(j)}};
    }
  return {};
}

Partition meet(const FilterBase& base) {
  Partition out = Partition::full(base.carrier);
  for (const auto& m : base.members) out = intersect(out, m);
  return out;
}

bool is_hausdorff(const FilterBase& base) { return meet(base).is_discrete(); }

Partition separating_congruence(const StructurePtr& structure, Elem y) {
  const FiniteStructure& s = *structure;
  if (s.kind() != Kind::digraph)
    throw Error(Errc::kind_mismatch, "separating congruences are built on digraphs");
  if (y >= s.size()) throw Error(Errc::unknown_element, "no such element");

  // Labels name the image in the target graph.
  enum Image : std::uint64_t { a, b, e, f, g, g_bar };
  std::vector<std::uint64_t> labels(s.size());
  if (s.is_vertex(y)) {
    for (Elem x = 0; x < s.size(); ++x) {
      if (s.is_vertex(x)) {
        labels[x] = x == y ? a : b;
        continue;
      }
      const bool from_y = s.src(x) == y, to_y = s.tgt(x) == y;
      labels[x] = from_y ? (to_y ? e : g) : (to_y ? g_bar : f);
    }
  } else {
    for (Elem x = 0; x < s.size(); ++x) labels[x] = x == y ? e : a;
  }
  return Partition::from_labels(structure, labels);
}

std::vector<Partition> separating_family(const StructurePtr& structure) {
  std::vector<Partition> out;
  for (Elem y = 0; y < structure->size(); ++y)
    out.push_back(separating_congruence(structure, y));
  return out;
}

Partition compatible_interior(const Partition& r) {
  const FiniteStructure& s = *r.carrier();
  const std::uint64_t k = r.index();
  std::vector<std::uint64_t> labels(s.size());
  for (Elem x = 0; x < s.size(); ++x)
    labels[x] = (r.class_of(x) * k + r.class_of(s.src(x))) * k + r.class_of(s.tgt(x));
  return Partition::from_labels(r.carrier(), labels);
}

std::vector<bool> discreteness_certificate(const FilterBase& base) {
  std::vector<bool> out(base.carrier->size(), false);
  for (const auto& m : base.members)
    for (const auto& cls : m.classes())
      if (cls.size() == 1) out[cls.front()] = true;
  return out;
}

FilterBase meet_closure(const FilterBase& base) {
  FilterBase out{base.carrier, base.law, {}};
  auto add = [&](Partition p) {
    if (std::find(out.members.begin(), out.members.end(), p) == out.members.end())
      out.members.push_back(std::move(p));
  };
  for (const auto& m : base.members) add(m);
  for (std::size_t i = 0; i < out.members.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(intersect(out.members[i], out.members[j]));
  return out;
}

}  // namespace cofinex
