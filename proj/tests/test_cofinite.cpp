#include <random>

#include "cofinex/cofinite.hpp"
#include "cofinex/fixtures.hpp"
#include "support.hpp"

using namespace cofinex;
using support::classes_of;
using support::code_of;
using support::from_names;
using Classes = std::vector<std::vector<std::string>>;

namespace {

StructurePtr p2() { return share(fixtures::path(2)); }

bool all_of(const std::vector<bool>& xs, bool value) {
  return std::all_of(xs.begin(), xs.end(), [&](bool x) { return x == value; });
}

// Independent evaluation of the map onto the six-element graph.
std::vector<std::uint64_t> delta_image(const FiniteStructure& s, Elem y) {
  const auto d = fixtures::delta_graph();
  std::vector<std::uint64_t> out(s.size());
  for (Elem x = 0; x < s.size(); ++x) {
    std::string target;
    if (!s.is_vertex(y)) {
      target = x == y ? "e" : "a";
    } else if (s.is_vertex(x)) {
      target = x == y ? "a" : "b";
    } else {
      const std::string from = s.src(x) == y ? "a" : "b";
      const std::string to = s.tgt(x) == y ? "a" : "b";
      for (Elem z = 0; z < d.size(); ++z)
        if (!d.is_vertex(z) && d.name(d.src(z)) == from && d.name(d.tgt(z)) == to)
          target = d.name(z);
    }
    out[x] = d.id(target);
  }
  return out;
}

}  // namespace

TEST_CASE("filter base condition") {
  const auto s = p2();
  const auto delta = Partition::discrete(s);
  CHECK(is_filter_base({s, LawTag::compatible, {delta}}));
  const auto r = from_names(s, {{"0", "1", "2"}, {"e01", "e12"}});
  CHECK(is_filter_base({s, LawTag::compatible, {r, delta}}));

  // Two incomparable vertex-merging relations.
  const auto r1 = from_names(s, {{"0", "2"}});
  const auto r2 = from_names(s, {{"0", "1"}});
  REQUIRE(check(LawTag::compatible, r1));
  REQUIRE(check(LawTag::compatible, r2));
  const auto rep = is_filter_base({s, LawTag::compatible, {r1, r2}});
  CHECK_FALSE(rep);
  CHECK(rep.witness == std::vector<std::string>{"0", "1"});

  const auto other = share(fixtures::path(3));
  CHECK(code_of([&] {
          is_filter_base({s, LawTag::compatible, {Partition::discrete(other)}});
        }) == Errc::carrier_mismatch);
}

TEST_CASE("Hausdorff examples") {
  const auto s = p2();
  CHECK(is_hausdorff({s, LawTag::compatible, {Partition::discrete(s)}}));
  const auto two = share(fixtures::discrete_space(2));
  CHECK_FALSE(is_hausdorff({two, LawTag::compatible, {Partition::full(two)}}));
  FilterBase seps{s, LawTag::compatible,
                  {separating_congruence(s, s->id("0")), separating_congruence(s, s->id("1")),
                   separating_congruence(s, s->id("e01")),
                   separating_congruence(s, s->id("e12"))}};
  CHECK(meet(seps).is_discrete());
  CHECK(is_hausdorff(seps));
}

TEST_CASE("separating congruences on a two-edge path") {
  const auto s = p2();
  const auto at1 = separating_congruence(s, s->id("1"));
  CHECK(classes_of(at1) == Classes{{"0", "2"}, {"1"}, {"e01"}, {"e12"}});
  CHECK(at1.index() == 4);
  const auto at_e = separating_congruence(s, s->id("e01"));
  CHECK(classes_of(at_e) == Classes{{"0", "1", "2", "e12"}, {"e01"}});
  CHECK(at_e.index() == 2);

  const auto point = share(fixtures::discrete_space(1));
  CHECK(separating_congruence(point, 0).is_discrete());
  CHECK(code_of([&] { separating_congruence(s, 99); }) == Errc::unknown_element);
  CHECK(code_of([] { separating_congruence(share(fixtures::cyclic(2)), 0); }) ==
        Errc::kind_mismatch);
}

TEST_CASE("separating congruences are kernels onto the six-element graph") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto s = share(fixtures::random_digraph(rng, 9));
    for (Elem y = 0; y < s->size(); ++y) {
      const auto p = separating_congruence(s, y);
      CHECK(p == Partition::from_labels(s, delta_image(*s, y)));
      CHECK(check(LawTag::compatible, p));
      CHECK(p.members(p.class_of(y)).size() == 1);
      CHECK(p.index() <= (s->is_vertex(y) ? 6u : 2u));
      if (!s->is_vertex(y) && s->size() > 1) CHECK(p.index() == 2);
    }
  }
}

TEST_CASE("vertex case reaches the bound of six") {
  // Vertex y with a loop, an edge out, an edge in; another vertex with a loop.
  const auto s = share(StructureBuilder(Kind::digraph)
                           .vertex("y")
                           .vertex("z")
                           .edge("loop", "y", "y")
                           .edge("out", "y", "z")
                           .edge("in", "z", "y")
                           .edge("far", "z", "z")
                           .build());
  CHECK(separating_congruence(s, s->id("y")).index() == 6);
}

TEST_CASE("compatible interior examples") {
  const auto s = p2();
  const auto r = from_names(s, {{"0", "1"}});
  CHECK(compatible_interior(r) == r);
  const auto edges = from_names(s, {{"e01", "e12"}});
  CHECK(compatible_interior(edges).is_discrete());
  CHECK(compatible_interior(Partition::full(s)) == Partition::full(s));
}

TEST_CASE("compatible interior is the largest compatible relation inside") {
  for (const auto& c : fixtures::small_carriers(6)) {
    const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
    oracle::for_each_partition(c.structure->size(), [&](const oracle::Labels& labels) {
      const auto r = support::from_oracle(c.structure, labels);
      const auto s = compatible_interior(r);
      CHECK(s.refines(r));
      CHECK(check(LawTag::compatible, s));
      CHECK(compatible_interior(s) == s);
      // Every compatible relation inside r lies inside s.
      for (const auto& l : lawful) {
        const auto q = support::from_oracle(c.structure, l);
        if (q.refines(r)) CHECK(q.refines(s));
      }
      return true;
    });
  }
}

TEST_CASE("compatible interior is monotone") {
  std::mt19937_64 rng(17);
  for (const auto& c : fixtures::small_carriers(8)) {
    const auto n = c.structure->size();
    for (int i = 0; i < 20; ++i) {
      std::vector<std::uint64_t> fine(n), coarse(n);
      for (std::size_t x = 0; x < n; ++x) {
        fine[x] = rng() % 4;
        coarse[x] = fine[x] % 2;
      }
      const auto a = Partition::from_labels(c.structure, fine);
      const auto b = Partition::from_labels(c.structure, coarse);
      REQUIRE(a.refines(b));
      CHECK(compatible_interior(a).refines(compatible_interior(b)));
    }
  }
}

TEST_CASE("discreteness certificates") {
  const auto s = p2();
  CHECK(all_of(discreteness_certificate({s, LawTag::compatible, separating_family(s)}), true));
  CHECK(all_of(discreteness_certificate({s, LawTag::compatible, {Partition::full(s)}}), false));
  CHECK(all_of(discreteness_certificate({s, LawTag::compatible, {Partition::discrete(s)}}),
               true));
}

TEST_CASE("meet closure is closed and keeps the meet") {
  const auto s = p2();
  const auto base = FilterBase{s, LawTag::compatible,
                               {from_names(s, {{"0", "2"}}), from_names(s, {{"0", "1"}})}};
  const auto closed = meet_closure(base);
  CHECK(is_filter_base(closed));
  CHECK(meet(closed) == meet(base));
  CHECK(closed.members.size() == 3);
}

TEST_CASE("Hausdorff iff every element is certified, under meet closure") {
  std::mt19937_64 rng(23);
  for (const auto& c : fixtures::small_carriers(5)) {
    const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
    for (int trial = 0; trial < 30; ++trial) {
      FilterBase base{c.structure, LawTag::compatible, {}};
      const int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i)
        base.members.push_back(support::from_oracle(c.structure, lawful[rng() % lawful.size()]));
      const auto closed = meet_closure(base);
      CHECK(is_filter_base(closed));
      CHECK(is_hausdorff(closed) == all_of(discreteness_certificate(closed), true));
      CHECK(is_hausdorff(closed) == oracle::pairwise_separated(
                                        [&] {
                                          std::vector<oracle::Labels> ls;
                                          for (const auto& m : base.members)
                                            ls.push_back(m.labels());
                                          return ls;
                                        }(),
                                        c.structure->size()));
    }
  }
}
