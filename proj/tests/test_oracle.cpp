#include <set>

#include "cofinex/fixtures.hpp"
#include "support.hpp"

using namespace cofinex;

TEST_CASE("partition enumeration counts Bell numbers") {
  const std::vector<std::size_t> bell{1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t n = 0; n < bell.size(); ++n) {
    std::size_t count = 0;
    std::set<oracle::Labels> seen;
    oracle::for_each_partition(n, [&](const oracle::Labels& l) {
      ++count;
      seen.insert(l);
      CHECK(oracle::canonical({l.begin(), l.end()}) == l);
      return true;
    });
    CHECK(count == bell[n]);
    CHECK(seen.size() == bell[n]);
    CHECK(oracle::bell_number(n) == bell[n]);
  }
}

TEST_CASE("early stop") {
  std::size_t count = 0;
  oracle::for_each_partition(6, [&](const oracle::Labels&) { return ++count < 10; });
  CHECK(count == 10);
}

TEST_CASE("canonical relabelling") {
  CHECK(oracle::canonical({5, 5, 2, 9, 2}) == oracle::Labels{0, 0, 1, 2, 1});
  CHECK(oracle::canonical({}).empty());
}

TEST_CASE("congruences of cyclic groups are their subgroups") {
  // Z/n has one subgroup per divisor of n.
  const std::vector<std::pair<int, std::size_t>> divisors{{1, 1}, {2, 2}, {3, 2}, {4, 3},
                                                          {5, 2}, {6, 4}};
  for (auto [n, d] : divisors) {
    const auto z = fixtures::cyclic(n);
    CHECK(oracle::all_partitions(oracle::Law::congruence, z).size() == d);
    CHECK(oracle::subgroups(z, 0).size() == d);
  }
}

TEST_CASE("compatible partitions of a single edge") {
  // Vertices u, v and the edge e: the edge may only join a class whose
  // members share its endpoint classes, which forces u ~ v.
  const auto s = fixtures::path(1);
  const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
  CHECK(lawful.size() == 3);  // discrete, {u,v}, full
}

TEST_CASE("normal subgroups of the symmetric group on three points") {
  const auto s3 = fixtures::group_groupoid(fixtures::group_table("s3"));
  const auto subs = oracle::subgroups(s3, 0);
  CHECK(subs.size() == 6);
  std::size_t normal = 0;
  for (const auto& n : subs) normal += oracle::normal(s3, 0, n) ? 1 : 0;
  CHECK(normal == 3);
}

TEST_CASE("minimal closure on the cyclic group of order 4") {
  const auto z4 = fixtures::cyclic(4);
  const auto m = oracle::minimal_closure(oracle::Law::congruence, z4, {{1, 3}});
  REQUIRE(m.has_value());
  CHECK(*m == oracle::Labels{0, 1, 0, 1});
  const auto family = oracle::all_partitions(oracle::Law::congruence, z4);
  CHECK(oracle::meet_containing(family, {{1, 3}}) == m);
}

TEST_CASE("triple lifting on the pair groupoid") {
  const auto pg = fixtures::pair_groupoid(2);
  oracle::Labels merged(pg.size(), 0);
  for (Elem x = 0; x < pg.size(); ++x) merged[x] = x;
  merged[pg.id("b")] = merged[pg.id("a")];
  const auto labels = oracle::canonical({merged.begin(), merged.end()});
  CHECK(oracle::congruence(pg, labels));
  CHECK_FALSE(oracle::triples_lift(pg, labels));
  CHECK_FALSE(oracle::quotient_is_groupoid(pg, labels));
}

TEST_CASE("rigid index counts cosets per hom set") {
  const auto c = fixtures::connected_groupoid(2, fixtures::group_table("z4"));
  std::map<Elem, std::vector<Elem>> trivial;
  CHECK(oracle::rigid_index(c, trivial) == c.size());
}

TEST_CASE("integer model of the z-line") {
  const auto circles = oracle::zline_census(true, 4, 10);
  CHECK(circles.per_level == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(circles.ends == 1);
  CHECK(circles.level_sizes == std::vector<std::size_t>{4, 8, 12, 16});
  const auto arcs = oracle::zline_census(false, 4, 10);
  CHECK(arcs.per_level == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(arcs.ends == 2);
  CHECK(arcs.level_sizes == std::vector<std::size_t>{5, 9, 13, 17});
}

TEST_CASE("pairwise separation") {
  CHECK(oracle::pairwise_separated({{0, 1, 2}}, 3));
  CHECK_FALSE(oracle::pairwise_separated({{0, 0, 1}, {0, 0, 0}}, 3));
  CHECK(oracle::pairwise_separated({{0, 0, 1}, {0, 1, 1}}, 3));
}
