// Acceptance criteria 1-10. One PASS/FAIL line each; exit status 1 when any
// criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cofinex/error.hpp"
#include "cofinex/fixtures.hpp"
#include "cofinex/groupoid.hpp"
#include "cofinex/oracle.hpp"

using namespace cofinex;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(COFINEX_CLI) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

Partition from_labels(const StructurePtr& s, const oracle::Labels& l) {
  return Partition::from_labels(s, std::vector<std::uint64_t>(l.begin(), l.end()));
}

std::vector<Partition> congruences(const StructurePtr& g) {
  std::vector<Partition> out;
  for (const auto& l : oracle::all_partitions(oracle::Law::congruence, *g))
    out.push_back(from_labels(g, l));
  return out;
}

bool separates_vertices(const FiniteStructure& g, const std::vector<Partition>& members) {
  for (Elem x : g.vertices()) {
    const bool found = std::any_of(members.begin(), members.end(), [&](const Partition& m) {
      for (Elem y : m.members(m.class_of(x)))
        if (y != x && g.is_vertex(y)) return false;
      return true;
    });
    if (!found) return false;
  }
  return true;
}

// 1. Flagship ends census through the CLI.
Outcome flagship() {
  Outcome o;
  const std::array<std::array<std::string, 3>, 2> cases{{
      {"zline-circles", "Exact(1)", "(1,1,1,1)"},
      {"zline-arcs", "Exact(2)", "(2,2,2,2)"},
  }};
  std::ostringstream detail;
  for (const auto& [system, status, levels] : cases) {
    const auto start = Clock::now();
    int code = 0;
    const auto out =
        run_cli("complete --system " + system + " --depth 4 --report ends", code);
    const double t = seconds_since(start);
    const bool ok = code == 0 && out.find("status         " + status + "\n") != std::string::npos &&
                    out.find("per-level      " + levels + "\n") != std::string::npos && t < 1.0;
    o.pass = o.pass && ok;
    detail << system << " " << (ok ? status + " " + levels : "unexpected output") << " in "
           << t << "s; ";
  }
  o.detail = detail.str();
  return o;
}

// 2. Both systems separate the window, yet their end counts differ.
Outcome separation_vs_ends() {
  Outcome o;
  std::vector<std::size_t> ends;
  for (auto mode : {ZLineMode::circles, ZLineMode::arcs}) {
    const auto sys = zline_system(mode, 7);
    for (const auto& first : window_separation(sys, 6, 7)) o.pass = o.pass && first.has_value();
    const auto report = count_new_points(sys, 4);
    o.pass = o.pass && report.status == EndStatus::exact;
    ends.push_back(report.ends);
  }
  o.pass = o.pass && ends[0] != ends[1];
  o.detail = "window 6 separated by level 7 in both; ends " + std::to_string(ends[0]) + " vs " +
             std::to_string(ends[1]);
  return o;
}

// 3. Compatible closure equals the exhaustive minimum.
Outcome closure_minimality() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t cases = 0;
  for (const auto& c : fixtures::small_carriers(6)) {
    const auto& s = *c.structure;
    const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<ElemPair> seed;
      const std::size_t k = 1 + rng() % 3;
      for (std::size_t i = 0; i < k; ++i)
        seed.emplace_back(static_cast<Elem>(rng() % s.size()), static_cast<Elem>(rng() % s.size()));
      const auto meet = oracle::meet_containing(lawful, seed);
      const bool minimum =
          meet && std::find(lawful.begin(), lawful.end(), *meet) != lawful.end();
      const auto result = close(LawTag::compatible, c.structure, seed);
      ++cases;
      if (!minimum || result.partition.labels() != *meet) {
        o.pass = false;
        o.detail = "mismatch on " + c.name + "; ";
      }
    }
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 30.0;
  o.detail += std::to_string(cases) + " seeds in " + std::to_string(t) + "s";
  return o;
}

// 4. Congruence closure equals the exhaustive minimum for every seed pair.
Outcome congruence_closure() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t cases = 0;
  for (const auto& c : fixtures::small_groupoids(8)) {
    const auto& g = *c.structure;
    const auto lawful = oracle::all_partitions(oracle::Law::congruence, g);
    for (Elem x = 0; x < g.size(); ++x)
      for (Elem y = 0; y < g.size(); ++y) {
        const std::vector<ElemPair> seed{{x, y}};
        const auto meet = oracle::meet_containing(lawful, seed);
        const bool minimum =
            meet && std::find(lawful.begin(), lawful.end(), *meet) != lawful.end();
        const auto result = close(LawTag::congruence, c.structure, seed);
        ++cases;
        if (!minimum || result.partition.labels() != *meet) {
          o.pass = false;
          o.detail = "mismatch on " + c.name + " at (" + g.name(x) + "," + g.name(y) + "); ";
        }
      }
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 60.0;
  o.detail += std::to_string(cases) + " seed pairs in " + std::to_string(t) + "s";
  return o;
}

// 5. Index of the congruence spread from a normal subgroup.
Outcome index_formula() {
  Outcome o;
  std::size_t cases = 0;
  for (const char* h : {"z2", "z4", "z6", "s3"}) {
    const auto table = fixtures::group_table(h);
    for (int k = 1; k <= 3; ++k) {
      const auto g = share(fixtures::connected_groupoid(k, table));
      const Elem x = g->vertices().front();
      for (const auto& n : oracle::subgroups(*g, x)) {
        if (!oracle::normal(*g, x, n)) continue;
        ++cases;
        const auto rho = rho_from_subgroup(g, x, n);
        const std::size_t expected =
            static_cast<std::size_t>(k * k) * (static_cast<std::size_t>(table.order()) / n.size());
        if (rho.index() != expected) {
          o.pass = false;
          o.detail = std::string("C(") + std::to_string(k) + "," + h + ") mismatch; ";
        }
      }
    }
  }
  o.detail += std::to_string(cases) + " (k, H, N) cases";
  return o;
}

// 6. Triple lifting decides whether the quotient table is a groupoid.
Outcome condition3_gate() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& c : fixtures::small_groupoids(8))
    for (const auto& p : congruences(c.structure)) {
      ++cases;
      const bool holds = condition3_check(p).holds;
      if (holds != validate(groupoid_quotient_table(p)).ok() ||
          holds != oracle::quotient_is_groupoid(*c.structure, p.labels())) {
        o.pass = false;
        o.detail = "disagreement on " + c.name + "; ";
      }
    }
  const auto pg = share(fixtures::pair_groupoid(2));
  const auto merged =
      Partition::from_classes(pg, {{pg->id("a"), pg->id("b")}});
  const auto result = condition3_check(merged);
  const bool witness_ok = !result.holds && result.witness &&
                          *result.witness == std::array<std::string, 3>{"ab", "ab", "ba"};
  o.pass = o.pass && witness_ok;
  o.detail += std::to_string(cases) + " congruences; a~b witness " +
              (witness_ok ? "(ab,ab,ba)" : "missing");
  return o;
}

// 7. Rigid base on vertex-separating congruence filter bases.
Outcome rigid_base_check() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::size_t cases = 0, refused = 0;
  for (const auto& c : fixtures::small_groupoids(8)) {
    const auto all = congruences(c.structure);
    for (int trial = 0; trial < 40; ++trial) {
      FilterBase base{c.structure, LawTag::congruence, {}};
      const std::size_t k = 1 + rng() % 3;
      for (std::size_t i = 0; i < k; ++i) base.members.push_back(all[rng() % all.size()]);
      base = meet_closure(base);
      if (!separates_vertices(*c.structure, base.members)) {
        try {
          rigid_base(base);
          o.pass = false;
          o.detail = "inseparable family accepted on " + c.name + "; ";
        } catch (const Error& e) {
          if (e.code() != Errc::vertices_inseparable) o.pass = false;
          ++refused;
        }
        continue;
      }
      ++cases;
      const auto out = rigid_base(base);
      bool ok = out.members.size() == base.members.size() && is_filter_base(out).pass;
      for (std::size_t i = 0; ok && i < out.members.size(); ++i)
        ok = is_rigid(out.members[i]) && out.members[i].refines(base.members[i]);
      if (!ok) {
        o.pass = false;
        o.detail = "bad output on " + c.name + "; ";
      }
    }
  }
  o.detail += std::to_string(cases) + " separating bases, " + std::to_string(refused) +
              " inseparable refused";
  return o;
}

// 8. Discrete quotients of the two z-line systems.
Outcome discrete_quotients() {
  Outcome o;
  std::ostringstream detail;
  for (auto mode : {ZLineMode::arcs, ZLineMode::circles}) {
    const auto sys = zline_system(mode, 4);
    detail << (mode == ZLineMode::arcs ? "arcs" : "circles");
    for (int n = 1; n <= 4; ++n) {
      const auto report = discrete_quotient_check(sys, n, 4);
      const std::size_t expected = mode == ZLineMode::arcs ? 4 * n + 1 : 4 * n;
      const bool ok = report.isomorphic && report.extended_classes == expected &&
                      report.level_size == expected;
      o.pass = o.pass && ok;
      detail << " " << report.extended_classes << (ok ? "" : "!");
    }
    detail << "; ";
  }
  o.detail = detail.str();
  return o;
}

// 9. kernel(quotient(R).nu) = R.
Outcome kernel_roundtrip() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::size_t cases = 0, fixtures_seen = 0;
  for (const auto& c : fixtures::small_carriers(9)) {
    ++fixtures_seen;
    const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
    for (int trial = 0; trial < 200; ++trial) {
      const auto r = from_labels(c.structure, lawful[rng() % lawful.size()]);
      ++cases;
      if (!(kernel(quotient(r, LawTag::compatible).nu) == r)) {
        o.pass = false;
        o.detail = "mismatch on " + c.name + "; ";
      }
    }
  }
  o.detail += std::to_string(cases) + " partitions over " + std::to_string(fixtures_seen) +
              " fixtures";
  return o;
}

// 10. Hausdorff iff every element is certified, under meet closure.
Outcome hausdorff_criterion() {
  Outcome o;
  std::mt19937_64 rng(1010);
  std::size_t cases = 0;
  for (const auto& c : fixtures::small_carriers(5)) {
    const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
    for (int trial = 0; trial < 100; ++trial) {
      FilterBase base{c.structure, LawTag::compatible, {}};
      std::vector<oracle::Labels> raw;
      const std::size_t k = 1 + rng() % 4;
      for (std::size_t i = 0; i < k; ++i) {
        raw.push_back(lawful[rng() % lawful.size()]);
        base.members.push_back(from_labels(c.structure, raw.back()));
      }
      const auto closed = meet_closure(base);
      const auto cert = discreteness_certificate(closed);
      const bool all = std::all_of(cert.begin(), cert.end(), [](bool b) { return b; });
      const bool h = is_hausdorff(closed);
      ++cases;
      if (!is_filter_base(closed).pass || h != all ||
          h != oracle::pairwise_separated(raw, c.structure->size())) {
        o.pass = false;
        o.detail = "disagreement on " + c.name + "; ";
      }
    }
  }
  o.detail += std::to_string(cases) + " sampled filter bases";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"flagship ends census", flagship},
      {"separation versus ends", separation_vs_ends},
      {"compatible closure minimality", closure_minimality},
      {"congruence closure oracle", congruence_closure},
      {"index formula", index_formula},
      {"triple-lifting gate", condition3_gate},
      {"rigid base", rigid_base_check},
      {"discrete quotients", discrete_quotients},
      {"kernel/quotient round-trip", kernel_roundtrip},
      {"Hausdorff criterion", hausdorff_criterion},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << "\n";
  }
  return failed == 0 ? 0 : 1;
}
