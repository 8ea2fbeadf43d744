#include "cofinex/verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>
#include <set>

#include "cofinex/error.hpp"
#include "cofinex/fixtures.hpp"
#include "cofinex/groupoid.hpp"
#include "cofinex/io.hpp"
#include "cofinex/oracle.hpp"

namespace cofinex::verify {

namespace {

using oracle::Labels;
using fixtures::Named;

/// FNV-1a, so per-property streams do not depend on the standard library.
std::uint64_t mix(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Recorder {
 public:
  Recorder(std::string suite, std::string name, std::uint64_t seed)
      : rng_(mix(seed, name)) {
    p_.suite = std::move(suite);
    p_.name = std::move(name);
  }

  std::mt19937_64& rng() { return rng_; }

  void expect(bool ok, const std::function<std::vector<std::string>()>& witness) {
    ++p_.cases;
    if (!ok && p_.pass) {
      p_.pass = false;
      p_.witness = witness();
    }
  }

  /// Runs `body`; an escaping exception is a failure of the property.
  Property run(const std::function<void(Recorder&)>& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      if (p_.pass) {
        p_.pass = false;
        p_.witness = {std::string("exception: ") + e.what()};
      }
    }
    return p_;
  }

 private:
  Property p_;
  std::mt19937_64 rng_;
};

Partition to_partition(const StructurePtr& s, const Labels& r) {
  std::vector<std::uint64_t> labels(r.begin(), r.end());
  return Partition::from_labels(s, labels);
}

std::string show(const Partition& p) { return io::to_json(p).dump(); }

std::string show(const FiniteStructure& s, const Labels& r) {
  return show(to_partition(share(s), r));
}

std::string show_seed(const FiniteStructure& s, const std::vector<ElemPair>& seed) {
  std::string out = "{";
  for (std::size_t i = 0; i < seed.size(); ++i)
    out += (i ? ", (" : "(") + s.name(seed[i].first) + "," + s.name(seed[i].second) + ")";
  return out + "}";
}

std::vector<ElemPair> random_seed(std::mt19937_64& rng, std::size_t n) {
  std::vector<ElemPair> seed;
  if (n == 0) return seed;
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  const int count = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < count; ++i) seed.emplace_back(pick(rng), pick(rng));
  return seed;
}

template <class T>
const T& choose(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t brute_cap(std::size_t max_size) { return std::min<std::size_t>(max_size, 8); }

std::vector<Named> of_kind(const std::vector<Named>& all, Kind kind) {
  std::vector<Named> out;
  for (const auto& c : all)
    if (c.structure->kind() == kind) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// core

std::vector<Property> core_suite(std::size_t max_size, std::uint64_t seed, Fault fault) {
  const auto carriers = fixtures::small_carriers(max_size);
  const auto brute = fixtures::small_carriers(brute_cap(max_size));
  std::vector<Property> out;
  auto add = [&](const char* name, const std::function<void(Recorder&)>& body) {
    out.push_back(Recorder("core", name, seed).run(body));
  };

  add("fixtures validate", [&](Recorder& rec) {
    for (const auto& c : carriers) {
      const auto report = validate(*c.structure);
      rec.expect(report.ok(), [&] {
        return std::vector<std::string>{c.name, report.violations.front().describe()};
      });
    }
    for (int i = 0; i < 50; ++i) {
      auto s = fixtures::random_digraph(rec.rng(), max_size);
      rec.expect(validate(s).ok(), [&] { return std::vector<std::string>{"random digraph"}; });
    }
  });

  add("json round-trip", [&](Recorder& rec) {
    for (const auto& c : carriers) {
      const auto text = io::canonical(io::to_json(*c.structure));
      const auto again = io::canonical(io::to_json(io::structure_from_json(io::parse(text))));
      rec.expect(text == again, [&] { return std::vector<std::string>{c.name}; });
    }
  });

  add("corruptions are reported with genuine witnesses", [&](Recorder& rec) {
    for (const auto& c : carriers) {
      const FiniteStructure& s = *c.structure;
      const auto edges = s.edges();
      if (edges.empty()) continue;
      const Elem e = edges.front();
      auto src = s.src_table();
      src[e] = e;
      FiniteStructure bad(s.kind(), s.names(), s.vertex_flags(), src, s.tgt_table(),
                          s.inv_table(), s.mul_table());
      const auto report = validate(bad);
      bool genuine = report.has(ViolationKind::SourceNotVertex);
      for (const auto& v : report.violations)
        if (v.kind == ViolationKind::SourceNotVertex)
          genuine = genuine && !v.witness.empty() && !bad.is_vertex(bad.src(bad.id(v.witness[0])));
      rec.expect(genuine, [&] { return std::vector<std::string>{c.name, s.name(e)}; });

      if (s.kind() == Kind::groupoid) {
        auto mul = s.mul_table();
        mul[e * s.size() + s.inv(e)] = kNoElem;
        FiniteStructure holey(s.kind(), s.names(), s.vertex_flags(), s.src_table(),
                              s.tgt_table(), s.inv_table(), mul);
        rec.expect(validate(holey).has(ViolationKind::PartialProductDomain),
                   [&] { return std::vector<std::string>{c.name, "product hole"}; });
      }
      if (s.kind() == Kind::graph) {
        auto inv = s.inv_table();
        inv[e] = e;
        FiniteStructure fixed(s.kind(), s.names(), s.vertex_flags(), s.src_table(),
                              s.tgt_table(), inv, {});
        rec.expect(validate(fixed).has(ViolationKind::FixedEdge),
                   [&] { return std::vector<std::string>{c.name, "fixed edge"}; });
      }
    }
  });

  add("products and projections", [&](Recorder& rec) {
    for (const auto& a : carriers)
      for (const auto& b : carriers) {
        if (a.structure->kind() != b.structure->kind()) continue;
        if (a.structure->size() * b.structure->size() > 36) continue;
        auto p = share(product(*a.structure, *b.structure));
        const auto laws = MapLaws::for_kind(p->kind());
        bool ok = p->size() == a.structure->size() * b.structure->size() &&
                  p->vertex_count() == a.structure->vertex_count() * b.structure->vertex_count() &&
                  validate(*p).ok();
        for (int which : {0, 1}) {
          auto f = product_projection(a.structure, b.structure, p, which);
          ok = ok && f.laws == laws && validate_map(f).ok();
        }
        rec.expect(ok, [&] { return std::vector<std::string>{a.name, b.name}; });
      }
  });

  add("generated substructure is idempotent and monotone", [&](Recorder& rec) {
    for (const auto& c : carriers) {
      const FiniteStructure& s = *c.structure;
      if (s.empty()) continue;
      for (int i = 0; i < 10; ++i) {
        std::vector<Elem> small;
        for (auto [x, y] : random_seed(rec.rng(), s.size())) small.push_back(x);
        std::vector<Elem> large = small;
        large.push_back(std::uniform_int_distribution<Elem>(0, s.size() - 1)(rec.rng()));
        const auto once = generated_closure(s, small);
        const auto twice = generated_closure(s, once);
        const auto bigger = generated_closure(s, large);
        const bool ok = once == twice &&
                        std::includes(bigger.begin(), bigger.end(), once.begin(), once.end());
        rec.expect(ok, [&] { return std::vector<std::string>{c.name}; });
      }
    }
  });

  add("check agrees with the oracle", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& s = *c.structure;
      oracle::for_each_partition(s.size(), [&](const Labels& r) {
        const auto p = to_partition(c.structure, r);
        auto same = [&](LawTag law, oracle::Law olaw) {
          rec.expect(check(law, p).pass == oracle::satisfies(olaw, s, r), [&] {
            return std::vector<std::string>{c.name, std::string(to_string(law)), show(p)};
          });
        };
        same(LawTag::compatible, oracle::Law::compatible);
        if (s.kind() == Kind::graph) same(LawTag::graph_equivalence, oracle::Law::graph_equivalence);
        if (s.kind() == Kind::groupoid) same(LawTag::congruence, oracle::Law::congruence);
        return true;
      });
    }
  });

  add("compatible closure is minimal", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& s = *c.structure;
      if (s.empty()) continue;
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
      for (int i = 0; i < 20; ++i) {
        const auto seed_pairs = random_seed(rec.rng(), s.size());
        const auto got = close(LawTag::compatible, c.structure, seed_pairs);
        const auto want = oracle::meet_containing(lawful, seed_pairs);
        rec.expect(want && got.partition.labels() == *want, [&] {
          return std::vector<std::string>{c.name, show_seed(s, seed_pairs), show(got.partition),
                                          want ? show(s, *want) : "none"};
        });
      }
    }
  });

  add("graph-equivalence closure is minimal, side condition reported", [&](Recorder& rec) {
    for (const auto& c : of_kind(brute, Kind::graph)) {
      const FiniteStructure& s = *c.structure;
      std::vector<Labels> lawful;
      oracle::for_each_partition(s.size(), [&](const Labels& r) {
        if (oracle::compatible(s, r) && oracle::inverse_closed(s, r)) lawful.push_back(r);
        return true;
      });
      for (Elem x = 0; x < s.size(); ++x)
        for (Elem y = x + 1; y < s.size(); ++y) {
          const std::vector<ElemPair> seed_pairs{{x, y}};
          const auto got = close(LawTag::graph_equivalence, c.structure, seed_pairs);
          const auto want = oracle::meet_containing(lawful, seed_pairs);
          const bool ok = want && got.partition.labels() == *want &&
                          got.valid == oracle::graph_equivalence(s, *want);
          rec.expect(ok, [&] {
            return std::vector<std::string>{c.name, show_seed(s, seed_pairs), show(got.partition)};
          });
        }
    }
  });

  add("congruence closure is minimal", [&](Recorder& rec) {
    const detail::ClosureRules rules{true, true, fault != Fault::skip_product_closure};
    auto one = [&](const Named& c, const std::vector<Labels>& lawful,
                   const std::vector<ElemPair>& seed_pairs) {
      const auto got = detail::close_with(LawTag::congruence, c.structure, seed_pairs, rules);
      const auto want = oracle::meet_containing(lawful, seed_pairs);
      rec.expect(want && got.partition.labels() == *want, [&] {
        return std::vector<std::string>{c.name, show_seed(*c.structure, seed_pairs),
                                        show(got.partition), want ? show(*c.structure, *want) : "none"};
      });
    };
    if (max_size >= 4) {
      Named z4{"cyclic(4)", share(fixtures::cyclic(4))};
      one(z4, oracle::all_partitions(oracle::Law::congruence, *z4.structure),
          {{z4.structure->id("1"), z4.structure->id("3")}});
    }
    for (const auto& c : fixtures::small_groupoids(brute_cap(max_size))) {
      const FiniteStructure& s = *c.structure;
      const auto lawful = oracle::all_partitions(oracle::Law::congruence, s);
      for (Elem x = 0; x < s.size(); ++x)
        for (Elem y = x + 1; y < s.size(); ++y) one(c, lawful, {{x, y}});
      for (int i = 0; i < 5; ++i) one(c, lawful, random_seed(rec.rng(), s.size()));
    }
  });

  add("kernel of the natural map recovers the relation", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
      for (int i = 0; i < 20; ++i) {
        const auto r = to_partition(c.structure, choose(rec.rng(), lawful));
        const auto q = quotient(r, LawTag::compatible);
        rec.expect(kernel(q.nu) == r && validate(*q.structure).ok() && validate_map(q.nu).ok(),
                   [&] { return std::vector<std::string>{c.name, show(r)}; });
      }
    }
  });

  add("first isomorphism theorem", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
      for (int i = 0; i < 5; ++i) {
        const auto r = to_partition(c.structure, choose(rec.rng(), lawful));
        const auto iso = first_isomorphism(quotient(r, LawTag::compatible).nu);
        rec.expect(iso.injective && iso.isomorphism && iso.triangle_commutes && iso.kernel == r,
                   [&] { return std::vector<std::string>{c.name, show(r)}; });
      }
    }
  });

  add("intersection preserves each law", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& s = *c.structure;
      std::vector<std::pair<LawTag, oracle::Law>> laws{{LawTag::compatible, oracle::Law::compatible}};
      if (s.kind() == Kind::graph)
        laws.emplace_back(LawTag::graph_equivalence, oracle::Law::graph_equivalence);
      if (s.kind() == Kind::groupoid) laws.emplace_back(LawTag::congruence, oracle::Law::congruence);
      for (auto [law, olaw] : laws) {
        const auto lawful = oracle::all_partitions(olaw, s);
        for (int i = 0; i < 10; ++i) {
          const auto a = to_partition(c.structure, choose(rec.rng(), lawful));
          const auto b = to_partition(c.structure, choose(rec.rng(), lawful));
          const auto m = intersect(a, b);
          const bool ok = check(law, m).pass && oracle::satisfies(olaw, s, m.labels()) &&
                          m.refines(a) && m.refines(b) && m.index() <= a.index() * b.index();
          rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(a), show(b)}; });
        }
      }
    }
  });

  add("induced bondings compose", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
      for (int i = 0; i < 10; ++i) {
        const auto r = to_partition(c.structure, choose(rec.rng(), lawful));
        const auto s = intersect(r, to_partition(c.structure, choose(rec.rng(), lawful)));
        const auto t = intersect(s, to_partition(c.structure, choose(rec.rng(), lawful)));
        const auto rs = induced_bonding(r, s), st = induced_bonding(s, t), rt = induced_bonding(r, t);
        const auto rr = induced_bonding(r, r);
        bool identity = true;
        for (Elem x = 0; x < rr.domain->size(); ++x) identity = identity && rr(x) == x;
        const bool ok = compose(rs, st).table == rt.table && identity && validate_map(rt).ok();
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(r), show(s), show(t)}; });
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// cofinite

bool brute_filter_base(const std::vector<Labels>& members, std::size_t n) {
  for (const auto& a : members)
    for (const auto& b : members) {
      bool found = false;
      for (const auto& c : members) {
        bool refines = true;
        for (std::size_t x = 0; x < n && refines; ++x)
          for (std::size_t y = 0; y < n && refines; ++y)
            if (c[x] == c[y] && (a[x] != a[y] || b[x] != b[y])) refines = false;
        if (refines) found = true;
      }
      if (!found) return false;
    }
  return true;
}

std::vector<Property> cofinite_suite(std::size_t max_size, std::uint64_t seed) {
  const auto digraphs = of_kind(fixtures::small_carriers(max_size), Kind::digraph);
  const auto small = fixtures::small_carriers(std::min<std::size_t>(max_size, 5));
  std::vector<Property> out;
  auto add = [&](const char* name, const std::function<void(Recorder&)>& body) {
    out.push_back(Recorder("cofinite", name, seed).run(body));
  };

  add("separating congruences isolate their element", [&](Recorder& rec) {
    std::vector<Named> cases = digraphs;
    for (int i = 0; i < 30; ++i)
      cases.push_back({"random digraph", share(fixtures::random_digraph(rec.rng(), max_size))});
    for (const auto& c : cases) {
      const FiniteStructure& s = *c.structure;
      for (Elem y = 0; y < s.size(); ++y) {
        const auto p = separating_congruence(c.structure, y);
        const bool bound = s.is_vertex(y) ? p.index() <= 6 : (s.size() < 2 || p.index() == 2);
        const bool ok = p.members(p.class_of(y)).size() == 1 && bound &&
                        oracle::compatible(s, p.labels());
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, s.name(y), show(p)}; });
      }
      FilterBase family{c.structure, LawTag::compatible, separating_family(c.structure)};
      const auto cert = discreteness_certificate(family);
      rec.expect(is_hausdorff(family) &&
                     std::all_of(cert.begin(), cert.end(), [](bool b) { return b; }),
                 [&] { return std::vector<std::string>{c.name, "separating family"}; });
    }
  });

  add("compatible interior is the largest compatible refinement", [&](Recorder& rec) {
    for (const auto& c : of_kind(fixtures::small_carriers(std::min<std::size_t>(max_size, 6)),
                                 Kind::digraph)) {
      const FiniteStructure& s = *c.structure;
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
      oracle::for_each_partition(s.size(), [&](const Labels& r) {
        const auto p = to_partition(c.structure, r);
        const auto in = compatible_interior(p);
        bool largest = true;
        for (const auto& l : lawful) {
          const auto q = to_partition(c.structure, l);
          if (q.refines(p) && !q.refines(in)) largest = false;
        }
        const bool ok = in.refines(p) && oracle::compatible(s, in.labels()) &&
                        compatible_interior(in) == in && largest &&
                        (!oracle::compatible(s, r) || in == p);
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(p), show(in)}; });
        return true;
      });
    }
  });

  add("filter-base check agrees with the oracle", [&](Recorder& rec) {
    for (const auto& c : small) {
      const FiniteStructure& s = *c.structure;
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
      for (int i = 0; i < 40; ++i) {
        const int k = std::uniform_int_distribution<int>(1, 3)(rec.rng());
        std::vector<Labels> members;
        FilterBase fb{c.structure, LawTag::compatible, {}};
        for (int j = 0; j < k; ++j) {
          members.push_back(choose(rec.rng(), lawful));
          fb.members.push_back(to_partition(c.structure, members.back()));
        }
        rec.expect(is_filter_base(fb).pass == brute_filter_base(members, s.size()),
                   [&] { return std::vector<std::string>{c.name}; });
      }
    }
  });

  add("hausdorff iff every element is separated", [&](Recorder& rec) {
    for (const auto& c : small) {
      const FiniteStructure& s = *c.structure;
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, s);
      for (int i = 0; i < 40; ++i) {
        const int k = std::uniform_int_distribution<int>(1, 4)(rec.rng());
        std::vector<Labels> members;
        FilterBase fb{c.structure, LawTag::compatible, {}};
        for (int j = 0; j < k; ++j) {
          members.push_back(choose(rec.rng(), lawful));
          fb.members.push_back(to_partition(c.structure, members.back()));
        }
        const auto closed = meet_closure(fb);
        const auto cert = discreteness_certificate(closed);
        const bool all = std::all_of(cert.begin(), cert.end(), [](bool b) { return b; });
        const bool h = is_hausdorff(closed);
        rec.expect(is_filter_base(closed).pass && h == all &&
                       h == oracle::pairwise_separated(members, s.size()),
                   [&] { return std::vector<std::string>{c.name, std::to_string(k) + " members"}; });
      }
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// completion

std::vector<Property> completion_suite(std::size_t max_size, std::uint64_t seed) {
  std::vector<Property> out;
  auto add = [&](const char* name, const std::function<void(Recorder&)>& body) {
    out.push_back(Recorder("completion", name, seed).run(body));
  };
  const int top = static_cast<int>(std::clamp<std::size_t>(max_size, 4, 8));
  const std::array<std::pair<const char*, ZLineMode>, 2> modes{
      {{"zline-circles", ZLineMode::circles}, {"zline-arcs", ZLineMode::arcs}}};

  add("z-line systems validate", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, top);
      const auto failures = validate_system(sys, default_window(top));
      rec.expect(failures.empty(), [&] {
        return std::vector<std::string>{name, failures.front().rule};
      });
      // Send a vertex of the finest level to an edge.
      auto broken = sys;
      auto& f = broken.bondings.back();
      f.table[f.domain->vertices().front()] = f.codomain->edges().front();
      rec.expect(!validate_system(broken, default_window(top)).empty(),
                 [&] { return std::vector<std::string>{name, "corrupted bonding accepted"}; });
    }
  });

  add("z-line ends match the integer model", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, top);
      for (int depth = 1; depth <= top; ++depth) {
        const auto got = count_new_points(sys, depth);
        const auto want =
            oracle::zline_census(mode == ZLineMode::circles, depth, default_window(depth));
        // A single level offers no transition to certify.
        const bool status_ok = depth == 1 ? got.status == EndStatus::unknown
                                          : got.status == EndStatus::exact && got.ends == want.ends;
        rec.expect(status_ok && got.per_level == want.per_level,
                   [&] {
                     return std::vector<std::string>{name, "depth " + std::to_string(depth),
                                                     got.status_text()};
                   });
      }
    }
  });

  add("exact end counts are stable past stabilization", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, top);
      const auto deep = count_new_points(sys, top);
      if (deep.status != EndStatus::exact || !deep.stabilization) continue;
      for (int d = *deep.stabilization + 1; d <= top; ++d) {
        const auto r = count_new_points(sys, d);
        rec.expect(r.status == EndStatus::exact && r.ends == deep.ends,
                   [&] { return std::vector<std::string>{name, std::to_string(d)}; });
      }
    }
  });

  add("level embeddings commute with bondings", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, top);
      const int w = default_window(top);
      for (const auto& a : sys.base->window(w))
        for (std::size_t j = 0; j < sys.levels.size(); ++j)
          for (std::size_t i = 0; i <= j; ++i) {
            const Elem fine = level_embed(sys, a, sys.labels[j], w);
            const Elem coarse = level_embed(sys, a, sys.labels[i], w);
            rec.expect(sys.bonding(i, j)(fine) == coarse, [&] {
              return std::vector<std::string>{name, a, std::to_string(sys.labels[i]),
                                              std::to_string(sys.labels[j])};
            });
          }
    }
  });

  add("discrete quotients reproduce the levels", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, top);
      const auto model = oracle::zline_census(mode == ZLineMode::circles, top, default_window(top));
      for (int n = 1; n <= top; ++n) {
        const auto r = discrete_quotient_check(sys, n, top);
        rec.expect(r.isomorphic && r.extended_classes == model.level_sizes[n - 1], [&] {
          return std::vector<std::string>{name, std::to_string(n),
                                          std::to_string(r.extended_classes)};
        });
      }
    }
  });

  add("finite Hausdorff bases add no points", [&](Recorder& rec) {
    for (const auto& c : of_kind(fixtures::small_carriers(std::min<std::size_t>(max_size, 6)),
                                 Kind::digraph)) {
      if (c.structure->empty()) continue;
      const auto lawful = oracle::all_partitions(oracle::Law::compatible, *c.structure);
      for (int i = 0; i < 5; ++i) {
        const auto r = to_partition(c.structure, choose(rec.rng(), lawful));
        FilterBase chain{c.structure, LawTag::compatible,
                         {Partition::full(c.structure), r, Partition::discrete(c.structure)}};
        const auto sys = system_from_filterbase(chain);
        const int depth = sys.labels.back();
        const auto ends = count_new_points(sys, depth);
        const auto dq = discrete_quotient_check(sys, depth, depth);
        const bool ok = validate_system(sys, 0).empty() && ends.status == EndStatus::exact &&
                        ends.ends == 0 && dq.isomorphic && dq.level_size == c.structure->size();
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(r)}; });
      }
    }
  });

  add("both z-line systems separate the window", [&](Recorder& rec) {
    for (auto [name, mode] : modes) {
      const auto sys = zline_system(mode, 7);
      const auto sep = window_separation(sys, 6, 7);
      for (std::size_t i = 0; i < sep.size(); ++i)
        rec.expect(sep[i].has_value(), [&] {
          return std::vector<std::string>{name, sys.base->window(6)[i]};
        });
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// groupoid

std::vector<std::pair<Elem, std::vector<std::vector<Elem>>>> normal_choices(
    const FiniteStructure& g) {
  std::vector<std::pair<Elem, std::vector<std::vector<Elem>>>> out;
  std::set<Elem> covered;
  for (Elem x : g.vertices()) {
    if (covered.count(x)) continue;
    for (Elem y : component_vertices(g, x)) covered.insert(y);
    std::vector<std::vector<Elem>> normals;
    for (auto& n : oracle::subgroups(g, x))
      if (oracle::normal(g, x, n)) normals.push_back(n);
    out.emplace_back(x, std::move(normals));
  }
  return out;
}

/// All choices of one normal subgroup per component, capped.
std::vector<std::vector<std::pair<Elem, std::vector<Elem>>>> subgroup_assignments(
    const FiniteStructure& g, std::size_t cap = 64) {
  std::vector<std::vector<std::pair<Elem, std::vector<Elem>>>> out{{}};
  for (const auto& [x, normals] : normal_choices(g)) {
    std::vector<std::vector<std::pair<Elem, std::vector<Elem>>>> next;
    for (const auto& partial : out)
      for (const auto& n : normals) {
        if (next.size() >= cap) break;
        auto extended = partial;
        extended.emplace_back(x, n);
        next.push_back(std::move(extended));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Property> groupoid_suite(std::size_t max_size, std::uint64_t seed) {
  const auto groupoids = fixtures::small_groupoids(std::max<std::size_t>(max_size, 8) * 2);
  const auto brute = fixtures::small_groupoids(brute_cap(max_size));
  std::vector<Property> out;
  auto add = [&](const char* name, const std::function<void(Recorder&)>& body) {
    out.push_back(Recorder("groupoid", name, seed).run(body));
  };

  add("rigid congruences and coherent families correspond", [&](Recorder& rec) {
    for (const auto& c : groupoids) {
      for (const auto& bases : subgroup_assignments(*c.structure)) {
        const auto rho = rho_from_subgroups(c.structure, bases);
        const auto family = coherent_from_rigid(rho);
        const auto again = rigid_from_coherent(family);
        bool ok = again.partition() == rho.partition();
        for (const auto& [x, n] : bases) ok = ok && family.subgroups.at(x) == n;
        std::map<Elem, std::vector<Elem>> spread(family.subgroups.begin(), family.subgroups.end());
        ok = ok && oracle::rigid_index(*c.structure, spread) == rho.index();
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(rho.partition())}; });
      }
    }
  });

  add("index is |V|^2 times the subgroup index", [&](Recorder& rec) {
    for (const auto& c : groupoids) {
      const FiniteStructure& g = *c.structure;
      if (!is_connected(g) || g.empty()) continue;
      const Elem x = g.vertices().front();
      const std::size_t v = g.vertex_count();
      const std::size_t order = hom_set(g, x, x).size();
      for (const auto& n : oracle::subgroups(g, x)) {
        if (!oracle::normal(g, x, n)) continue;
        const auto rho = rho_from_subgroup(c.structure, x, n);
        rec.expect(rho.index() == v * v * (order / n.size()), [&] {
          return std::vector<std::string>{c.name, std::to_string(rho.index())};
        });
      }
    }
  });

  add("triple lifting decides whether the quotient is a groupoid", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& g = *c.structure;
      for (const auto& r : oracle::all_partitions(oracle::Law::congruence, g)) {
        const auto rho = to_partition(c.structure, r);
        const bool holds = condition3_check(rho).holds;
        const bool table_ok = validate(groupoid_quotient_table(rho)).ok();
        bool built = false;
        try {
          built = validate(*quotient(rho, LawTag::congruence).structure).ok();
        } catch (const Error& e) {
          if (e.code() != Errc::quotient_product_undefined) throw;
        }
        const bool ok = holds == oracle::triples_lift(g, r) && holds == table_ok &&
                        holds == oracle::quotient_is_groupoid(g, r) && holds == built;
        rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(rho)}; });
      }
    }
  });

  add("vertex classes are normal subgroups", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& g = *c.structure;
      for (const auto& r : oracle::all_partitions(oracle::Law::congruence, g))
        for (Elem x : g.vertices()) {
          std::vector<Elem> n;
          for (Elem a : hom_set(g, x, x))
            if (r[a] == r[x]) n.push_back(a);
          const bool ok = is_normal_subgroup(g, x, n) && oracle::normal(g, x, n);
          rec.expect(ok, [&] { return std::vector<std::string>{c.name, show(g, r), g.name(x)}; });
        }
    }
  });

  add("rigid quotients keep the vertices", [&](Recorder& rec) {
    for (const auto& c : groupoids)
      for (const auto& bases : subgroup_assignments(*c.structure, 8)) {
        const auto rho = rho_from_subgroups(c.structure, bases);
        const auto q = quotient(rho.partition(), LawTag::congruence);
        rec.expect(condition3_check(rho.partition()).holds &&
                       q.structure->vertex_count() == c.structure->vertex_count() &&
                       validate(*q.structure).ok(),
                   [&] { return std::vector<std::string>{c.name, show(rho.partition())}; });
      }
  });

  add("rigid base outputs rigid refinements", [&](Recorder& rec) {
    for (const auto& c : brute) {
      const FiniteStructure& g = *c.structure;
      const auto lawful = oracle::all_partitions(oracle::Law::congruence, g);
      for (int i = 0; i < 20; ++i) {
        FilterBase fb{c.structure, LawTag::congruence, {}};
        const int k = std::uniform_int_distribution<int>(1, 3)(rec.rng());
        for (int j = 0; j < k; ++j) fb.members.push_back(to_partition(c.structure, choose(rec.rng(), lawful)));
        fb = meet_closure(fb);
        bool separating = true;
        for (Elem x : g.vertices()) {
          bool some = false;
          for (const auto& m : fb.members) {
            bool alone = true;
            for (Elem y : g.vertices())
              if (y != x && m.related(x, y)) alone = false;
            some = some || alone;
          }
          separating = separating && some;
        }
        if (!separating) {
          bool threw = false;
          try {
            rigid_base(fb);
          } catch (const Error& e) {
            threw = e.code() == Errc::vertices_inseparable && e.witness().size() == 2;
          }
          rec.expect(threw, [&] { return std::vector<std::string>{c.name, "no VerticesInseparable"}; });
          continue;
        }
        const auto out_base = rigid_base(fb);
        bool ok = out_base.members.size() == fb.members.size() && is_filter_base(out_base).pass &&
                  openness_shadow(out_base);
        for (std::size_t j = 0; j < out_base.members.size(); ++j)
          ok = ok && is_rigid(out_base.members[j]) && out_base.members[j].refines(fb.members[j]);
        rec.expect(ok, [&] { return std::vector<std::string>{c.name}; });
      }
    }
  });

  add("profinite groupoid systems validate", [&](Recorder& rec) {
    for (const auto& c : groupoids) {
      const FiniteStructure& g = *c.structure;
      if (!is_connected(g) || g.empty()) continue;
      const Elem x = g.vertices().front();
      std::vector<std::vector<Elem>> normals;
      for (const auto& n : oracle::subgroups(g, x))
        if (oracle::normal(g, x, n)) normals.push_back(n);
      // A maximal chain G(x,x) = N_0 > N_1 > ... > {x} through containment.
      std::sort(normals.begin(), normals.end(),
                [](const auto& a, const auto& b) { return a.size() > b.size(); });
      std::vector<RigidCongruence> chain;
      std::vector<Elem> last;
      for (const auto& n : normals)
        if (last.empty() || std::includes(last.begin(), last.end(), n.begin(), n.end())) {
          chain.push_back(rho_from_subgroup(c.structure, x, n));
          last = n;
        }
      const auto sys = profinite_groupoid_system(c.structure, chain);
      bool ok = validate_system(sys, 0).empty() && sys.levels.size() == chain.size();
      for (std::size_t i = 0; i < chain.size(); ++i)
        ok = ok && sys.levels[i]->size() == chain[i].index() && validate(*sys.levels[i]).ok();
      rec.expect(ok, [&] { return std::vector<std::string>{c.name}; });
    }
  });
  return out;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const Property& p) { return p.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"core", "cofinite", "completion", "groupoid", "all"};
  return names;
}

SuiteReport run_verify(std::string_view suite, std::size_t max_size, std::uint64_t seed,
                       Fault fault) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error(Errc::bad_parameter, "unknown suite", {std::string(suite)});
  SuiteReport report{std::string(suite), max_size, seed, {}};
  const bool all = suite == "all";

  // Groups run concurrently; the report keeps the fixed suite order.
  std::vector<std::future<std::vector<Property>>> groups;
  if (all || suite == "core")
    groups.push_back(std::async(std::launch::async, core_suite, max_size, seed, fault));
  if (all || suite == "cofinite")
    groups.push_back(std::async(std::launch::async, cofinite_suite, max_size, seed));
  if (all || suite == "completion")
    groups.push_back(std::async(std::launch::async, completion_suite, max_size, seed));
  if (all || suite == "groupoid")
    groups.push_back(std::async(std::launch::async, groupoid_suite, max_size, seed));
  for (auto& g : groups)
    for (auto& p : g.get()) report.properties.push_back(std::move(p));
  return report;
}

}  // namespace cofinex::verify
