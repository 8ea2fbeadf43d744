#include "cofinex/completion.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "cofinex/error.hpp"

namespace cofinex {

std::size_t InverseSystem::level_index(int label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw Error(Errc::bad_parameter, "no level with this label", {std::to_string(label)});
  return static_cast<std::size_t>(it - labels.begin());
}

StructureMap InverseSystem::bonding(std::size_t i, std::size_t j) const {
  if (i > j || j >= levels.size())
    throw Error(Errc::bad_parameter, "bonding runs from a finer to a coarser level");
  StructureMap out = identity_map(levels[j], MapLaws::for_kind(levels[j]->kind()));
  for (std::size_t k = j; k > i; --k) out = compose(bondings[k - 1], out);
  return out;
}

// ---------------------------------------------------------------------------
// Z-line

namespace {

struct ZName {
  bool vertex;
  long long index;
};

std::optional<ZName> parse_zname(std::string_view a) {
  if (a.size() < 2 || (a[0] != 'v' && a[0] != 'e')) return std::nullopt;
  long long i = 0;
  const char* first = a.data() + 1;
  const char* last = a.data() + a.size();
  auto [ptr, ec] = std::from_chars(first, last, i);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  // canonical spelling only
  if (std::to_string(i) != a.substr(1)) return std::nullopt;
  return ZName{a[0] == 'v', i};
}

std::string vname(long long i) { return "v" + std::to_string(i); }
std::string ename(long long i) { return "e" + std::to_string(i); }

class ZLineBase final : public SystemBase {
 public:
  ZLineBase(ZLineMode mode, std::vector<int> labels, std::vector<StructurePtr> levels)
      : mode_(mode), labels_(std::move(labels)), levels_(std::move(levels)) {}

  Kind kind() const override { return Kind::digraph; }
  bool finite() const override { return false; }

  std::vector<std::string> window(int w) const override {
    std::vector<std::string> out;
    for (long long i = -w; i <= w; ++i) {
      out.push_back(vname(i));
      if (i < w) out.push_back(ename(i));
    }
    return out;
  }

  bool is_element(std::string_view a) const override { return parse_zname(a).has_value(); }
  bool is_vertex(std::string_view a) const override { return checked(a).vertex; }
  std::string source(std::string_view a) const override {
    const ZName z = checked(a);
    return vname(z.index);
  }
  std::string target(std::string_view a) const override {
    const ZName z = checked(a);
    return vname(z.vertex ? z.index : z.index + 1);
  }

  Elem project(std::size_t level, std::string_view a) const override {
    return levels_[level]->id(image_name(labels_[level], checked(a)));
  }

  std::optional<std::vector<Elem>> declared_unbounded(std::size_t level) const override {
    const int n = labels_[level];
    const FiniteStructure& s = *levels_[level];
    if (mode_ == ZLineMode::circles) return std::vector<Elem>{s.id(vname(-n))};
    if (n == 0) return std::vector<Elem>{s.id(vname(0))};
    return std::vector<Elem>{s.id(vname(-n)), s.id(vname(n))};
  }

  /// Name of the level-n class of a Z-line element: the simplicial
  /// retraction onto [-n, n], then the gluing for circles.
  std::string image_name(long long n, const ZName& z) const {
    std::string out;
    if (z.vertex) {
      out = vname(std::clamp(z.index, -n, n));
    } else if (z.index >= -n && z.index <= n - 1) {
      return ename(z.index);
    } else {
      out = vname(z.index >= n ? n : -n);
    }
    if (mode_ == ZLineMode::circles && out == vname(n)) out = vname(-n);
    return out;
  }

 private:
  ZName checked(std::string_view a) const {
    auto z = parse_zname(a);
    if (!z) throw Error(Errc::unknown_element, "not a Z-line element", {std::string(a)});
    return *z;
  }

  ZLineMode mode_;
  std::vector<int> labels_;
  std::vector<StructurePtr> levels_;
};

StructurePtr zline_level(ZLineMode mode, int n) {
  StructureBuilder b(Kind::digraph);
  const bool glued = mode == ZLineMode::circles;
  auto vertex_at = [&](long long i) { return glued && i == n ? vname(-n) : vname(i); };
  for (long long i = -n; i <= n; ++i) {
    if (!(glued && i == n)) b.vertex(vname(i));
    if (i < n) b.edge(ename(i), vertex_at(i), vertex_at(i + 1));
  }
  return share(b.build());
}

}  // namespace

InverseSystem zline_system(ZLineMode mode, int max_level) {
  const int first = mode == ZLineMode::circles ? 1 : 0;
  if (max_level < first || max_level > 64)
    throw Error(Errc::bad_parameter, "Z-line systems take max_level in " +
                                         std::to_string(first) + "..64",
                {std::to_string(max_level)});
  InverseSystem sys;
  for (int n = first; n <= max_level; ++n) {
    sys.labels.push_back(n);
    sys.levels.push_back(zline_level(mode, n));
  }
  auto base = std::make_shared<ZLineBase>(mode, sys.labels, sys.levels);
  auto bond = [&](std::size_t i, std::size_t j) {
    const FiniteStructure& fine = *sys.levels[j];
    std::vector<Elem> table(fine.size());
    for (Elem x = 0; x < fine.size(); ++x) table[x] = base->project(i, fine.name(x));
    return StructureMap{sys.levels[j], sys.levels[i], std::move(table), {true, false, false}};
  };
  for (std::size_t j = 1; j < sys.levels.size(); ++j) {
    sys.bondings.push_back(bond(j - 1, j));
    for (std::size_t i = 0; i + 1 < j; ++i) sys.direct.emplace(std::pair{i, j}, bond(i, j));
  }
  sys.base = std::move(base);
  return sys;
}

// ---------------------------------------------------------------------------
// Finite bases

namespace {

class FiniteBase final : public SystemBase {
 public:
  FiniteBase(StructurePtr carrier, std::vector<StructureMap> projections)
      : carrier_(std::move(carrier)), projections_(std::move(projections)) {}

  Kind kind() const override { return carrier_->kind(); }
  bool finite() const override { return true; }
  std::vector<std::string> window(int) const override { return carrier_->names(); }
  bool is_element(std::string_view a) const override {
    return carrier_->find(a).has_value();
  }
  bool is_vertex(std::string_view a) const override {
    return carrier_->is_vertex(carrier_->id(a));
  }
  std::string source(std::string_view a) const override {
    return carrier_->name(carrier_->src(carrier_->id(a)));
  }
  std::string target(std::string_view a) const override {
    return carrier_->name(carrier_->tgt(carrier_->id(a)));
  }
  Elem project(std::size_t level, std::string_view a) const override {
    return projections_[level](carrier_->id(a));
  }

 private:
  StructurePtr carrier_;
  std::vector<StructureMap> projections_;
};

}  // namespace

InverseSystem system_from_filterbase(const FilterBase& base) {
  is_filter_base(base);  // law and carrier preconditions
  std::vector<Partition> chain = base.members;
  std::stable_sort(chain.begin(), chain.end(), [](const Partition& a, const Partition& b) {
    return a.index() < b.index();
  });
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i].refines(chain[i - 1]))
      throw Error(Errc::not_a_chain, "members are not totally ordered by refinement");

  InverseSystem sys;
  std::vector<Quotient> quotients;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    quotients.push_back(quotient(chain[i], base.law));
    sys.labels.push_back(static_cast<int>(i + 1));
    sys.levels.push_back(quotients.back().structure);
  }
  for (std::size_t j = 1; j < quotients.size(); ++j) {
    sys.bondings.push_back(induced_bonding(quotients[j - 1], quotients[j]));
    for (std::size_t i = 0; i + 1 < j; ++i)
      sys.direct.emplace(std::pair{i, j}, induced_bonding(quotients[i], quotients[j]));
  }
  std::vector<StructureMap> projections;
  for (auto& q : quotients) projections.push_back(q.nu);
  sys.base = std::make_shared<FiniteBase>(base.carrier, std::move(projections));
  return sys;
}

// ---------------------------------------------------------------------------

std::vector<CheckReport> validate_system(const InverseSystem& sys, int window) {
  std::vector<CheckReport> failures;
  if (sys.labels.size() != sys.levels.size() ||
      sys.bondings.size() + 1 != std::max<std::size_t>(sys.levels.size(), 1)) {
    failures.push_back({false, "shape", {"labels/levels/bondings disagree"}});
    return failures;
  }
  for (std::size_t i = 1; i < sys.labels.size(); ++i)
    if (sys.labels[i] <= sys.labels[i - 1])
      failures.push_back({false, "labels", {std::to_string(sys.labels[i])}});

  auto map_ok = [&](const StructureMap& f, std::size_t i, std::size_t j) {
    if (f.domain != sys.levels[j] || f.codomain != sys.levels[i]) {
      failures.push_back({false, "bonding_ends",
                          {std::to_string(sys.labels[j]), std::to_string(sys.labels[i])}});
      return false;
    }
    auto rep = validate_map(f);
    for (const auto& v : rep.violations) {
      CheckReport c{false, "bonding_law", {std::to_string(sys.labels[j]),
                                           std::to_string(sys.labels[i]), v.describe()}};
      failures.push_back(std::move(c));
    }
    return rep.ok();
  };

  bool maps_ok = true;
  for (std::size_t i = 0; i < sys.bondings.size(); ++i)
    maps_ok = map_ok(sys.bondings[i], i, i + 1) && maps_ok;
  for (const auto& [key, f] : sys.direct) {
    const auto [i, j] = key;
    if (j >= sys.levels.size() || i >= j) {
      failures.push_back({false, "bonding_ends", {std::to_string(i), std::to_string(j)}});
      continue;
    }
    if (!map_ok(f, i, j)) continue;
    if (!maps_ok) continue;
    const StructureMap composite = sys.bonding(i, j);
    for (Elem x = 0; x < f.table.size(); ++x)
      if (f(x) != composite(x)) {
        failures.push_back({false, "functoriality",
                            {std::to_string(sys.labels[j]), std::to_string(sys.labels[i]),
                             sys.levels[j]->name(x)}});
        break;
      }
  }

  if (sys.base && maps_ok) {
    for (const auto& a : sys.base->window(window)) {
      for (std::size_t i = 0; i + 1 < sys.levels.size(); ++i) {
        const Elem fine = sys.base->project(i + 1, a);
        const Elem coarse = sys.base->project(i, a);
        if (sys.bondings[i](fine) != coarse)
          failures.push_back({false, "projection",
                              {std::to_string(sys.labels[i + 1]),
                               std::to_string(sys.labels[i]), a}});
      }
    }
  }
  return failures;
}

namespace {

void require_base(const InverseSystem& sys) {
  if (!sys.base) throw Error(Errc::base_required, "the system has no base carrier");
}

bool in_window(const SystemBase& base, std::string_view a, int w) {
  const auto win = base.window(w);
  return std::find(win.begin(), win.end(), a) != win.end();
}

int max_label(const InverseSystem& sys) { return sys.labels.empty() ? 0 : sys.labels.back(); }

}  // namespace

Elem level_embed(const InverseSystem& sys, std::string_view a, int label,
                 std::optional<int> window) {
  require_base(sys);
  const std::size_t i = sys.level_index(label);
  if (!sys.base->is_element(a))
    throw Error(Errc::unknown_element, "not an element of the base", {std::string(a)});
  const int w = window.value_or(default_window(max_label(sys)));
  if (!sys.base->finite() && !in_window(*sys.base, a, w))
    throw Error(Errc::out_of_window, "element outside window " + std::to_string(w),
                {std::string(a)});
  return sys.base->project(i, a);
}

// ---------------------------------------------------------------------------

std::string_view to_string(CensusSource source) {
  switch (source) {
    case CensusSource::analytic: return "analytic";
    case CensusSource::finite: return "finite";
    case CensusSource::heuristic: return "heuristic";
  }
  return "?";
}

std::size_t FiberCensus::unbounded_count() const {
  return static_cast<std::size_t>(std::count_if(
      classes.begin(), classes.end(), [](const ClassFiber& c) { return c.unbounded; }));
}

std::vector<Elem> FiberCensus::unbounded() const {
  std::vector<Elem> out;
  for (const auto& c : classes)
    if (c.unbounded) out.push_back(c.cls);
  return out;
}

FiberCensus fiber_census(const InverseSystem& sys, int label, int budget) {
  require_base(sys);
  const std::size_t i = sys.level_index(label);
  const std::size_t k = sys.levels[i]->size();

  auto sizes_at = [&](int w) {
    std::vector<std::size_t> sizes(k, 0);
    for (const auto& a : sys.base->window(w)) ++sizes[sys.base->project(i, a)];
    return sizes;
  };
  std::vector<std::vector<std::size_t>> runs;
  for (int step = 0; step <= 3; ++step) runs.push_back(sizes_at(budget + step));

  FiberCensus census{label, CensusSource::heuristic, {}};
  std::vector<bool> unbounded(k, false);
  if (auto declared = sys.base->declared_unbounded(i)) {
    census.source = CensusSource::analytic;
    for (Elem c : *declared) unbounded[c] = true;
  } else if (sys.base->finite()) {
    census.source = CensusSource::finite;
  }
  for (Elem c = 0; c < k; ++c) {
    ClassFiber f;
    f.cls = c;
    f.fiber = runs[0][c];
    f.growing = runs[0][c] < runs[1][c] && runs[1][c] < runs[2][c] && runs[2][c] < runs[3][c];
    f.unbounded = census.source == CensusSource::heuristic ? f.growing : unbounded[c];
    census.classes.push_back(f);
  }
  return census;
}

std::string EndReport::status_text() const {
  if (status == EndStatus::exact) return "Exact(" + std::to_string(ends) + ")";
  return "Unknown";
}

EndReport count_new_points(const InverseSystem& sys, int depth, std::optional<int> window) {
  require_base(sys);
  if (depth < 1) throw Error(Errc::bad_parameter, "depth must be at least 1");
  const int budget = window.value_or(default_window(depth));

  EndReport report;
  std::vector<std::vector<Elem>> unbounded;  // per label 1..depth
  std::vector<std::size_t> index;
  for (int label = 1; label <= depth; ++label) {
    index.push_back(sys.level_index(label));
    const FiberCensus census = fiber_census(sys, label, budget);
    report.source = census.source;
    report.labels.push_back(label);
    report.per_level.push_back(census.unbounded_count());
    unbounded.push_back(census.unbounded());
  }

  // transition t: level t+1 -> level t restricted to unbounded classes
  auto bijective = [&](std::size_t t) {
    const StructureMap f = sys.bonding(index[t], index[t + 1]);
    const auto& lower = unbounded[t];
    std::set<Elem> hit;
    for (Elem c : unbounded[t + 1]) {
      const Elem img = f(c);
      if (std::find(lower.begin(), lower.end(), img) == lower.end()) return false;
      if (!hit.insert(img).second) return false;
    }
    return hit.size() == lower.size();
  };

  const std::size_t top = unbounded.size() - 1;
  std::size_t stable = top;
  while (stable > 0 && bijective(stable - 1)) --stable;

  const std::size_t count = unbounded[top].size();
  if (count > 0 && stable == top) {
    report.status = EndStatus::unknown;
    return report;
  }
  report.status = EndStatus::exact;
  report.ends = count;
  report.stabilization = report.labels[stable];
  for (Elem c : unbounded[top]) {
    std::vector<Elem> thread(unbounded.size());
    for (std::size_t t = 0; t <= top; ++t)
      thread[t] = sys.bonding(index[t], index[top])(c);
    report.threads.push_back(std::move(thread));
  }
  return report;
}

DiscreteQuotientReport discrete_quotient_check(const InverseSystem& sys, int label,
                                               int depth, std::optional<int> window) {
  const EndReport ends = count_new_points(sys, depth, window);
  if (ends.status != EndStatus::exact)
    throw Error(Errc::status_unknown, "ends are not exactly known at this depth");
  const std::size_t i = sys.level_index(label);
  const std::size_t top = sys.level_index(depth);
  if (i > top) throw Error(Errc::bad_parameter, "level lies beyond the census depth");
  const FiniteStructure& level = *sys.levels[i];
  const int w = window.value_or(default_window(depth));

  DiscreteQuotientReport report;
  report.level_size = level.size();
  std::vector<bool> hit(level.size(), false);
  bool commutes = true;
  for (const auto& a : sys.base->window(w)) {
    const Elem c = sys.base->project(i, a);
    hit[c] = true;
    if (sys.base->project(i, sys.base->source(a)) != level.src(c) ||
        sys.base->project(i, sys.base->target(a)) != level.tgt(c))
      commutes = false;
  }
  const StructureMap down = sys.bonding(i, top);
  for (const auto& thread : ends.threads) {
    const Elem c = down(thread.back());
    hit[c] = true;
    report.end_classes.push_back(level.name(c));
    // An end is a vertex of the limit exactly when its classes are vertices.
    if (level.is_vertex(c) && (level.src(c) != c || level.tgt(c) != c)) commutes = false;
  }
  report.extended_classes =
      static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  report.isomorphic = commutes && report.extended_classes == level.size();
  return report;
}

std::vector<std::optional<int>> window_separation(const InverseSystem& sys, int window,
                                                  int max_label) {
  require_base(sys);
  const auto elems = sys.base->window(window);
  std::vector<std::optional<int>> out(elems.size());
  for (std::size_t i = 0; i < sys.levels.size(); ++i) {
    if (sys.labels[i] > max_label) break;
    std::vector<std::size_t> count(sys.levels[i]->size(), 0);
    std::vector<Elem> image(elems.size());
    for (std::size_t e = 0; e < elems.size(); ++e) {
      image[e] = sys.base->project(i, elems[e]);
      ++count[image[e]];
    }
    for (std::size_t e = 0; e < elems.size(); ++e)
      if (!out[e] && count[image[e]] == 1) out[e] = sys.labels[i];
  }
  return out;
}

}  // namespace cofinex
