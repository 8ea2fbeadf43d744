#include "cofinex/oracle.hpp"

#include <algorithm>
#include <set>

namespace cofinex::oracle {

void for_each_partition(std::size_t n, const std::function<bool(const Labels&)>& visit) {
  if (n == 0) {
    visit({});
    return;
  }
  Labels a(n, 0);
  std::vector<std::uint32_t> top(n, 0);  // top[i] = max(a[0..i])
  while (true) {
    if (!visit(a)) return;
    std::size_t i = n - 1;
    while (i > 0 && a[i] > top[i - 1]) --i;
    if (i == 0) return;
    ++a[i];
    top[i] = std::max(top[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      top[j] = top[i];
    }
  }
}

Labels canonical(const std::vector<std::uint64_t>& labels) {
  std::map<std::uint64_t, std::uint32_t> seen;
  Labels out;
  out.reserve(labels.size());
  for (auto l : labels) {
    auto [it, fresh] = seen.emplace(l, static_cast<std::uint32_t>(seen.size()));
    out.push_back(it->second);
  }
  return out;
}

std::size_t bell_number(std::size_t n) {
  std::vector<std::size_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

bool compatible(const FiniteStructure& s, const Labels& r) {
  const Elem n = static_cast<Elem>(s.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (r[x] == r[y] &&
          (r[s.src(x)] != r[s.src(y)] || r[s.tgt(x)] != r[s.tgt(y)]))
        return false;
  return true;
}

bool inverse_closed(const FiniteStructure& s, const Labels& r) {
  if (!s.has_inv()) return false;
  const Elem n = static_cast<Elem>(s.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (r[x] == r[y] && r[s.inv(x)] != r[s.inv(y)]) return false;
  return true;
}

bool graph_equivalence(const FiniteStructure& s, const Labels& r) {
  if (!compatible(s, r) || !inverse_closed(s, r)) return false;
  const Elem n = static_cast<Elem>(s.size());
  for (Elem x = 0; x < n; ++x) {
    if (r[x] != r[s.inv(x)]) continue;
    bool has_vertex = false;
    for (Elem v = 0; v < n; ++v)
      if (s.is_vertex(v) && r[v] == r[x]) has_vertex = true;
    if (!has_vertex) return false;
  }
  return true;
}

bool congruence(const FiniteStructure& s, const Labels& r) {
  if (!s.has_mul() || !compatible(s, r) || !inverse_closed(s, r)) return false;
  const Elem n = static_cast<Elem>(s.size());
  std::vector<std::pair<Elem, Elem>> related;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (r[x] == r[y]) related.emplace_back(x, y);
  for (auto [g1, g2] : related)
    for (auto [h1, h2] : related) {
      if (!s.composable(g1, h1) || !s.composable(g2, h2)) continue;
      if (r[s.mul(g1, h1)] != r[s.mul(g2, h2)]) return false;
    }
  return true;
}

bool satisfies(Law law, const FiniteStructure& s, const Labels& r) {
  switch (law) {
    case Law::compatible: return compatible(s, r);
    case Law::graph_equivalence: return graph_equivalence(s, r);
    case Law::congruence: return congruence(s, r);
  }
  return false;
}

namespace {

class Meet {
 public:
  explicit Meet(std::size_t n) : n_(n), related_(n, std::vector<bool>(n, true)) {}

  void add(const Labels& r) {
    any_ = true;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (r[x] != r[y]) related_[x][y] = false;
  }

  std::optional<Labels> result() const {
    if (!any_) return std::nullopt;
    Labels out(n_);
    std::uint32_t next = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      std::size_t first = x;
      for (std::size_t y = 0; y < x; ++y)
        if (related_[x][y]) {
          first = y;
          break;
        }
      out[x] = first == x ? next++ : out[first];
    }
    return out;
  }

 private:
  std::size_t n_;
  bool any_ = false;
  std::vector<std::vector<bool>> related_;
};

bool contains(const Labels& r, const std::vector<std::pair<Elem, Elem>>& seed) {
  for (auto [x, y] : seed)
    if (r[x] != r[y]) return false;
  return true;
}

}  // namespace

std::optional<Labels> minimal_closure(Law law, const FiniteStructure& s,
                                      const std::vector<std::pair<Elem, Elem>>& seed) {
  Meet meet(s.size());
  for_each_partition(s.size(), [&](const Labels& r) {
    if (contains(r, seed) && satisfies(law, s, r)) meet.add(r);
    return true;
  });
  auto out = meet.result();
  if (!out || !satisfies(law, s, *out)) return std::nullopt;
  return out;
}

std::optional<Labels> meet_containing(const std::vector<Labels>& family,
                                      const std::vector<std::pair<Elem, Elem>>& seed) {
  if (family.empty()) return std::nullopt;
  Meet meet(family.front().size());
  for (const auto& r : family)
    if (contains(r, seed)) meet.add(r);
  return meet.result();
}

std::vector<Labels> all_partitions(Law law, const FiniteStructure& s) {
  std::vector<Labels> out;
  for_each_partition(s.size(), [&](const Labels& r) {
    if (satisfies(law, s, r)) out.push_back(r);
    return true;
  });
  return out;
}

namespace {

std::vector<std::vector<Elem>> classes_of(const Labels& r) {
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < r.size(); ++x) {
    if (r[x] >= out.size()) out.resize(r[x] + 1);
    out[r[x]].push_back(x);
  }
  return out;
}

}  // namespace

bool triples_lift(const FiniteStructure& g, const Labels& r) {
  const auto cls = classes_of(r);
  const std::size_t k = cls.size();
  auto qs = [&](std::size_t c) { return r[g.src(cls[c].front())]; };
  auto qt = [&](std::size_t c) { return r[g.tgt(cls[c].front())]; };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (qt(a) != qs(b)) continue;
      for (std::size_t c = 0; c < k; ++c) {
        if (qt(b) != qs(c)) continue;
        bool lifted = false;
        for (Elem x : cls[a])
          for (Elem y : cls[b]) {
            if (g.tgt(x) != g.src(y)) continue;
            for (Elem z : cls[c])
              if (g.tgt(y) == g.src(z)) lifted = true;
          }
        if (!lifted) return false;
      }
    }
  return true;
}

bool quotient_is_groupoid(const FiniteStructure& g, const Labels& r) {
  const auto cls = classes_of(r);
  const std::size_t k = cls.size();
  std::vector<bool> vertex(k, false);
  std::vector<std::size_t> qs(k), qt(k);
  for (std::size_t c = 0; c < k; ++c) {
    qs[c] = r[g.src(cls[c].front())];
    qt[c] = r[g.tgt(cls[c].front())];
    for (Elem x : cls[c]) {
      if (g.is_vertex(x)) vertex[c] = true;
      if (r[g.src(x)] != qs[c] || r[g.tgt(x)] != qt[c]) return false;
    }
  }
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> mul(k * k, none);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (qt[a] != qs[b]) continue;
      std::set<std::size_t> images;
      for (Elem x : cls[a])
        for (Elem y : cls[b])
          if (g.composable(x, y)) images.insert(r[g.mul(x, y)]);
      if (images.size() != 1) return false;
      mul[a * k + b] = *images.begin();
    }
  for (std::size_t a = 0; a < k; ++a) {
    if (!vertex[qs[a]] || !vertex[qt[a]]) return false;
    if (vertex[a] && (qs[a] != a || qt[a] != a)) return false;
    if (mul[qs[a] * k + a] != a || mul[a * k + qt[a]] != a) return false;
    bool has_inverse = false;
    for (std::size_t b = 0; b < k; ++b)
      if (qt[a] == qs[b] && qt[b] == qs[a] && mul[a * k + b] == qs[a] &&
          mul[b * k + a] == qt[a])
        has_inverse = true;
    if (!has_inverse) return false;
    for (std::size_t b = 0; b < k; ++b) {
      if (qt[a] != qs[b]) continue;
      const std::size_t ab = mul[a * k + b];
      if (qs[ab] != qs[a] || qt[ab] != qt[b]) return false;
      for (std::size_t c = 0; c < k; ++c)
        if (qt[b] == qs[c] && mul[ab * k + c] != mul[a * k + mul[b * k + c]]) return false;
    }
  }
  return true;
}

std::vector<std::vector<Elem>> subgroups(const FiniteStructure& g, Elem x) {
  std::vector<Elem> loops;
  for (Elem a = 0; a < g.size(); ++a)
    if (g.src(a) == x && g.tgt(a) == x) loops.push_back(a);
  std::vector<std::vector<Elem>> out;
  const std::size_t m = loops.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::set<Elem> set;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) set.insert(loops[i]);
    bool ok = set.count(x) > 0;
    for (Elem a : set) {
      if (!ok) break;
      if (!set.count(g.inv(a))) ok = false;
      for (Elem b : set)
        if (!set.count(g.mul(a, b))) ok = false;
    }
    if (ok) out.emplace_back(set.begin(), set.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool normal(const FiniteStructure& g, Elem x, const std::vector<Elem>& n) {
  const std::set<Elem> set(n.begin(), n.end());
  for (Elem a = 0; a < g.size(); ++a) {
    if (g.src(a) != x || g.tgt(a) != x) continue;
    for (Elem m : set)
      if (!set.count(g.mul(g.mul(g.inv(a), m), a))) return false;
  }
  return true;
}

std::size_t rigid_index(const FiniteStructure& g,
                        const std::map<Elem, std::vector<Elem>>& n) {
  auto in_n = [&](Elem v, Elem a) {
    auto it = n.find(v);
    if (it == n.end()) return a == v;
    return std::find(it->second.begin(), it->second.end(), a) != it->second.end();
  };
  std::vector<Elem> reps;
  for (Elem a = 0; a < g.size(); ++a) {
    bool found = false;
    for (Elem b : reps)
      if (g.src(a) == g.src(b) && g.tgt(a) == g.tgt(b) &&
          in_n(g.src(a), g.mul(a, g.inv(b))))
        found = true;
    if (!found) reps.push_back(a);
  }
  return reps.size();
}

bool pairwise_separated(const std::vector<Labels>& members, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool told = false;
      for (const auto& m : members)
        if (m[x] != m[y]) told = true;
      if (!told) return false;
    }
  return true;
}

namespace {

// (is_vertex, coordinate) of the subdivided line or of a level.
using Cell = std::pair<bool, int>;

Cell retract(bool circles, int n, Cell c) {
  auto [vertex, i] = c;
  Cell out;
  if (vertex) out = {true, std::clamp(i, -n, n)};
  else if (i < -n) out = {true, -n};
  else if (i >= n) out = {true, n};
  else out = {false, i};
  if (circles && out.first && out.second == n) out.second = -n;
  return out;
}

std::map<Cell, std::size_t> fibres(bool circles, int n, int w) {
  std::map<Cell, std::size_t> out;
  for (int i = -w; i <= w; ++i) {
    ++out[retract(circles, n, {true, i})];
    if (i < w) ++out[retract(circles, n, {false, i})];
  }
  return out;
}

}  // namespace

ZLineCensus zline_census(bool circles, int depth, int window) {
  ZLineCensus out;
  std::vector<std::set<Cell>> unbounded(depth + 1);
  for (int n = 1; n <= depth; ++n) {
    const auto small = fibres(circles, n, window);
    const auto large = fibres(circles, n, 2 * window);
    for (const auto& [cell, count] : large)
      if (!small.count(cell) || small.at(cell) < count) unbounded[n].insert(cell);
    out.per_level.push_back(unbounded[n].size());
    out.level_sizes.push_back(large.size());
  }
  if (depth >= 1) {
    for (const Cell& top : unbounded[depth]) {
      bool thread = true;
      Cell c = top;
      for (int n = depth - 1; n >= 1 && thread; --n) {
        c = retract(circles, n, c);
        thread = unbounded[n].count(c) > 0;
      }
      if (thread) ++out.ends;
    }
  }
  return out;
}

}  // namespace cofinex::oracle
