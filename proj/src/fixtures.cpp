#include "cofinex/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "cofinex/error.hpp"

namespace cofinex::fixtures {

namespace {

void require_range(std::string_view what, long long value, long long lo, long long hi) {
  if (value < lo || value > hi)
    throw Error(Errc::bad_parameter,
                std::string(what) + " must lie in " + std::to_string(lo) + ".." +
                    std::to_string(hi),
                {std::to_string(value)});
}

std::string letter(int i) { return std::string(1, static_cast<char>('a' + i)); }

}  // namespace

FiniteStructure path(int n) {
  require_range("path length", n, 0, 4096);
  StructureBuilder b(Kind::digraph);
  for (int i = 0; i <= n; ++i) b.vertex(std::to_string(i));
  for (int i = 0; i < n; ++i)
    b.edge("e" + std::to_string(i) + std::to_string(i + 1), std::to_string(i),
           std::to_string(i + 1));
  return b.build();
}

FiniteStructure path_graph(int n) {
  require_range("path length", n, 0, 4096);
  StructureBuilder b(Kind::graph);
  for (int i = 0; i <= n; ++i) b.vertex(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    const auto lo = std::to_string(i), hi = std::to_string(i + 1);
    b.edge("e" + lo + hi, lo, hi).edge("e" + hi + lo, hi, lo).inverse("e" + lo + hi, "e" + hi + lo);
  }
  return b.build();
}

FiniteStructure delta_graph() {
  return StructureBuilder(Kind::digraph)
      .vertex("a")
      .vertex("b")
      .edge("e", "a", "a")
      .edge("f", "b", "b")
      .edge("g", "a", "b")
      .edge("gbar", "b", "a")
      .build();
}

FiniteStructure discrete_space(int n) {
  require_range("point count", n, 0, 4096);
  StructureBuilder b(Kind::digraph);
  for (int i = 0; i < n; ++i) b.vertex("p" + std::to_string(i));
  return b.build();
}

GroupTable group_table(std::string_view name) {
  GroupTable out{std::string(name), {}};
  if (name == "klein") {
    out.mul.assign(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out.mul[a][b] = a ^ b;
    return out;
  }
  if (name == "s3") {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    out.mul.assign(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        std::array<int, 3> r{};
        for (int i = 0; i < 3; ++i) r[i] = perms[b][perms[a][i]];
        out.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), r) - perms.begin());
      }
    return out;
  }
  if (name.size() > 1 && name[0] == 'z') {
    int n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size()) {
      require_range("cyclic order", n, 1, 256);
      out.mul.assign(n, std::vector<int>(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.mul[a][b] = (a + b) % n;
      return out;
    }
  }
  throw Error(Errc::bad_parameter, "unknown group (z<n>, klein, s3)", {std::string(name)});
}

FiniteStructure group_groupoid(const GroupTable& h) {
  StructureBuilder b(Kind::groupoid);
  b.vertex("0");
  for (int a = 1; a < h.order(); ++a) b.edge(std::to_string(a), "0", "0");
  for (int a = 0; a < h.order(); ++a)
    for (int c = 0; c < h.order(); ++c)
      b.product(std::to_string(a), std::to_string(c), std::to_string(h.mul[a][c]));
  return b.build();
}

FiniteStructure cyclic(int n) {
  require_range("cyclic order", n, 1, 256);
  return group_groupoid(group_table("z" + std::to_string(n)));
}

FiniteStructure pair_groupoid(int n) {
  require_range("vertex count", n, 1, 26);
  auto name = [](int i, int j) { return i == j ? letter(i) : letter(i) + letter(j); };
  StructureBuilder b(Kind::groupoid);
  for (int i = 0; i < n; ++i) b.vertex(letter(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b.edge(name(i, j), letter(i), letter(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) b.product(name(i, j), name(j, k), name(i, k));
  return b.build();
}

FiniteStructure connected_groupoid(int n, const GroupTable& h) {
  require_range("vertex count", n, 1, 16);
  auto name = [](int i, int a, int j) {
    return std::to_string(i) + "." + std::to_string(a) + "." + std::to_string(j);
  };
  StructureBuilder b(Kind::groupoid);
  for (int i = 0; i < n; ++i) b.vertex(name(i, 0, i));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < h.order(); ++a)
      for (int j = 0; j < n; ++j)
        if (a != 0 || i != j) b.edge(name(i, a, j), name(i, 0, i), name(j, 0, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < h.order(); ++a)
          for (int c = 0; c < h.order(); ++c)
            b.product(name(i, a, j), name(j, c, k), name(i, h.mul[a][c], k));
  return b.build();
}

FiniteStructure prefixed(const FiniteStructure& s, std::string_view prefix) {
  std::vector<std::string> names;
  for (const auto& n : s.names()) names.push_back(std::string(prefix) + n);
  return FiniteStructure(s.kind(), std::move(names), s.vertex_flags(), s.src_table(),
                         s.tgt_table(), s.inv_table(), s.mul_table());
}

FiniteStructure random_digraph(std::mt19937_64& rng, std::size_t max_size) {
  const std::size_t total = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_size))(rng);
  const std::size_t vertices = std::uniform_int_distribution<std::size_t>(1, total)(rng);
  StructureBuilder b(Kind::digraph);
  for (std::size_t i = 0; i < vertices; ++i) b.vertex("v" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
  for (std::size_t i = 0; i < total - vertices; ++i) {
    const auto s = pick(rng);
    const auto t = pick(rng);
    b.edge("e" + std::to_string(i), "v" + std::to_string(s), "v" + std::to_string(t));
  }
  return b.build();
}

std::vector<Named> small_groupoids(std::size_t max_size) {
  std::vector<Named> all;
  auto add = [&](std::string name, FiniteStructure s) {
    if (s.size() <= max_size) all.push_back({std::move(name), share(std::move(s))});
  };
  auto join = [](const FiniteStructure& a, const FiniteStructure& b) {
    return disjoint_union(prefixed(a, "L"), prefixed(b, "R"));
  };
  for (int n = 1; n <= static_cast<int>(std::min<std::size_t>(max_size, 64)); ++n)
    add("cyclic(" + std::to_string(n) + ")", cyclic(n));
  add("klein", group_groupoid(group_table("klein")));
  add("s3", group_groupoid(group_table("s3")));
  for (int n = 1; n * n <= static_cast<int>(max_size) && n <= 26; ++n)
    add("pair-groupoid(" + std::to_string(n) + ")", pair_groupoid(n));
  for (const char* h : {"z2", "z3", "z4", "klein", "s3"})
    for (int n = 2; n <= 3; ++n) {
      const auto table = group_table(h);
      if (static_cast<std::size_t>(n * n * table.order()) <= max_size)
        add("connected-groupoid(" + std::to_string(n) + "," + h + ")",
            connected_groupoid(n, table));
    }
  add("cyclic(1)+cyclic(1)", join(cyclic(1), cyclic(1)));
  add("cyclic(2)+cyclic(2)", join(cyclic(2), cyclic(2)));
  add("cyclic(2)+cyclic(3)", join(cyclic(2), cyclic(3)));
  add("cyclic(4)+cyclic(4)", join(cyclic(4), cyclic(4)));
  add("pair-groupoid(2)+cyclic(1)", join(pair_groupoid(2), cyclic(1)));
  add("pair-groupoid(2)+cyclic(2)", join(pair_groupoid(2), cyclic(2)));
  add("pair-groupoid(2)+pair-groupoid(2)", join(pair_groupoid(2), pair_groupoid(2)));
  return all;
}

std::vector<Named> small_carriers(std::size_t max_size) {
  std::vector<Named> all;
  auto add = [&](std::string name, FiniteStructure s) {
    if (s.size() <= max_size) all.push_back({std::move(name), share(std::move(s))});
  };
  for (int n = 0; 2 * n + 1 <= static_cast<int>(max_size); ++n)
    add("path(" + std::to_string(n) + ")", path(n));
  for (int n = 0; 3 * n + 1 <= static_cast<int>(max_size); ++n)
    add("path-graph(" + std::to_string(n) + ")", path_graph(n));
  add("delta-graph", delta_graph());
  for (int n = 1; n <= static_cast<int>(std::min<std::size_t>(max_size, 64)); ++n)
    add("discrete-space(" + std::to_string(n) + ")", discrete_space(n));
  for (auto& g : small_groupoids(max_size)) all.push_back(std::move(g));
  return all;
}

namespace {

int int_param(const std::vector<std::string>& params, std::size_t i, std::string_view what) {
  if (i >= params.size())
    throw Error(Errc::bad_parameter, "missing parameter: " + std::string(what));
  const auto& text = params[i];
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(Errc::bad_parameter, "not an integer: " + std::string(what), {text});
  return value;
}

void require_arity(const std::vector<std::string>& params, std::size_t n,
                   std::string_view fixture) {
  if (params.size() != n)
    throw Error(Errc::bad_parameter,
                std::string(fixture) + " takes " + std::to_string(n) + " parameter(s)");
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{
      "path",    "path-graph",    "zline-circles",      "zline-arcs",    "delta-graph",
      "cyclic",  "pair-groupoid", "connected-groupoid", "discrete-space"};
  return names;
}

Generated generate(std::string_view name, const std::vector<std::string>& params) {
  if (name == "path" || name == "path-graph" || name == "cyclic" || name == "pair-groupoid" ||
      name == "discrete-space" || name == "zline-circles" || name == "zline-arcs") {
    require_arity(params, 1, name);
    const int n = int_param(params, 0, "n");
    if (name == "path") return path(n);
    if (name == "path-graph") return path_graph(n);
    if (name == "cyclic") return cyclic(n);
    if (name == "pair-groupoid") return pair_groupoid(n);
    if (name == "discrete-space") return discrete_space(n);
    return zline_system(name == "zline-circles" ? ZLineMode::circles : ZLineMode::arcs, n);
  }
  if (name == "delta-graph") {
    require_arity(params, 0, name);
    return delta_graph();
  }
  if (name == "connected-groupoid") {
    require_arity(params, 2, name);
    return connected_groupoid(int_param(params, 0, "n"), group_table(params[1]));
  }
  throw Error(Errc::bad_parameter, "unknown fixture", {std::string(name)});
}

}  // namespace cofinex::fixtures
