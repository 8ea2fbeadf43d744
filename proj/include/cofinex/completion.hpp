#ifndef COFINEX_COMPLETION_HPP
#define COFINEX_COMPLETION_HPP

// Chain-indexed inverse systems of finite quotients and finite certificates
// about their limits.
//
// Levels carry integer labels (increasing = finer). The ends census always
// runs over labels 1..depth; a label-0 level, when a system has one, is the
// one-point quotient and takes part in validation and embedding only.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cofinex/cofinite.hpp"

namespace cofinex {

/// The carrier an inverse system approximates: finite, or infinite and
/// explored through nested windows. Also evaluates the level projections.
class SystemBase {
 public:
  virtual ~SystemBase() = default;

  virtual Kind kind() const = 0;
  virtual bool finite() const = 0;
  /// Nested: window(w) is contained in window(w + 1).
  virtual std::vector<std::string> window(int w) const = 0;
  virtual bool is_element(std::string_view a) const = 0;
  virtual bool is_vertex(std::string_view a) const = 0;
  virtual std::string source(std::string_view a) const = 0;
  virtual std::string target(std::string_view a) const = 0;
  /// Level coordinate of `a`, by level index (not label).
  virtual Elem project(std::size_t level, std::string_view a) const = 0;
  /// Classes with infinite fibre, when the generator knows them exactly.
  virtual std::optional<std::vector<Elem>> declared_unbounded(std::size_t level) const {
    (void)level;
    return std::nullopt;
  }
};

struct InverseSystem {
  std::vector<int> labels;  ///< strictly increasing
  std::vector<StructurePtr> levels;
  /// bondings[i] : levels[i + 1] -> levels[i]
  std::vector<StructureMap> bondings;
  /// Optional direct bondings levels[j] -> levels[i] for j > i + 1, keyed
  /// (i, j). validate_system() checks them against the composites.
  std::map<std::pair<std::size_t, std::size_t>, StructureMap> direct;
  std::shared_ptr<const SystemBase> base;

  std::size_t level_index(int label) const;  ///< throws BadParameter
  /// levels[j] -> levels[i] for i <= j, composed from consecutive bondings.
  StructureMap bonding(std::size_t i, std::size_t j) const;
};

/// Window used when the caller gives none.
inline int default_window(int depth) { return 2 * depth + 2; }

// ---------------------------------------------------------------------------
// Z-line fixtures

enum class ZLineMode { circles, arcs };

/// The subdivided real line with edges i -> i+1, vertices "v{i}" and edges
/// "e{i}". Circles: levels 1..max_level, [-n, n] with -n glued to n (the
/// glued vertex is named "v-{n}"). Arcs: levels 0..max_level, [-n, n].
/// Projections are the retractions onto [-n, n]; unbounded classes are
/// declared analytically. Throws BadParameter outside 0..64.
InverseSystem zline_system(ZLineMode mode, int max_level);

// ---------------------------------------------------------------------------

/// Levels are the quotients by the members ordered coarse to fine and
/// labelled 1..k; the base is the finite carrier with the natural maps.
/// Equal members collapse to one level. Throws NotAChain.
InverseSystem system_from_filterbase(const FilterBase& base);

/// Map laws of every bonding, agreement of direct bondings with composites,
/// and projection compatibility over window(window). Empty list = pass.
std::vector<CheckReport> validate_system(const InverseSystem& sys, int window);

/// phi_n(a). Throws UnknownElement, OutOfWindow (a not in window(window)),
/// BadParameter (no such level).
Elem level_embed(const InverseSystem& sys, std::string_view a, int label,
                 std::optional<int> window = std::nullopt);

enum class CensusSource { analytic, finite, heuristic };
std::string_view to_string(CensusSource source);

struct ClassFiber {
  Elem cls = 0;
  std::size_t fiber = 0;  ///< within window(budget)
  bool growing = false;   ///< strictly grows over three budget increments
  bool unbounded = false;
};

struct FiberCensus {
  int label = 0;
  CensusSource source = CensusSource::heuristic;
  std::vector<ClassFiber> classes;

  std::size_t unbounded_count() const;
  std::vector<Elem> unbounded() const;
};

/// Throws BaseRequired.
FiberCensus fiber_census(const InverseSystem& sys, int label, int budget);

enum class EndStatus { exact, unknown };

struct EndReport {
  EndStatus status = EndStatus::unknown;
  std::size_t ends = 0;                ///< valid when exact
  std::vector<int> labels;             ///< 1..depth
  std::vector<std::size_t> per_level;  ///< unbounded classes per label
  std::optional<int> stabilization;
  CensusSource source = CensusSource::heuristic;
  /// One entry per end: its unbounded class at each label in `labels`.
  std::vector<std::vector<Elem>> threads;

  std::string status_text() const;  ///< "Exact(k)" or "Unknown"
};

/// Threads of unbounded classes through labels 1..depth. Throws
/// BaseRequired, BadParameter.
EndReport count_new_points(const InverseSystem& sys, int depth,
                           std::optional<int> window = std::nullopt);

struct DiscreteQuotientReport {
  bool isomorphic = false;
  std::size_t extended_classes = 0;
  std::size_t level_size = 0;
  std::vector<std::string> end_classes;  ///< level-n class of each end

  explicit operator bool() const noexcept { return isomorphic; }
};

/// Quotient of window(w) plus the ends by the level-n kernel, compared with
/// the level-n structure. Throws StatusUnknown when the ends are not exact.
DiscreteQuotientReport discrete_quotient_check(const InverseSystem& sys, int label,
                                               int depth,
                                               std::optional<int> window = std::nullopt);

/// For each element of window(w): the first label at which no other window
/// element shares its class, if any label up to max_label does.
std::vector<std::optional<int>> window_separation(const InverseSystem& sys, int window,
                                                  int max_label);

}  // namespace cofinex

#endif  // COFINEX_COMPLETION_HPP
