#ifndef COFINEX_TESTS_SUPPORT_HPP
#define COFINEX_TESTS_SUPPORT_HPP

#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "cofinex/error.hpp"
#include "cofinex/oracle.hpp"
#include "cofinex/partition.hpp"

namespace support {

inline std::vector<std::string> names_of(const cofinex::FiniteStructure& s,
                                         const std::vector<cofinex::Elem>& xs) {
  std::vector<std::string> out;
  for (cofinex::Elem x : xs) out.push_back(s.name(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// Classes as sorted id lists, sorted, singletons included.
inline std::vector<std::vector<std::string>> classes_of(const cofinex::Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : p.classes()) out.push_back(names_of(*p.carrier(), c));
  std::sort(out.begin(), out.end());
  return out;
}

inline cofinex::Partition from_names(const cofinex::StructurePtr& s,
                                     const std::vector<std::vector<std::string>>& classes) {
  std::vector<std::vector<cofinex::Elem>> ids;
  for (const auto& c : classes) {
    ids.emplace_back();
    for (const auto& n : c) ids.back().push_back(s->id(n));
  }
  return cofinex::Partition::from_classes(s, ids);
}

inline cofinex::Partition from_oracle(const cofinex::StructurePtr& s,
                                      const cofinex::oracle::Labels& labels) {
  std::vector<std::uint64_t> wide(labels.begin(), labels.end());
  return cofinex::Partition::from_labels(s, wide);
}

inline cofinex::oracle::Labels to_oracle(const cofinex::Partition& p) { return p.labels(); }

template <class F>
cofinex::Errc code_of(F&& f) {
  try {
    f();
  } catch (const cofinex::Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return cofinex::Errc::parse_error;
}

}  // namespace support

#endif  // COFINEX_TESTS_SUPPORT_HPP
