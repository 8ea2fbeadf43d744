#ifndef COFINEX_VERIFY_HPP
#define COFINEX_VERIFY_HPP

// Property suites over fixtures and seeded random instances, checked
// against the brute-force oracles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cofinex::verify {

enum class Fault { none, skip_product_closure };

struct Property {
  std::string suite;
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::vector<std::string> witness;  ///< first failure
};

struct SuiteReport {
  std::string suite;
  std::size_t max_size = 0;
  std::uint64_t seed = 0;
  std::vector<Property> properties;  ///< fixed order

  bool pass() const;
};

/// The suite names run_verify() accepts.
const std::vector<std::string>& suite_names();

/// Throws BadParameter for an unknown suite.
SuiteReport run_verify(std::string_view suite, std::size_t max_size, std::uint64_t seed,
                       Fault fault = Fault::none);

}  // namespace cofinex::verify

#endif  // COFINEX_VERIFY_HPP
