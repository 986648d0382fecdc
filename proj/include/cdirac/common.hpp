#ifndef CDIRAC_COMMON_HPP
#define CDIRAC_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdirac {

// Default absolute tolerance on residuals. Residual operations normalize by
// the natural scale of their inputs before this is applied.
inline constexpr double kDefaultTol = 1e-9;

// Relative tolerance for numeric rank decisions (singular values below
// kRankTol * max(1, sigma_max) count as zero).
inline constexpr double kRankTol = 1e-8;

// Seed used by randomized suites unless overridden (CDIRAC_SEED).
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDC0FFEEull;

// Bad caller input: dimension mismatches, violated preconditions, malformed
// spec strings. Maps to CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A requested family/embedding the library deliberately does not build
// (exceptional algebras, su*(2n)). Maps to CLI exit code 3.
struct UnsupportedConstruction : std::runtime_error {
  explicit UnsupportedConstruction(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace cdirac

#endif
