#pragma once

#include <cstdint>
#include <vector>

namespace limsup {

inline constexpr std::uint64_t kTotientSieveCap = 10'000'000;

// phi(0..n) by a linear sieve; n is capped at kTotientSieveCap.
std::vector<std::uint32_t> totient_table(std::uint64_t n);

// phi(q) by trial division.
std::uint64_t totient(std::uint64_t q);

}  // namespace limsup
