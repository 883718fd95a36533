#include "limsup/number_theory.hpp"

#include "limsup/errors.hpp"

namespace limsup {

std::vector<std::uint32_t> totient_table(std::uint64_t n) {
  if (n > kTotientSieveCap) throw SizeError("totient sieve is capped at 10^7");
  std::vector<std::uint32_t> phi(n + 1, 0);
  std::vector<std::uint32_t> primes;
  if (n >= 1) phi[1] = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (phi[i] == 0) {
      phi[i] = static_cast<std::uint32_t>(i - 1);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > n) break;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  return phi;
}

std::uint64_t totient(std::uint64_t q) {
  if (q == 0) return 0;
  std::uint64_t result = q;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    result -= result / p;
  }
  if (q > 1) result -= result / q;
  return result;
}

}  // namespace limsup
