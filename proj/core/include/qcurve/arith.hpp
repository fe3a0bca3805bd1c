#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace qcurve {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);
bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
int legendre(u64 a, u64 p);
// smallest root of t^2 = a mod p, p odd prime, a a square
u64 sqrtmod(u64 a, u64 p);

u64 mpz_mod_u64(const mpz_class& a, u64 m);
int valuation(const mpz_class& n, u64 p);  // n != 0
bool is_square(const mpz_class& n, mpz_class* root = nullptr);
bool is_squarefree(long n);
mpz_class isqrt(const mpz_class& n);

// prime factorisation of |n|, n != 0
std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n);
std::vector<u64> prime_divisors(const mpz_class& n);

}  // namespace qcurve
