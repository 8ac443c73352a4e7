#pragma once

// Exact integer utilities: 128-bit checked arithmetic, p-adic valuations,
// power tests, exact rationals and segmented k-power-free sieves.
//
// All values are signed 128-bit. Every operation that could exceed that width
// throws OverflowError instead of wrapping; callers in this library never
// need more than ~2^80 (heights up to 10^18 give |Delta| around 10^19.5 and
// j-invariant numerators around 10^23).

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knstat {

using i128 = __int128;
using u128 = unsigned __int128;

class OverflowError : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 checked_pow(i128 base, unsigned exponent);

inline i128 abs128(i128 v) {
    if (v == -v && v != 0) {
        throw OverflowError("abs of INT128_MIN");
    }
    return v < 0 ? -v : v;
}

/// Euclidean remainder in [0, m).
inline i128 mod_floor(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

std::string to_string(i128 v);

/// Parses an optionally signed decimal integer; rejects anything else.
i128 parse_i128(std::string_view text);

/// Parses a non-negative bound given either as a plain integer ("1000000")
/// or in exact scientific form ("1e18", "2.5e6"). The result must be an
/// integer; "1.5e0" is rejected.
i128 parse_exact_bound(std::string_view text);

bool is_prime(std::uint64_t n);

/// Largest e with p^e | n. Throws std::invalid_argument for n == 0 or
/// non-prime p.
int valuation(i128 n, std::int64_t p);

/// |n| has no prime factor to the k-th power. Throws for n == 0 or k < 2.
bool is_kth_power_free(i128 n, int k);

/// floor(n^(1/k)) for n >= 0, k >= 1, exact.
u128 integer_root(u128 n, int k);

/// n == m^k for some integer m. Negative n only for odd k; 0 and 1 qualify.
bool is_perfect_power(i128 n, int k);

/// Prime factorisation of |n| for n != 0. Trial division to 2^20, then
/// Miller-Rabin and Pollard rho on a cofactor below 2^64. A larger cofactor
/// with no small factor throws std::domain_error.
std::vector<std::pair<i128, int>> factorize(i128 n);

/// Exact reduced fraction with positive denominator.
class Rational {
  public:
    Rational() = default;
    Rational(i128 num) : num_(num), den_(1) {} // NOLINT(google-explicit-constructor)
    Rational(i128 num, i128 den);

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    double to_double() const;
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
    i128 num_ = 0;
    i128 den_ = 1;
};

/// p-adic valuation of a nonzero rational.
int valuation(const Rational& q, std::int64_t p);

/// Flags over 1..limit; flags[n] is true iff n is k-power-free.
class KFreeTable {
  public:
    KFreeTable(std::uint64_t limit, int k, std::vector<std::uint8_t> flags);

    std::uint64_t limit() const { return limit_; }
    int k() const { return k_; }
    bool operator[](std::uint64_t n) const { return flags_[n - 1] != 0; }
    std::uint64_t count() const;

  private:
    std::uint64_t limit_;
    int k_;
    std::vector<std::uint8_t> flags_;
};

/// Segmented sieve of k-power-free integers. Construction sieves the base
/// primes up to limit^(1/k); mark() fills an arbitrary window [lo, lo+len)
/// inside [1, limit] in O(len) memory. Windows are independent, so disjoint
/// windows may be marked concurrently from one shared instance.
class KFreeSieve {
  public:
    KFreeSieve(std::uint64_t limit, int k);

    std::uint64_t limit() const { return limit_; }
    int k() const { return k_; }

    /// out[i] = 1 iff lo + i is k-power-free.
    void mark(std::uint64_t lo, std::span<std::uint8_t> out) const;

  private:
    std::uint64_t limit_;
    int k_;
    std::vector<std::uint64_t> prime_powers_; // p^k for base primes p
};

/// Full table built window by window.
KFreeTable kfree_sieve(std::uint64_t limit, int k);

inline constexpr std::uint64_t kDefaultSegment = std::uint64_t{1} << 16;

} // namespace knstat
