#include "knstat/arith.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace knstat {

namespace {

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1U) {
            result = mulmod64(result, base, m);
        }
        base = mulmod64(base, base, m);
        e >>= 1U;
    }
    return result;
}

// Brent's variant; n must be odd composite.
std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t x) { return (mulmod64(x, x, n) + c) % n; };
        std::uint64_t y = 2;
        std::uint64_t x = 2;
        std::uint64_t g = 1;
        std::uint64_t q = 1;
        std::uint64_t ys = 2;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = f(y);
            }
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) {
            return g;
        }
    }
}

void factor_u64(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) {
        return;
    }
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

// base^k <= bound without overflow.
bool power_at_most(u128 base, int k, u128 bound) {
    u128 acc = 1;
    for (int i = 0; i < k; ++i) {
        if (base != 0 && acc > bound / base) {
            return false;
        }
        acc *= base;
    }
    return acc <= bound;
}

} // namespace

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("128-bit addition overflow");
    }
    return r;
}

i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError("128-bit subtraction overflow");
    }
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("128-bit multiplication overflow");
    }
    return r;
}

i128 checked_pow(i128 base, unsigned exponent) {
    i128 r = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        r = checked_mul(r, base);
    }
    return r;
}

std::string to_string(i128 v) {
    if (v == 0) {
        return "0";
    }
    bool negative = v < 0;
    u128 mag = negative ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
    std::string digits;
    while (mag > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (negative) {
        digits.push_back('-');
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

i128 parse_i128(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("empty integer");
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        ++i;
    }
    if (i == text.size()) {
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    }
    i128 value = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
        }
        value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
    }
    return value;
}

i128 parse_exact_bound(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> i128 {
        throw std::invalid_argument("malformed bound '" + original + "'");
    };
    if (!text.empty() && text[0] == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return fail();
    }
    std::string mantissa;
    std::size_t i = 0;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        char c = text[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa.push_back(c);
            if (seen_point) {
                ++fraction_digits;
            }
        } else {
            return fail();
        }
    }
    if (mantissa.empty()) {
        return fail();
    }
    long exponent = 0;
    if (i < text.size()) {
        std::string_view exp_text = text.substr(i + 1);
        if (!exp_text.empty() && exp_text[0] == '+') {
            exp_text.remove_prefix(1);
        }
        if (exp_text.empty() || exp_text.size() > 3) {
            return fail();
        }
        for (char c : exp_text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                return fail();
            }
            exponent = exponent * 10 + (c - '0');
        }
    }
    i128 value = parse_i128(mantissa);
    long shift = exponent - static_cast<long>(fraction_digits);
    for (; shift > 0; --shift) {
        value = checked_mul(value, 10);
    }
    for (; shift < 0; ++shift) {
        if (value % 10 != 0) {
            throw std::invalid_argument("bound '" + original + "' is not an integer");
        }
        value /= 10;
    }
    return value;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

int valuation(i128 n, std::int64_t p) {
    if (n == 0) {
        throw std::invalid_argument("valuation of zero is infinite");
    }
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("valuation base " + std::to_string(p) + " is not prime");
    }
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

bool is_kth_power_free(i128 n, int k) {
    if (n == 0) {
        throw std::invalid_argument("is_kth_power_free: n must be nonzero");
    }
    if (k < 2) {
        throw std::invalid_argument("is_kth_power_free: k must be at least 2");
    }
    u128 m = static_cast<u128>(abs128(n));
    auto strip = [&](u128 d) {
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        return e;
    };
    if (strip(2) >= k) {
        return false;
    }
    // Any prime q with q^k | m satisfies q^k <= m once smaller primes are gone.
    for (u128 d = 3; power_at_most(d, k, m); d += 2) {
        if (m % d == 0 && strip(d) >= k) {
            return false;
        }
    }
    return true;
}

u128 integer_root(u128 n, int k) {
    if (k < 1) {
        throw std::invalid_argument("integer_root: k must be positive");
    }
    if (k == 1 || n < 2) {
        return n;
    }
    // integer Newton from an upper bound 2^ceil(bits/k); decreases monotonically
    int bits = 0;
    for (u128 t = n; t != 0; t >>= 1U) {
        ++bits;
    }
    u128 x = u128{1} << static_cast<unsigned>((bits + k - 1) / k);
    const auto kk = static_cast<u128>(k);
    for (;;) {
        // x^(k-1), saturated once it exceeds n so the quotient is 0
        u128 p = 1;
        for (int i = 1; i < k && p != 0; ++i) {
            p = p > n / x ? 0 : p * x;
        }
        const u128 q = p == 0 ? 0 : n / p;
        if (q >= x) {
            break;
        }
        // floor(((k-1)x + q) / k) without the wide sum
        x -= (x - q + kk - 1) / kk;
    }
    while (!power_at_most(x, k, n)) {
        --x;
    }
    return x;
}

bool is_perfect_power(i128 n, int k) {
    if (k < 2) {
        throw std::invalid_argument("is_perfect_power: k must be at least 2");
    }
    if (n < 0 && k % 2 == 0) {
        return false;
    }
    u128 mag = static_cast<u128>(abs128(n));
    u128 root = integer_root(mag, k);
    u128 power = 1;
    for (int i = 0; i < k; ++i) {
        power *= root; // root^k <= mag, no overflow
    }
    return power == mag;
}

std::vector<std::pair<i128, int>> factorize(i128 n) {
    if (n == 0) {
        throw std::invalid_argument("factorize: n must be nonzero");
    }
    u128 m = static_cast<u128>(abs128(n));
    std::vector<std::pair<i128, int>> out;
    auto take = [&](u128 d) {
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (e > 0) {
            out.emplace_back(static_cast<i128>(d), e);
        }
    };
    take(2);
    // Wide cofactors need trial division to 2^20; once m fits in 64 bits a
    // short pass is enough and Pollard rho takes over.
    constexpr u128 kU64Max = std::numeric_limits<std::uint64_t>::max();
    for (u128 d = 3; d < (u128{1} << 20) && d * d <= m; d += 2) {
        if (m <= kU64Max && d > 4096) {
            break;
        }
        take(d);
    }
    if (m == 1) {
        return out;
    }
    if (m > kU64Max) {
        throw std::domain_error("factorize: cofactor " + to_string(static_cast<i128>(m)) +
                                " exceeds 64 bits");
    }
    std::vector<std::uint64_t> primes;
    factor_u64(static_cast<std::uint64_t>(m), primes);
    std::sort(primes.begin(), primes.end());
    for (std::uint64_t q : primes) {
        if (!out.empty() && out.back().first == static_cast<i128>(q)) {
            ++out.back().second;
        } else {
            out.emplace_back(static_cast<i128>(q), 1);
        }
    }
    return out;
}

Rational::Rational(i128 num, i128 den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    num_ = num / g;
    den_ = den / g;
}

double Rational::to_double() const {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
    if (den_ == 1) {
        return knstat::to_string(num_);
    }
    return knstat::to_string(num_) + "/" + knstat::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return {checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
            checked_mul(a.den_, b.den_)};
}

Rational operator-(const Rational& a, const Rational& b) {
    return {checked_sub(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
            checked_mul(a.den_, b.den_)};
}

Rational operator*(const Rational& a, const Rational& b) {
    i128 g1 = gcd128(a.num_, b.den_);
    i128 g2 = gcd128(b.num_, a.den_);
    if (g1 == 0) {
        g1 = 1;
    }
    if (g2 == 0) {
        g2 = 1;
    }
    return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) {
        throw std::domain_error("rational division by zero");
    }
    return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = checked_mul(a.num_, b.den_);
    i128 rhs = checked_mul(b.num_, a.den_);
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

int valuation(const Rational& q, std::int64_t p) {
    if (q.num() == 0) {
        throw std::invalid_argument("valuation of zero is infinite");
    }
    return valuation(q.num(), p) - valuation(q.den(), p);
}

KFreeTable::KFreeTable(std::uint64_t limit, int k, std::vector<std::uint8_t> flags)
    : limit_(limit), k_(k), flags_(std::move(flags)) {
    if (flags_.size() != limit_) {
        throw std::invalid_argument("KFreeTable: flag count does not match limit");
    }
}

std::uint64_t KFreeTable::count() const {
    return static_cast<std::uint64_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

KFreeSieve::KFreeSieve(std::uint64_t limit, int k) : limit_(limit), k_(k) {
    if (limit < 1) {
        throw std::invalid_argument("KFreeSieve: limit must be positive");
    }
    if (k < 2) {
        throw std::invalid_argument("KFreeSieve: k must be at least 2");
    }
    auto base = static_cast<std::uint64_t>(integer_root(limit, k));
    std::vector<std::uint8_t> composite(base + 1, 0);
    for (std::uint64_t p = 2; p <= base; ++p) {
        if (composite[p] != 0) {
            continue;
        }
        for (std::uint64_t q = p * p; q <= base; q += p) {
            composite[q] = 1;
        }
        u128 pk = 1;
        for (int i = 0; i < k; ++i) {
            pk *= p;
        }
        prime_powers_.push_back(static_cast<std::uint64_t>(pk));
    }
}

void KFreeSieve::mark(std::uint64_t lo, std::span<std::uint8_t> out) const {
    if (lo < 1 || (out.size() > 0 && lo + out.size() - 1 > limit_)) {
        throw std::out_of_range("KFreeSieve::mark: window outside [1, limit]");
    }
    std::fill(out.begin(), out.end(), std::uint8_t{1});
    const std::uint64_t hi = lo + out.size();
    for (std::uint64_t q : prime_powers_) {
        std::uint64_t start = (lo + q - 1) / q * q;
        for (std::uint64_t j = start; j < hi; j += q) {
            out[j - lo] = 0;
        }
    }
}

KFreeTable kfree_sieve(std::uint64_t limit, int k) {
    KFreeSieve sieve(limit, k);
    std::vector<std::uint8_t> flags(limit);
    for (std::uint64_t lo = 1; lo <= limit; lo += kDefaultSegment) {
        std::uint64_t len = std::min<std::uint64_t>(kDefaultSegment, limit - lo + 1);
        sieve.mark(lo, std::span<std::uint8_t>(flags.data() + (lo - 1), len));
    }
    return {limit, k, std::move(flags)};
}

} // namespace knstat
