#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "knstat/arith.hpp"

namespace knstat {

class SingularModelError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
struct WeierstrassModel {
    i128 a1 = 0;
    i128 a2 = 0;
    i128 a3 = 0;
    i128 a4 = 0;
    i128 a6 = 0;

    friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;

    /// "a1,a2,a3,a4,a6"
    std::string to_string() const;
    static WeierstrassModel parse(std::string_view text);
};

/// y^2 = x^3 + A x + B.
struct ShortModel {
    i128 A = 0;
    i128 B = 0;

    friend bool operator==(const ShortModel&, const ShortModel&) = default;

    WeierstrassModel embed() const { return {0, 0, 0, A, B}; }

    /// "A,B"
    std::string to_string() const;
    static ShortModel parse(std::string_view text);
};

struct Invariants {
    i128 b2 = 0;
    i128 b4 = 0;
    i128 b6 = 0;
    i128 b8 = 0;
    i128 c4 = 0;
    i128 c6 = 0;
    i128 discriminant = 0;
    Rational j;
};

/// Standard b/c invariants and discriminant; j is left unset and the model
/// is not checked for singularity.
Invariants raw_invariants(const WeierstrassModel& m);

/// Throws SingularModelError when the discriminant vanishes.
Invariants invariants(const WeierstrassModel& m);

Rational j_invariant(const WeierstrassModel& m);
Rational j_invariant(const ShortModel& m);

/// max(4|A|^3, 27 B^2).
i128 height(const ShortModel& m);

} // namespace knstat
