#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knstat/kodaira.hpp"
#include "knstat/weierstrass.hpp"

namespace knstat {

enum class ReductionClass { Good, Multiplicative, Additive };

std::string to_string(ReductionClass r);

/// Local reduction data of a Weierstrass model at one prime.
///
/// minimal_model is the input itself when was_minimal holds; otherwise it is
/// the model obtained after the translations and p-rescalings the algorithm
/// applied, which is integral and p-minimal. All translation parameters are
/// reduced into [0, p^k) so the returned model is deterministic.
struct LocalData {
    std::int64_t p = 2;
    KodairaType kodaira;
    ReductionClass reduction = ReductionClass::Good;
    int conductor_exponent = 0;
    int tamagawa = 1;
    bool was_minimal = true;
    WeierstrassModel minimal_model;
    int scaling_exponent = 0;
    int discriminant_valuation = 0; // v_p of the minimal discriminant
    bool split = false;             // meaningful for multiplicative reduction only
};

/// Tate's algorithm at p. Non-minimal models are rescaled by p and the
/// algorithm restarts until a minimal model is reached. Throws
/// SingularModelError for singular input and std::invalid_argument for a
/// non-prime p. Cubic and quadratic root searches scan 0..p-1, so very large
/// primes are slow but still exact.
LocalData tate(const WeierstrassModel& m, std::int64_t p);

ReductionClass reduction_class(const WeierstrassModel& m, std::int64_t p);

bool is_minimal_at(const WeierstrassModel& m, std::int64_t p);

struct GlobalReduction {
    std::vector<LocalData> local; // one entry per prime dividing the discriminant
    i128 conductor = 1;
};

/// Runs tate() at every prime dividing the discriminant of m and multiplies
/// the local conductors. Factoring uses knstat::factorize, so a discriminant
/// with a cofactor above 2^64 and no factor below 2^20 is rejected.
GlobalReduction global_reduction(const WeierstrassModel& m);

} // namespace knstat
