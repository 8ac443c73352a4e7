#include <doctest.h>

#include <random>
#include <set>

#include "knstat/tate.hpp"

using namespace knstat;

namespace {

using K = KodairaType;

int vp(i128 n, std::int64_t p) {
    return n == 0 ? 1000 : valuation(n, p);
}

// Random model whose coefficients carry random powers of p, so every
// Kodaira type and non-minimal inputs show up.
WeierstrassModel random_model(std::mt19937_64& rng, std::int64_t p, int max_exponent = 7) {
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> expo(0, max_exponent);
    auto draw = [&](int cap) {
        i128 v = coef(rng);
        for (int e = std::min(expo(rng), cap); e > 0; --e) {
            v *= p;
        }
        return v;
    };
    for (;;) {
        WeierstrassModel m{draw(2), draw(3), draw(4), draw(5), draw(7)};
        if (raw_invariants(m).discriminant != 0) {
            return m;
        }
    }
}

// Kodaira type at p >= 5 from valuations of c4, c6 and the minimal
// discriminant (classical table for residue characteristic >= 5).
K kodaira_from_valuations(const WeierstrassModel& minimal, std::int64_t p) {
    const auto inv = invariants(minimal);
    const int d = vp(inv.discriminant, p);
    const int c4 = vp(inv.c4, p);
    if (d == 0) {
        return K::I0();
    }
    if (c4 == 0) {
        return K::In(d);
    }
    if (3 * c4 < d) { // v(j) < 0: potentially multiplicative
        return K::InStar(d - 6);
    }
    switch (d) {
    case 2: return K::II();
    case 3: return K::III();
    case 4: return K::IV();
    case 6: return K::I0Star();
    case 8: return K::IVStar();
    case 9: return K::IIIStar();
    case 10: return K::IIStar();
    default: throw std::logic_error("impossible valuation pattern");
    }
}

bool tamagawa_admissible(const LocalData& d) {
    switch (d.kodaira.kind()) {
    case K::Kind::I0:
    case K::Kind::II:
    case K::Kind::IIStar: return d.tamagawa == 1;
    case K::Kind::III:
    case K::Kind::IIIStar: return d.tamagawa == 2;
    case K::Kind::IV:
    case K::Kind::IVStar: return d.tamagawa == 1 || d.tamagawa == 3;
    case K::Kind::I0Star: return d.tamagawa == 1 || d.tamagawa == 2 || d.tamagawa == 4;
    case K::Kind::InStar: return d.tamagawa == 2 || d.tamagawa == 4;
    case K::Kind::In:
        if (d.split) {
            return d.tamagawa == d.kodaira.index();
        }
        return d.tamagawa == (d.kodaira.index() % 2 == 0 ? 2 : 1);
    }
    return false;
}

} // namespace

TEST_CASE("reduction class") {
    CHECK(reduction_class({0, 0, 0, 0, 2}, 5) == ReductionClass::Good);
    CHECK(reduction_class({0, 0, 0, 1, 0}, 2) == ReductionClass::Additive);
    CHECK(reduction_class({0, 0, 0, 0, 2}, 3) == ReductionClass::Additive);
    CHECK(reduction_class({0, -1, 1, -10, -20}, 11) == ReductionClass::Multiplicative);
    // non-minimal input is classified on its minimal model: 16 = 2^4 * 1
    CHECK(reduction_class({0, 0, 0, 0, 16}, 2) == ReductionClass::Good);
}

TEST_CASE("tate on family models") {
    CHECK(tate({0, 0, 0, 1, 0}, 2).kodaira == K::II());
    CHECK(tate({0, 0, 0, -1, 0}, 2).kodaira == K::III());
    CHECK(tate({0, 0, 0, 0, 2}, 3).kodaira == K::II());

    auto d = tate({0, 0, 0, 0, 16}, 2);
    CHECK_FALSE(d.was_minimal);
    CHECK(d.scaling_exponent == 1);
    CHECK(d.minimal_model == WeierstrassModel{0, 0, 1, 0, 0});
    CHECK(d.kodaira == K::I0());
    CHECK(d.conductor_exponent == 0);

    auto e = tate({0, 0, 0, 0, -432}, 2);
    CHECK_FALSE(e.was_minimal);
    CHECK(e.minimal_model == WeierstrassModel{0, 0, 1, 0, -7});
}

TEST_CASE("minimality examples") {
    CHECK_FALSE(is_minimal_at({0, 0, 0, 16, 0}, 2));
    CHECK(is_minimal_at({0, 0, 0, 0, 48}, 2));
    CHECK_FALSE(is_minimal_at({0, 0, 0, 0, 16}, 2));
    CHECK_FALSE(is_minimal_at({0, 0, 0, 81, 0}, 3));
    CHECK(is_minimal_at({0, 0, 0, 81, 0}, 2));
}

TEST_CASE("11a1 and 37a1") {
    auto d = tate({0, -1, 1, -10, -20}, 11);
    CHECK(d.kodaira == K::In(5));
    CHECK(d.split);
    CHECK(d.tamagawa == 5);
    CHECK(d.conductor_exponent == 1);
    CHECK(global_reduction({0, -1, 1, -10, -20}).conductor == 11);

    auto g = global_reduction({0, 0, 1, -1, 0});
    CHECK(g.conductor == 37);
    REQUIRE(g.local.size() == 1);
    CHECK(g.local[0].kodaira == K::In(1));
    CHECK(g.local[0].tamagawa == 1);
}

TEST_CASE("conductors of the j = 0 and j = 1728 exceptional classes") {
    CHECK(global_reduction({0, 0, 1, 0, -7}).conductor == 27);
    CHECK(global_reduction({0, 0, 1, 0, 0}).conductor == 27);
    CHECK(global_reduction({0, 0, 0, 0, -27}).conductor == 36);
    CHECK(global_reduction({0, 0, 0, 0, 1}).conductor == 36);
    CHECK(global_reduction({0, 0, 0, -1, 0}).conductor == 32);
    CHECK(global_reduction({0, 0, 0, 4, 0}).conductor == 32);
    CHECK(global_reduction({0, 0, 0, -4, 0}).conductor == 64);
    CHECK(global_reduction({0, 0, 0, 1, 0}).conductor == 64);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(tate({0, 0, 0, 0, 0}, 2), SingularModelError);
    CHECK_THROWS_AS(tate({0, 0, 0, 1, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(tate({0, 0, 0, 1, 0}, 1), std::invalid_argument);
}

TEST_CASE("structural properties on random models") {
    std::mt19937_64 rng(2024);
    std::set<K::Kind> seen;
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
        for (int i = 0; i < 3000; ++i) {
            const auto m = random_model(rng, p);
            const auto d = tate(m, p);
            seen.insert(d.kodaira.kind());
            INFO("model " << m.to_string() << " p=" << p);

            CHECK(d.was_minimal == (d.scaling_exponent == 0));
            CHECK((d.kodaira == K::I0()) == (d.conductor_exponent == 0));
            CHECK((d.conductor_exponent <= 1) == (d.reduction != ReductionClass::Additive));
            CHECK(tamagawa_admissible(d));
            CHECK(d.discriminant_valuation == vp(invariants(d.minimal_model).discriminant, p));

            // v_p(Delta) falls by exactly 12 per rescaling
            CHECK(vp(invariants(m).discriminant, p) - d.discriminant_valuation ==
                  12 * d.scaling_exponent);

            // idempotence
            const auto again = tate(d.minimal_model, p);
            CHECK(again.was_minimal);
            CHECK(again.kodaira == d.kodaira);
            CHECK(again.conductor_exponent == d.conductor_exponent);
            CHECK(again.tamagawa == d.tamagawa);

            if (d.reduction == ReductionClass::Multiplicative) {
                CHECK(d.kodaira.index() == d.discriminant_valuation);
                CHECK(-valuation(j_invariant(m), p) == d.kodaira.index());
            }
            if (p >= 5) {
                CHECK(d.kodaira == kodaira_from_valuations(d.minimal_model, p));
                if (d.reduction == ReductionClass::Additive) {
                    CHECK(d.conductor_exponent == 2);
                }
            }
        }
    }
    // the generator reaches every kind of fibre
    CHECK(seen.size() == 10);
}

TEST_CASE("rescaled models restore the original data") {
    std::mt19937_64 rng(99);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int i = 0; i < 500; ++i) {
            const auto m = random_model(rng, p, 4);
            const auto base = tate(m, p);
            const i128 q = p;
            const WeierstrassModel scaled{m.a1 * q, m.a2 * q * q, m.a3 * q * q * q,
                                          m.a4 * q * q * q * q, m.a6 * q * q * q * q * q * q};
            INFO("scaled " << scaled.to_string() << " p=" << p);
            const auto d = tate(scaled, p);
            CHECK(d.scaling_exponent == base.scaling_exponent + 1);
            CHECK(d.kodaira == base.kodaira);
            CHECK(d.tamagawa == base.tamagawa);
            CHECK(d.conductor_exponent == base.conductor_exponent);
        }
    }
}

TEST_CASE("large prime uses the same loops") {
    // y^2 = x^3 + p^2 has type IV at p, p = 10007
    const i128 p = 10007;
    auto d = tate({0, 0, 0, 0, p * p}, 10007);
    CHECK(d.kodaira == K::IV());
    CHECK(d.conductor_exponent == 2);
}
