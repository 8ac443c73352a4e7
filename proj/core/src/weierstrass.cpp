#include "knstat/weierstrass.hpp"

#include <vector>

namespace knstat {

namespace {

std::vector<i128> parse_list(std::string_view text, std::size_t expected, const char* what) {
    std::vector<i128> values;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view field = text.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start);
        while (!field.empty() && field.front() == ' ') {
            field.remove_prefix(1);
        }
        while (!field.empty() && field.back() == ' ') {
            field.remove_suffix(1);
        }
        values.push_back(parse_i128(field));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (values.size() != expected) {
        throw std::invalid_argument(std::string(what) + " expects " + std::to_string(expected) +
                                    " comma-separated integers, got '" + std::string(text) + "'");
    }
    return values;
}

} // namespace

std::string WeierstrassModel::to_string() const {
    return knstat::to_string(a1) + "," + knstat::to_string(a2) + "," + knstat::to_string(a3) +
           "," + knstat::to_string(a4) + "," + knstat::to_string(a6);
}

WeierstrassModel WeierstrassModel::parse(std::string_view text) {
    auto v = parse_list(text, 5, "Weierstrass model");
    return {v[0], v[1], v[2], v[3], v[4]};
}

std::string ShortModel::to_string() const {
    return knstat::to_string(A) + "," + knstat::to_string(B);
}

ShortModel ShortModel::parse(std::string_view text) {
    auto v = parse_list(text, 2, "short model");
    return {v[0], v[1]};
}

Invariants raw_invariants(const WeierstrassModel& m) {
    const auto mul = checked_mul;
    const auto add = checked_add;
    const auto sub = checked_sub;
    Invariants inv;
    inv.b2 = add(mul(m.a1, m.a1), mul(4, m.a2));
    inv.b4 = add(mul(m.a1, m.a3), mul(2, m.a4));
    inv.b6 = add(mul(m.a3, m.a3), mul(4, m.a6));
    // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
    inv.b8 = sub(add(sub(add(mul(mul(m.a1, m.a1), m.a6), mul(mul(4, m.a2), m.a6)),
                         mul(mul(m.a1, m.a3), m.a4)),
                     mul(m.a2, mul(m.a3, m.a3))),
                 mul(m.a4, m.a4));
    inv.c4 = sub(mul(inv.b2, inv.b2), mul(24, inv.b4));
    inv.c6 = add(sub(mul(-1, mul(inv.b2, mul(inv.b2, inv.b2))), mul(-36, mul(inv.b2, inv.b4))),
                 mul(-216, inv.b6));
    // Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    inv.discriminant = add(sub(sub(mul(-1, mul(mul(inv.b2, inv.b2), inv.b8)),
                                   mul(8, mul(inv.b4, mul(inv.b4, inv.b4)))),
                               mul(27, mul(inv.b6, inv.b6))),
                           mul(9, mul(inv.b2, mul(inv.b4, inv.b6))));
    return inv;
}

Invariants invariants(const WeierstrassModel& m) {
    Invariants inv = raw_invariants(m);
    if (inv.discriminant == 0) {
        throw SingularModelError("singular Weierstrass model [" + m.to_string() + "]");
    }
    inv.j = Rational(checked_pow(inv.c4, 3), inv.discriminant);
    return inv;
}

Rational j_invariant(const WeierstrassModel& m) {
    return invariants(m).j;
}

Rational j_invariant(const ShortModel& m) {
    i128 four_a3 = checked_mul(4, checked_pow(m.A, 3));
    i128 denom = checked_add(four_a3, checked_mul(27, checked_mul(m.B, m.B)));
    if (denom == 0) {
        throw SingularModelError("singular short model [" + m.to_string() + "]");
    }
    return Rational(checked_mul(1728, four_a3), denom);
}

i128 height(const ShortModel& m) {
    i128 a = checked_mul(4, checked_pow(abs128(m.A), 3));
    i128 b = checked_mul(27, checked_mul(m.B, m.B));
    return a > b ? a : b;
}

} // namespace knstat
