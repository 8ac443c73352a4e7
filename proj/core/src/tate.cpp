#include "knstat/tate.hpp"

#include <climits>
#include <optional>
#include <stdexcept>

namespace knstat {

namespace {

constexpr int kInfiniteValuation = INT_MAX / 2;

// Quadratic roots are found by scanning residues below this bound and by
// Euler's criterion above it.
constexpr std::int64_t kSearchBound = 64;

int val(i128 n, std::int64_t p) {
    if (n == 0) {
        return kInfiniteValuation;
    }
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

i128 md(i128 a, std::int64_t p) {
    return mod_floor(a, p);
}

i128 mulmod(i128 a, i128 b, std::int64_t p) {
    return md(md(a, p) * md(b, p), p);
}

i128 powmod(i128 base, std::uint64_t e, std::int64_t p) {
    i128 result = 1;
    base = md(base, p);
    while (e > 0) {
        if (e & 1U) {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1U;
    }
    return result;
}

i128 inverse(i128 a, std::int64_t p) {
    if (md(a, p) == 0) {
        throw std::logic_error("tate: inverting zero mod p");
    }
    return powmod(a, static_cast<std::uint64_t>(p - 2), p);
}

bool divides_pow(i128 x, std::int64_t p, int e) {
    return val(x, p) >= e;
}

i128 exact_div(i128 x, i128 d) {
    if (x % d != 0) {
        throw std::logic_error("tate: expected exact division");
    }
    return x / d;
}

WeierstrassModel rst(const WeierstrassModel& m, i128 r, i128 s, i128 t) {
    const auto mul = checked_mul;
    const auto add = checked_add;
    const auto sub = checked_sub;
    WeierstrassModel out;
    out.a1 = add(m.a1, mul(2, s));
    out.a2 = sub(add(sub(m.a2, mul(s, m.a1)), mul(3, r)), mul(s, s));
    out.a3 = add(add(m.a3, mul(r, m.a1)), mul(2, t));
    // a4 - s a3 + 2 r a2 - (t + r s) a1 + 3 r^2 - 2 s t
    out.a4 = sub(add(sub(add(sub(m.a4, mul(s, m.a3)), mul(mul(2, r), m.a2)),
                         mul(add(t, mul(r, s)), m.a1)),
                     mul(3, mul(r, r))),
                 mul(mul(2, s), t));
    // a6 + r a4 + r^2 a2 + r^3 - t a3 - t^2 - r t a1
    out.a6 = sub(sub(sub(add(add(add(m.a6, mul(r, m.a4)), mul(mul(r, r), m.a2)),
                             mul(r, mul(r, r))),
                         mul(t, m.a3)),
                     mul(t, t)),
                 mul(mul(r, t), m.a1));
    return out;
}

// a x^2 + b x + c has a root in F_p.
bool quadratic_has_root(i128 a, i128 b, i128 c, std::int64_t p) {
    a = md(a, p);
    b = md(b, p);
    c = md(c, p);
    if (p < kSearchBound) {
        for (i128 x = 0; x < p; ++x) {
            if (md(mulmod(a, mulmod(x, x, p), p) + mulmod(b, x, p) + c, p) == 0) {
                return true;
            }
        }
        return false;
    }
    if (a == 0) {
        return b != 0 || c == 0;
    }
    i128 disc = md(mulmod(b, b, p) - mulmod(4, mulmod(a, c, p), p), p);
    return disc == 0 || powmod(disc, static_cast<std::uint64_t>((p - 1) / 2), p) == 1;
}

// Root of a x^2 + b x + c, which is known to have a double root mod p.
i128 quadratic_double_root(i128 a, i128 b, i128 c, std::int64_t p) {
    if (p < kSearchBound) {
        for (i128 x = 0; x < p; ++x) {
            if (md(mulmod(a, mulmod(x, x, p), p) + mulmod(b, x, p) + c, p) == 0) {
                return x;
            }
        }
        throw std::logic_error("tate: expected a double root");
    }
    return md(-mulmod(b, inverse(2 * md(a, p), p), p), p);
}

struct Cubic {
    i128 b, c, d; // T^3 + b T^2 + c T + d
    i128 eval(i128 x, std::int64_t p) const {
        return md(mulmod(mulmod(x, x, p), x, p) + mulmod(b, mulmod(x, x, p), p) +
                      mulmod(c, x, p) + d,
                  p);
    }
    i128 derivative(i128 x, std::int64_t p) const {
        return md(mulmod(3, mulmod(x, x, p), p) + mulmod(2 * md(b, p), x, p) + c, p);
    }
};

struct PassResult {
    KodairaType kodaira;
    ReductionClass reduction = ReductionClass::Additive;
    int conductor_exponent = 0;
    int tamagawa = 1;
    int disc_valuation = 0;
    bool split = false;
};

struct Pass {
    std::optional<PassResult> result;
    WeierstrassModel rescaled; // set when result is empty
};

// Translation moving the singular point of the reduction to (0,0).
std::pair<i128, i128> singular_point(const WeierstrassModel& c, const Invariants& inv,
                                     std::int64_t p) {
    if (p <= 3) {
        const i128 a1 = md(c.a1, p), a2 = md(c.a2, p), a3 = md(c.a3, p);
        const i128 a4 = md(c.a4, p), a6 = md(c.a6, p);
        for (i128 x = 0; x < p; ++x) {
            for (i128 y = 0; y < p; ++y) {
                i128 f = md(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6, p);
                i128 fx = md(a1 * y - 3 * x * x - 2 * a2 * x - a4, p);
                i128 fy = md(2 * y + a1 * x + a3, p);
                if (f == 0 && fx == 0 && fy == 0) {
                    return {x, y};
                }
            }
        }
        throw std::logic_error("tate: no singular point on a singular reduction");
    }
    i128 r = 0;
    if (md(inv.c4, p) == 0) {
        r = md(-mulmod(inv.b2, inverse(12, p), p), p);
    } else {
        i128 num = md(inv.c6, p) + mulmod(inv.b2, inv.c4, p);
        r = md(-mulmod(num, inverse(mulmod(12, inv.c4, p), p), p), p);
    }
    i128 t = md(-mulmod(md(c.a1, p) * r + md(c.a3, p), inverse(2, p), p), p);
    return {r, t};
}

bool step6_ready(const WeierstrassModel& c, std::int64_t p) {
    return divides_pow(c.a1, p, 1) && divides_pow(c.a2, p, 1) && divides_pow(c.a3, p, 2) &&
           divides_pow(c.a4, p, 2) && divides_pow(c.a6, p, 3);
}

Pass run_pass(WeierstrassModel c, std::int64_t p) {
    Invariants inv = raw_invariants(c);
    const int vd = val(inv.discriminant, p);
    PassResult res;
    res.disc_valuation = vd;
    if (vd == 0) {
        res.kodaira = KodairaType::I0();
        res.reduction = ReductionClass::Good;
        return {res, {}};
    }

    // Step 2: singular point to (0,0).
    auto [r0, t0] = singular_point(c, inv, p);
    c = rst(c, r0, 0, t0);
    if (!divides_pow(c.a3, p, 1) || !divides_pow(c.a4, p, 1) || !divides_pow(c.a6, p, 1)) {
        throw std::logic_error("tate: singular point translation failed");
    }
    inv = raw_invariants(c);
    if (md(inv.b2, p) != 0) {
        res.kodaira = KodairaType::In(vd);
        res.reduction = ReductionClass::Multiplicative;
        res.conductor_exponent = 1;
        res.split = quadratic_has_root(1, c.a1, -c.a2, p);
        res.tamagawa = res.split ? vd : (vd % 2 == 1 ? 1 : 2);
        return {res, {}};
    }

    // Steps 3-5.
    if (!divides_pow(c.a6, p, 2)) {
        res.kodaira = KodairaType::II();
        res.conductor_exponent = vd;
        return {res, {}};
    }
    if (!divides_pow(inv.b8, p, 3)) {
        res.kodaira = KodairaType::III();
        res.conductor_exponent = vd - 1;
        res.tamagawa = 2;
        return {res, {}};
    }
    if (!divides_pow(inv.b6, p, 3)) {
        res.kodaira = KodairaType::IV();
        res.conductor_exponent = vd - 2;
        res.tamagawa = quadratic_has_root(1, exact_div(c.a3, p), -exact_div(c.a6, i128{p} * p), p) ? 3 : 1;
        return {res, {}};
    }

    // Step 6: p | a1, a2; p^2 | a3, a4; p^3 | a6.
    if (p <= 3) {
        bool found = false;
        const i128 p3 = i128{p} * p * p;
        for (i128 s = 0; s < p && !found; ++s) {
            for (i128 t = 0; t < p3 && !found; ++t) {
                WeierstrassModel cand = rst(c, 0, s, t);
                if (step6_ready(cand, p)) {
                    c = cand;
                    found = true;
                }
            }
        }
        if (!found) {
            throw std::logic_error("tate: no step-6 translation");
        }
    } else {
        i128 s = md(-mulmod(c.a1, inverse(2, p), p), p);
        c = rst(c, 0, s, 0);
        const i128 p2 = i128{p} * p;
        i128 t = mod_floor(checked_mul(-mod_floor(c.a3, p2), (p2 + 1) / 2), p2);
        c = rst(c, 0, 0, t);
        if (!step6_ready(c, p)) {
            throw std::logic_error("tate: step-6 translation failed");
        }
    }

    const i128 pp = i128{p} * p;
    Cubic cubic{exact_div(c.a2, p), exact_div(c.a4, pp), exact_div(c.a6, pp * p)};
    const i128 b = cubic.b;
    const i128 cc = cubic.c;
    const i128 d = cubic.d;
    // w is minus the discriminant of the cubic; x vanishes with w iff the
    // repeated root is triple. Both identities hold in every characteristic.
    const i128 w = md(27 * mulmod(d, d, p) - mulmod(mulmod(b, b, p), mulmod(cc, cc, p), p) +
                          4 * mulmod(mulmod(b, mulmod(b, b, p), p), d, p) -
                          18 * mulmod(b, mulmod(cc, d, p), p) +
                          4 * mulmod(cc, mulmod(cc, cc, p), p),
                      p);
    const i128 x = md(3 * md(cc, p) - mulmod(b, b, p), p);

    if (w != 0) {
        int roots = 0;
        for (i128 a = 0; a < p; ++a) {
            if (cubic.eval(a, p) == 0) {
                ++roots;
            }
        }
        res.kodaira = KodairaType::I0Star();
        res.conductor_exponent = vd - 4;
        res.tamagawa = 1 + roots;
        return {res, {}};
    }

    if (x != 0) {
        // Step 7: double root to 0, then alternate y- and x-translations.
        std::optional<i128> alpha;
        for (i128 a = 0; a < p && !alpha; ++a) {
            if (cubic.eval(a, p) == 0 && cubic.derivative(a, p) == 0) {
                alpha = a;
            }
        }
        if (!alpha) {
            throw std::logic_error("tate: cubic double root not found");
        }
        c = rst(c, checked_mul(p, *alpha), 0, 0);
        int ix = 3;
        int iy = 3;
        i128 mx = pp;
        i128 my = pp;
        while (true) {
            i128 a3t = exact_div(c.a3, my);
            i128 a6t = exact_div(c.a6, checked_mul(mx, my));
            if (md(mulmod(a3t, a3t, p) + 4 * md(a6t, p), p) != 0) {
                res.tamagawa = quadratic_has_root(1, a3t, -a6t, p) ? 4 : 2;
                break;
            }
            i128 y0 = quadratic_double_root(1, a3t, -a6t, p);
            c = rst(c, 0, 0, checked_mul(my, y0));
            my = checked_mul(my, p);
            ++iy;
            i128 a2t = exact_div(c.a2, p);
            i128 a4t = exact_div(c.a4, checked_mul(p, mx));
            a6t = exact_div(c.a6, checked_mul(mx, my));
            if (md(mulmod(a4t, a4t, p) - 4 * mulmod(a2t, a6t, p), p) != 0) {
                res.tamagawa = quadratic_has_root(a2t, a4t, a6t, p) ? 4 : 2;
                break;
            }
            i128 x0 = quadratic_double_root(a2t, a4t, a6t, p);
            c = rst(c, checked_mul(mx, x0), 0, 0);
            mx = checked_mul(mx, p);
            ++ix;
        }
        const int n = ix + iy - 5;
        res.kodaira = KodairaType::InStar(n);
        res.conductor_exponent = vd - 4 - n;
        return {res, {}};
    }

    // Step 8: triple root to 0.
    std::optional<i128> alpha;
    for (i128 a = 0; a < p && !alpha; ++a) {
        if (cubic.eval(a, p) == 0) {
            alpha = a;
        }
    }
    if (!alpha) {
        throw std::logic_error("tate: cubic triple root not found");
    }
    c = rst(c, checked_mul(p, *alpha), 0, 0);
    i128 a3t = exact_div(c.a3, pp);
    i128 a6t = exact_div(c.a6, pp * pp);
    if (md(mulmod(a3t, a3t, p) + 4 * md(a6t, p), p) != 0) {
        res.kodaira = KodairaType::IVStar();
        res.conductor_exponent = vd - 6;
        res.tamagawa = quadratic_has_root(1, a3t, -a6t, p) ? 3 : 1;
        return {res, {}};
    }

    // Step 9: y -> y - t with p^3 | a3, p^5 | a6 afterwards.
    i128 y0 = quadratic_double_root(1, a3t, -a6t, p);
    c = rst(c, 0, 0, checked_mul(pp, y0));
    if (!divides_pow(c.a4, p, 4)) {
        res.kodaira = KodairaType::IIIStar();
        res.conductor_exponent = vd - 7;
        res.tamagawa = 2;
        return {res, {}};
    }
    // Step 10.
    if (!divides_pow(c.a6, p, 6)) {
        res.kodaira = KodairaType::IIStar();
        res.conductor_exponent = vd - 8;
        res.tamagawa = 1;
        return {res, {}};
    }

    // Step 11: not minimal; divide by u = p.
    if (!divides_pow(c.a1, p, 1) || !divides_pow(c.a2, p, 2) || !divides_pow(c.a3, p, 3) ||
        !divides_pow(c.a4, p, 4) || !divides_pow(c.a6, p, 6)) {
        throw std::logic_error("tate: step-11 model not divisible");
    }
    Pass pass;
    pass.rescaled = {c.a1 / p, c.a2 / pp, c.a3 / (pp * p), c.a4 / (pp * pp),
                     c.a6 / (pp * pp * pp)};
    return pass;
}

} // namespace

std::string to_string(ReductionClass r) {
    switch (r) {
    case ReductionClass::Good: return "good";
    case ReductionClass::Multiplicative: return "multiplicative";
    case ReductionClass::Additive: return "additive";
    }
    return "?";
}

LocalData tate(const WeierstrassModel& m, std::int64_t p) {
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("tate: " + std::to_string(p) + " is not prime");
    }
    const Invariants inv = raw_invariants(m);
    if (inv.discriminant == 0) {
        throw SingularModelError("singular Weierstrass model [" + m.to_string() + "]");
    }
    const int scaling_bound = val(inv.discriminant, p) / 12 + 1;

    LocalData out;
    out.p = p;
    WeierstrassModel current = m;
    int scalings = 0;
    while (true) {
        Pass pass = run_pass(current, p);
        if (pass.result) {
            const PassResult& r = *pass.result;
            out.kodaira = r.kodaira;
            out.reduction = r.reduction;
            out.conductor_exponent = r.conductor_exponent;
            out.tamagawa = r.tamagawa;
            out.discriminant_valuation = r.disc_valuation;
            out.split = r.split;
            out.scaling_exponent = scalings;
            out.was_minimal = scalings == 0;
            out.minimal_model = current;
            return out;
        }
        current = pass.rescaled;
        if (++scalings > scaling_bound) {
            throw std::logic_error("tate: rescaling loop exceeded v_p(Delta)/12 + 1");
        }
    }
}

ReductionClass reduction_class(const WeierstrassModel& m, std::int64_t p) {
    return tate(m, p).reduction;
}

bool is_minimal_at(const WeierstrassModel& m, std::int64_t p) {
    return tate(m, p).was_minimal;
}

GlobalReduction global_reduction(const WeierstrassModel& m) {
    const Invariants inv = raw_invariants(m);
    if (inv.discriminant == 0) {
        throw SingularModelError("singular Weierstrass model [" + m.to_string() + "]");
    }
    GlobalReduction g;
    for (const auto& [prime, exponent] : factorize(inv.discriminant)) {
        (void)exponent;
        LocalData local = tate(m, static_cast<std::int64_t>(prime));
        g.conductor = checked_mul(g.conductor, checked_pow(prime, local.conductor_exponent));
        g.local.push_back(std::move(local));
    }
    return g;
}

} // namespace knstat
