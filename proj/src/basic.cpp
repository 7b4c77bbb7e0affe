#include "gi/basic.hpp"

namespace gi {

std::vector<std::pair<ZZ, unsigned>> factor(ZZ n)
{
    if (n < 0)
        n = -n;
    if (n <= 1)
        return {};
    std::vector<std::pair<ZZ, unsigned>> out;
    for (ZZ q = 2; q * q <= n; q = (q == 2 ? ZZ(3) : q + 2)) {
        if (!mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()))
            continue;
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

/* (a,b)_v via the classical formulas (Serre, Course in Arithmetic III.1). */
int hilbert_symbol(QQ a, QQ b, const ZZ& v)
{
    if (a == 0 || b == 0)
        throw arith_error("hilbert symbol needs nonzero arguments");
    if (v == 0) // real place
        return (a < 0 && b < 0) ? -1 : 1;
    if (!is_prime(v))
        throw arith_error("hilbert symbol: place must be prime or 0");

    // Write a = q^alpha * u, b = q^beta * w with u, w units at q.
    ZZ num_a = a.get_num(), den_a = a.get_den();
    ZZ num_b = b.get_num(), den_b = b.get_den();
    long alpha = long(valuation(num_a, v)) - long(valuation(den_a, v));
    long beta = long(valuation(num_b, v)) - long(valuation(den_b, v));

    auto unit_part_mod = [&](QQ x, long val, const ZZ& mod) {
        // x / q^val reduced mod `mod` (which is coprime to the denominator).
        QQ u = x;
        if (val >= 0)
            u /= QQ(zz_pow(v, val));
        else
            u *= QQ(zz_pow(v, -val));
        ZZ n = u.get_num(), d = u.get_den();
        return mod_pos(n * inv_mod(mod_pos(d, mod), mod), mod);
    };

    if (v != 2) {
        ZZ u = unit_part_mod(a, alpha, v);
        ZZ w = unit_part_mod(b, beta, v);
        int eps = (((v - 1) / 2) % 2 == 0) ? 1 : -1; // (-1)^{(q-1)/2}
        int s = 1;
        if ((alpha * beta) % 2 != 0 && eps == -1)
            s = -s;
        if (beta % 2 != 0 && kronecker(u, v) == -1)
            s = -s;
        if (alpha % 2 != 0 && kronecker(w, v) == -1)
            s = -s;
        return s;
    }

    // q = 2: (a,b)_2 = (-1)^{eps(u)eps(w) + alpha*omega(w) + beta*omega(u)}
    ZZ u = unit_part_mod(a, alpha, ZZ(8));
    ZZ w = unit_part_mod(b, beta, ZZ(8));
    auto eps2 = [](const ZZ& x) { return ((x - 1) / 2) % 2 != 0; };  // (x-1)/2 mod 2
    auto omega = [](const ZZ& x) { return ((x * x - 1) / 8) % 2 != 0; }; // (x^2-1)/8 mod 2
    bool e = (eps2(u) && eps2(w)) ^ ((alpha % 2 != 0) && omega(w)) ^ ((beta % 2 != 0) && omega(u));
    return e ? -1 : 1;
}

ZZ sqrt_qadic(const ZZ& a, const ZZ& q, unsigned prec)
{
    ZZ mod = zz_pow(q, prec);
    if (q != 2) {
        if (kronecker(a, q) != 1)
            throw arith_error("not a square unit mod " + q.get_str());
        // find a root mod q, then Hensel
        ZZ r = pow_mod(mod_pos(a, q), (q + 1) / 4, q);
        if (mod_pos(r * r - a, q) != 0) {
            // q = 1 mod 4: Tonelli-Shanks, small q so brute force is fine
            r = -1;
            for (ZZ x = 1; x < q; ++x)
                if (mod_pos(x * x - a, q) == 0) {
                    r = x;
                    break;
                }
            if (r < 0)
                throw arith_error("sqrt mod q not found");
        }
        ZZ m = q;
        while (m < mod) {
            m = m * m;
            if (m > mod)
                m = mod;
            // r <- r - (r^2 - a) / (2r) mod m
            ZZ t = mod_pos(r * r - a, m);
            r = mod_pos(r - t * inv_mod(mod_pos(2 * r, m), m), m);
        }
        return mod_pos(r, mod);
    }
    if (mod_pos(a, ZZ(8)) != 1)
        throw arith_error("not a square unit in Z_2");
    ZZ r = 1, m = 8;
    while (m < mod) {
        ZZ m2 = m * 2;
        if (mod_pos(r * r - a, m2) != 0)
            r += m / 2;
        m = m2;
    }
    return mod_pos(r, mod);
}

ZZ quad_root_qadic(const ZZ& t, const ZZ& n, const ZZ& q, unsigned prec, const ZZ& seed)
{
    ZZ mod = zz_pow(q, prec);
    ZZ r = mod_pos(seed, q);
    if (mod_pos(r * r - t * r + n, q) != 0)
        throw arith_error("seed is not a root mod q");
    if (mod_pos(2 * r - t, q) == 0)
        throw arith_error("root is not simple mod q");
    ZZ m = q;
    while (m < mod) {
        m = m * m;
        if (m > mod)
            m = mod;
        ZZ f = mod_pos(r * r - t * r + n, m);
        ZZ df = mod_pos(2 * r - t, m);
        r = mod_pos(r - f * inv_mod(df, m), m);
    }
    return mod_pos(r, mod);
}

} // namespace gi
