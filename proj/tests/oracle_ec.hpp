#ifndef GI_TESTS_ORACLE_EC_HPP
#define GI_TESTS_ORACLE_EC_HPP

#include <cstdint>

/*
 * Independent oracle: trace of Frobenius for the conductor-11 curve
 *   y^2 + y = x^3 - x^2 - 10x - 20
 * by direct point counting over F_ell (ell != 11).
 */
inline long trace_11a(long ell)
{
    auto md = [&](long long x) {
        long long r = x % ell;
        return r < 0 ? r + ell : r;
    };
    // #E(F_ell) = ell + 1 + sum_x chi-type count of y^2 + y = f(x)
    long count = 1; // point at infinity
    for (long x = 0; x < ell; ++x) {
        long long f = md(md(md((long long)x * x % ell * x) - (long long)x * x % ell) -
                         md(10LL * x + 20));
        // y^2 + y - f = 0: discriminant 1 + 4f
        long long disc = md(4 * f + 1);
        if (ell == 2) {
            for (long y = 0; y < 2; ++y)
                if (md(y * y + y - f) == 0)
                    ++count;
            continue;
        }
        if (disc == 0) {
            ++count;
            continue;
        }
        // Euler's criterion
        long long pw = 1, base = disc, e = (ell - 1) / 2;
        while (e) {
            if (e & 1)
                pw = pw * base % ell;
            base = base * base % ell;
            e >>= 1;
        }
        if (pw == 1)
            count += 2;
    }
    return ell + 1 - count;
}

#endif
