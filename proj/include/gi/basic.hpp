#ifndef GI_BASIC_HPP
#define GI_BASIC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gi {

using ZZ = mpz_class;
using QQ = mpq_class;
using i64 = std::int64_t;
using u64 = std::uint64_t;

struct arith_error : std::runtime_error {
    explicit arith_error(const std::string& what) : std::runtime_error(what) {}
};

inline i64 to_i64(const ZZ& z)
{
    if (!z.fits_slong_p())
        throw arith_error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

inline ZZ zz_pow(const ZZ& b, unsigned long e)
{
    ZZ r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline i64 i64_pow(i64 b, unsigned e)
{
    i64 r = 1;
    while (e--) {
        r *= b;
    }
    return r;
}

/* v_q(n) for n != 0. */
inline unsigned valuation(ZZ n, const ZZ& q)
{
    if (n == 0)
        throw arith_error("valuation of zero");
    unsigned v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
        n /= q;
        ++v;
    }
    return v;
}

inline bool is_prime(const ZZ& n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<ZZ, unsigned>> factor(ZZ n);

/* Kronecker symbol (a|n), the usual extension of Jacobi/Legendre. */
inline int kronecker(const ZZ& a, const ZZ& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

/* Classical Hilbert symbol (a,b)_v over Q_v; v = 0 encodes the real place. */
int hilbert_symbol(QQ a, QQ b, const ZZ& v);

/* x with x^2 = a mod q^prec, for a a square unit mod q (q odd) or mod 8 (q = 2). */
ZZ sqrt_qadic(const ZZ& a, const ZZ& q, unsigned prec);

/* Hensel root of monic x^2 - t*x + n over Z_q from a simple root mod q. */
ZZ quad_root_qadic(const ZZ& t, const ZZ& n, const ZZ& q, unsigned prec, const ZZ& seed);

inline ZZ mod_pos(const ZZ& a, const ZZ& m)
{
    ZZ r = a % m;
    if (r < 0)
        r += m;
    return r;
}

inline ZZ inv_mod(const ZZ& a, const ZZ& m)
{
    ZZ r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw arith_error("not invertible mod " + m.get_str());
    return r;
}

inline ZZ pow_mod(const ZZ& b, const ZZ& e, const ZZ& m)
{
    ZZ r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

/* Deterministic splitmix64, used wherever seeded pseudo-randomness is needed. */
struct splitmix64 {
    u64 state;
    explicit splitmix64(u64 seed) : state(seed) {}
    u64 next()
    {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    i64 below(i64 n) { return static_cast<i64>(next() % static_cast<u64>(n)); }
};

} // namespace gi

#endif
