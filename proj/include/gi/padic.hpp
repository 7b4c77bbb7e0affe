#ifndef GI_PADIC_HPP
#define GI_PADIC_HPP

#include <optional>
#include <vector>

#include "gi/basic.hpp"

namespace gi {

/*
 * Fixed-precision model of O = Z_p: residues live in [0, p^M).
 * All arithmetic is exact mod p^M; p^M must fit in 63 bits and
 * (p^M)^2 in an unsigned 128-bit product.
 */
struct padic_ctx {
    i64 p = 0;
    int M = 0;
    i64 pM = 0; // p^M

    bool operator==(const padic_ctx&) const = default;

    padic_ctx() = default;
    padic_ctx(i64 p_, int M_) : p(p_), M(M_)
    {
        if (p_ < 2 || M_ < 1)
            throw arith_error("bad p-adic context");
        pM = 1;
        for (int i = 0; i < M_; ++i) {
            if (pM > (i64(1) << 62) / p_)
                throw arith_error("p^M too large for 64-bit residues");
            pM *= p_;
        }
    }

    i64 reduce(i64 x) const
    {
        i64 r = x % pM;
        return r < 0 ? r + pM : r;
    }
    i64 reduce(const ZZ& x) const { return to_i64(mod_pos(x, ZZ(pM))); }
    i64 add(i64 a, i64 b) const { return reduce(a - pM + b); }
    i64 sub(i64 a, i64 b) const { return reduce(a - b); }
    i64 mul(i64 a, i64 b) const
    {
        return i64(static_cast<__int128>(a) * b % pM);
    }
    i64 neg(i64 a) const { return a == 0 ? 0 : pM - a; }
    i64 pow(i64 a, u64 e) const
    {
        i64 r = 1;
        a = reduce(a);
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    bool is_unit(i64 a) const { return reduce(a) % p != 0; }

    i64 inv(i64 a) const
    {
        a = reduce(a);
        if (!is_unit(a))
            throw arith_error("p-adic inverse of a non-unit");
        return to_i64(inv_mod(ZZ(a), ZZ(pM)));
    }

    /* min(v_p(x), M); M means the value is indistinguishable from 0. */
    int valuation(i64 x) const
    {
        x = reduce(x);
        if (x == 0)
            return M;
        int v = 0;
        while (x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }
    bool capped(i64 x) const { return reduce(x) == 0; }

    i64 teichmueller(i64 a) const
    {
        // lim a^{p^k}; stabilizes after M steps
        i64 t = reduce(a);
        for (int i = 0; i < M + 1; ++i)
            t = pow(t, u64(p));
        return t;
    }

    /* sqrt of the wild part: the unique x = 1 mod p with x^2 = a / omega(a). */
    i64 wild_sqrt(i64 a) const
    {
        if (!is_unit(a))
            throw arith_error("wild_sqrt of non-unit");
        i64 w = mul(a, inv(teichmueller(a)));
        // Hensel for x^2 = w from x = 1 (p odd)
        i64 x = 1;
        for (int i = 0; i < M + 1; ++i) {
            i64 f = sub(mul(x, x), w);
            x = sub(x, mul(f, inv(mul(2, x))));
        }
        return x;
    }
};

/*
 * Element of O[Gamma/Gamma_n] for Gamma/Gamma_n cyclic of order p^n with a
 * distinguished generator g: coefficients indexed by powers of g, index 0
 * being the identity.
 */
struct group_ring_elt {
    padic_ctx ctx;
    int n = 0;
    std::vector<i64> c; // size p^n

    group_ring_elt() = default;
    group_ring_elt(const padic_ctx& cx, int n_) : ctx(cx), n(n_), c(size_t(i64_pow(cx.p, n_)), 0) {}

    i64 order() const { return i64(c.size()); }

    static group_ring_elt one(const padic_ctx& cx, int n_)
    {
        group_ring_elt e(cx, n_);
        e.c[0] = 1;
        return e;
    }
    static group_ring_elt generator(const padic_ctx& cx, int n_)
    {
        group_ring_elt e(cx, n_);
        e.c[n_ == 0 ? 0 : 1] = e.c.empty() ? 0 : 1;
        if (n_ == 0)
            e.c[0] = 1;
        return e;
    }
};

group_ring_elt gr_add(const group_ring_elt& a, const group_ring_elt& b);
group_ring_elt gr_sub(const group_ring_elt& a, const group_ring_elt& b);
group_ring_elt gr_mul(const group_ring_elt& a, const group_ring_elt& b);
group_ring_elt gr_scalar_mul(const group_ring_elt& a, i64 s);
bool gr_equal(const group_ring_elt& a, const group_ring_elt& b);
bool gr_is_zero(const group_ring_elt& a);

/* gamma -> gamma^{-1} */
group_ring_elt involution(const group_ring_elt& a);

/* coefficientwise sum over the fibers of Gamma/Gamma_n -> Gamma/Gamma_{n-1} */
group_ring_elt project_level(const group_ring_elt& a);

/* 1 - u*g^t as a group-ring element at level n */
group_ring_elt gr_one_minus(const padic_ctx& cx, int n, i64 u, i64 t);

/*
 * Truncated element of O[[T]], T = gamma - 1.  Either reduced mod
 * ((1+T)^{p^n} - 1) (exact image of a level-n group-ring element) or a plain
 * degree-d truncation.
 */
struct lambda_series {
    padic_ctx ctx;
    bool mod_cyclotomic = true; // true: mod (1+T)^{p^n}-1 with n = level
    int level = 0;              // meaningful when mod_cyclotomic
    std::vector<i64> c;
};

lambda_series to_T_basis(const group_ring_elt& a);
group_ring_elt from_T_basis(const lambda_series& f);

struct invariant_report {
    int mu = -1;
    long lambda = -1;
    bool stable = false;
    std::vector<int> levels_used;
    std::string note;
};

struct all_capped_error : arith_error {
    all_capped_error() : arith_error("all coefficients are 0 mod p^M") {}
};

/* min valuation over coefficients; throws all_capped_error if identically 0 mod p^M. */
int content(const lambda_series& f);

/* (mu, lambda) of a single series; lambda measured after dividing out p^mu. */
invariant_report mu_lambda(const lambda_series& f);

/*
 * (mu, lambda) of a tower: one series per level; stability demands agreement
 * across levels and lambda strictly below the level horizon
 * p^{n_min} - p^{n_min - 1}.
 */
invariant_report mu_lambda_tower(const std::vector<lambda_series>& tower,
                                 const std::vector<int>& levels);

std::string gr_to_json(const group_ring_elt& a);
group_ring_elt gr_from_json(const std::string& s);

} // namespace gi

#endif
