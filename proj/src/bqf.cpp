#include "gi/bqf.hpp"

namespace gi {

ZZ bqf_disc(const bqf& f)
{
    return f.b * f.b - 4 * f.a * f.c;
}

bqf bqf_reduce(bqf f)
{
    for (int guard = 0; guard < 100000; ++guard) {
        // normalize: -a < b <= a
        if (!(-f.a < f.b && f.b <= f.a)) {
            // b <- b - 2ka with k = round(b / 2a)
            ZZ twoa = 2 * f.a;
            ZZ k;
            mpz_fdiv_q(k.get_mpz_t(), (f.b + f.a).get_mpz_t(), twoa.get_mpz_t());
            ZZ bn = f.b - 2 * k * f.a;
            ZZ cn = f.c - k * f.b + k * k * f.a;
            f.b = bn;
            f.c = cn;
        }
        if (f.a > f.c) {
            // (a, b, c) -> (c, -b, a)
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f.b = -f.b;
            continue;
        }
        return f;
    }
    throw arith_error("form reduction did not terminate");
}

bqf bqf_identity(const ZZ& disc)
{
    ZZ r = mod_pos(disc, ZZ(2));
    // (1, r, (r^2 - disc)/4)
    return bqf{ZZ(1), r, (r * r - disc) / 4};
}

bqf bqf_inverse(const bqf& f)
{
    return bqf_reduce(bqf{f.a, -f.b, f.c});
}

/* Dirichlet composition (Cohen, Alg. 5.4.7 style) */
bqf bqf_compose(const bqf& f, const bqf& g)
{
    ZZ D = bqf_disc(f);
    if (bqf_disc(g) != D)
        throw arith_error("composing forms of different discriminants");
    ZZ s = (f.b + g.b) / 2;
    ZZ n = (f.b - g.b) / 2;
    // d1 = gcd(f.a, g.a, s); solve u f.a + v g.a + w s = d1
    ZZ d0, u0, v0;
    mpz_gcdext(d0.get_mpz_t(), u0.get_mpz_t(), v0.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
    ZZ d1, x, w;
    mpz_gcdext(d1.get_mpz_t(), x.get_mpz_t(), w.get_mpz_t(), d0.get_mpz_t(), s.get_mpz_t());
    ZZ u = u0 * x, v = v0 * x;
    // a3 = f.a g.a / d1^2
    ZZ a3 = f.a / d1 * (g.a / d1);
    // b3 = g.b + 2 (g.a/d1) (v n - w g.c) mod 2 a3
    ZZ b3 = g.b + 2 * (g.a / d1) * (v * n - w * g.c);
    ZZ twoa3 = 2 * a3;
    b3 = mod_pos(b3, twoa3);
    ZZ c3num = b3 * b3 - D;
    if (mod_pos(c3num, 4 * a3) != 0)
        throw arith_error("composition produced a non-integral form");
    return bqf_reduce(bqf{a3, b3, c3num / (4 * a3)});
}

bqf bqf_pow(const bqf& f, ZZ e)
{
    ZZ D = bqf_disc(f);
    bqf r = bqf_identity(D);
    bqf base = e < 0 ? bqf_inverse(f) : f;
    if (e < 0)
        e = -e;
    while (e > 0) {
        if (mod_pos(e, ZZ(2)) == 1)
            r = bqf_compose(r, base);
        e >>= 1;
        if (e > 0)
            base = bqf_compose(base, base);
    }
    return r;
}

std::vector<bqf> reduced_forms(const ZZ& disc)
{
    if (disc >= 0)
        throw arith_error("need a negative discriminant");
    std::vector<bqf> forms;
    ZZ absD = -disc;
    for (ZZ b = mod_pos(disc, ZZ(2)); 3 * b * b <= absD; b += 2) {
        ZZ num = (b * b - disc) / 4;
        for (ZZ a = std::max(ZZ(1), b); a * a <= num; ++a) {
            if (mod_pos(num, a) != 0)
                continue;
            ZZ c = num / a;
            if (gcd(gcd(a, b), c) != 1)
                continue;
            forms.push_back(bqf{a, b, c});
            if (!(b == 0 || a == b || a == c))
                forms.push_back(bqf{a, -b, c});
        }
    }
    // canonical order with the identity first
    std::sort(forms.begin(), forms.end());
    bqf id = bqf_identity(disc);
    for (size_t i = 0; i < forms.size(); ++i)
        if (forms[i] == id) {
            std::swap(forms[0], forms[i]);
            break;
        }
    return forms;
}

long ring_class_group::idx(const bqf& f) const
{
    auto it = index.find(bqf_reduce(f));
    if (it == index.end())
        throw arith_error("form is not in the class list");
    return it->second;
}

long ring_class_group::compose(long i, long j) const
{
    return idx(bqf_compose(elems[size_t(i)], elems[size_t(j)]));
}

long ring_class_group::inverse(long i) const
{
    return idx(bqf_inverse(elems[size_t(i)]));
}

long ring_class_group::power(long i, ZZ e) const
{
    return idx(bqf_pow(elems[size_t(i)], e));
}

long ring_class_group::element_order(long i) const
{
    long k = 1;
    long cur = i;
    while (cur != 0) {
        cur = compose(cur, i);
        ++k;
        if (k > order())
            throw arith_error("element order exceeded group order");
    }
    return k;
}

ring_class_group make_ring_class_group(const ZZ& DK, const ZZ& conductor)
{
    ring_class_group G;
    G.DK = DK;
    G.conductor = conductor;
    G.disc = -conductor * conductor * DK;
    G.elems = reduced_forms(G.disc);
    for (size_t i = 0; i < G.elems.size(); ++i)
        G.index[G.elems[i]] = long(i);
    return G;
}

bqf coprime_representative(const bqf& f, const ZZ& m)
{
    // find primitive (x, y) with gcd(f(x,y), m) = 1; transform so that the
    // leading coefficient is f(x, y)
    for (long bound = 1; bound <= 16; ++bound)
        for (long x = -bound; x <= bound; ++x)
            for (long y = -bound; y <= bound; ++y) {
                if (gcd(ZZ(x), ZZ(y)) != 1)
                    continue;
                ZZ val = f.a * x * x + f.b * x * y + f.c * y * y;
                if (val == 0 || gcd(val, m) != 1)
                    continue;
                // complete (x, y) to a unimodular matrix [[x, z],[y, w]]
                ZZ g, w, z;
                mpz_gcdext(g.get_mpz_t(), w.get_mpz_t(), z.get_mpz_t(), ZZ(x).get_mpz_t(),
                           ZZ(y).get_mpz_t());
                // x w - y (-z) = 1 -> columns (x, y), (-z, w)
                ZZ zz = -z;
                // transformed form coefficients
                ZZ A = val;
                ZZ Bc = 2 * (f.a * x * zz + f.c * y * w) + f.b * (x * w + y * zz);
                ZZ Cc = f.a * zz * zz + f.b * zz * w + f.c * w * w;
                return bqf{A, Bc, Cc};
            }
    throw arith_error("no coprime representative found");
}

long lower_conductor(const ring_class_group& from, const ring_class_group& to, long i)
{
    if (from.DK != to.DK || mod_pos(from.conductor, to.conductor) != 0)
        throw arith_error("conductor lowering needs c' | c");
    ZZ y = from.conductor / to.conductor;
    if (y == 1)
        return to.idx(from.elems[size_t(i)]);
    bqf f = coprime_representative(from.elems[size_t(i)], y * from.disc * to.disc);
    ZZ A = f.a;
    ZZ twoA = 2 * A;
    ZZ bp = mod_pos(f.b * inv_mod(mod_pos(y, twoA), twoA), twoA);
    // fix parity/congruence so that bp^2 = disc' mod 4A
    ZZ target = mod_pos(to.disc, 4 * A);
    for (int k = 0; k < 2; ++k) {
        if (mod_pos(bp * bp, 4 * A) == target) {
            ZZ Cc = (bp * bp - to.disc) / (4 * A);
            return to.idx(bqf{A, bp, Cc});
        }
        bp += twoA; // other residue mod 4A with the same value mod 2A
    }
    throw arith_error("conductor lowering congruence failed");
}

long anticyclotomic_quotient::to_gamma(long i) const
{
    long s = G.power(i, sylow_exponent);
    auto it = dlog.find(s);
    if (it == dlog.end())
        throw arith_error("class not in the cyclic p-primary part");
    return it->second;
}

anticyclotomic_quotient make_anticyclotomic_quotient(const ZZ& DK, i64 p, int n)
{
    anticyclotomic_quotient Q;
    Q.p = p;
    Q.n = n;
    Q.G = make_ring_class_group(DK, zz_pow(ZZ(p), unsigned(n) + 1));
    long h = Q.G.order();
    long pn = i64_pow(p, unsigned(n));
    if (h % pn != 0)
        throw not_cyclic_error("p-part of Pic has order < p^n");
    long hp = h;
    int e = 0;
    while (hp % p == 0) {
        hp /= p;
        ++e;
    }
    if (i64_pow(p, unsigned(e)) != pn)
        throw not_cyclic_error("p-part of Pic has order != p^n");
    // idempotent exponent: k = hp * (hp^{-1} mod p^e)
    ZZ k = ZZ(hp) * inv_mod(ZZ(hp), zz_pow(ZZ(p), unsigned(e)));
    Q.sylow_exponent = k;
    // find a generator of the p-primary part
    long gen = -1;
    for (long i = 0; i < h; ++i) {
        long s = Q.G.power(i, k);
        if (s == 0)
            continue;
        if (Q.G.element_order(s) == pn) {
            gen = s;
            break;
        }
    }
    if (gen < 0 && pn == 1)
        gen = 0;
    if (gen < 0)
        throw not_cyclic_error("p-primary part of Pic is not cyclic of order p^n");
    Q.generator = gen;
    long cur = 0;
    for (long t = 0; t < pn; ++t) {
        Q.dlog[cur] = t;
        cur = Q.G.compose(cur, gen);
    }
    if (long(Q.dlog.size()) != pn)
        throw not_cyclic_error("generator order mismatch");
    return Q;
}

frobenius_pair frobenius_in_gamma(const anticyclotomic_quotient& q, const ZZ& DK, long ell,
                                  const ZZ& theta_root_mod_ell, const ZZ& Dprime)
{
    // l = (ell, theta - t): as a form of disc -c^2 DK with c = p^{n+1}:
    // (ell, c(2t - D'), *) reduced
    ZZ c = q.G.conductor;
    ZZ b = mod_pos(c * (2 * theta_root_mod_ell - Dprime), 2 * ell);
    ZZ D = q.G.disc;
    // adjust b mod 2*ell to satisfy b^2 = D mod 4 ell
    bool ok = false;
    for (int k = 0; k < 2 && !ok; ++k) {
        if (mod_pos(b * b - D, 4 * ell) == 0)
            ok = true;
        else
            b += 2 * ell;
    }
    if (!ok)
        throw arith_error("frobenius form congruence failed at ell");
    bqf fl{ZZ(ell), b, (b * b - D) / (4 * ell)};
    long il = q.G.idx(fl);
    frobenius_pair fp;
    fp.t_l = q.to_gamma(il);
    fp.t_lbar = q.to_gamma(q.G.inverse(il));
    return fp;
}

} // namespace gi
