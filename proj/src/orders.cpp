#include "gi/orders.hpp"

#include <algorithm>

namespace gi {

std::array<ZZ, 4> local_splitting::image(const quat_alg& B, const quat_elt& x) const
{
    // x = a + b theta + (c + d theta) j
    // i(x) = a I + b Tth + c Tj + d Tth Tj, entries mod q^prec
    ZZ t = B.K.tr_th, n = B.K.nm_th;
    // Tth = [[t, -n],[1, 0]]; Tj = s[[-1, t],[0, 1]]; Tth*Tj = s[[-t, t^2 - n],[ -1, t]]
    const ZZ& s = sqrt_beta;
    std::array<ZZ, 4> m{};
    auto put = [&](const QQ& coef, const ZZ& e00, const ZZ& e01, const ZZ& e10, const ZZ& e11) {
        ZZ num = coef.get_num(), den = coef.get_den();
        ZZ c = mod_pos(num * inv_mod(mod_pos(den, mod), mod), mod);
        m[0] = mod_pos(m[0] + c * e00, mod);
        m[1] = mod_pos(m[1] + c * e01, mod);
        m[2] = mod_pos(m[2] + c * e10, mod);
        m[3] = mod_pos(m[3] + c * e11, mod);
    };
    put(x.v[0], ZZ(1), ZZ(0), ZZ(0), ZZ(1));
    put(x.v[1], t, -n, ZZ(1), ZZ(0));
    put(x.v[2], -s, s * t, ZZ(0), s);
    put(x.v[3], mod_pos(-s * t, mod), s * (t * t - n), mod_pos(-s, mod), s * t);
    return m;
}

local_splitting make_splitting(const quat_alg& B, const ZZ& q, unsigned prec)
{
    local_splitting sp;
    sp.q = q;
    sp.prec = prec;
    sp.mod = zz_pow(q, prec);
    sp.sqrt_beta = sqrt_qadic(mod_pos(B.beta, sp.mod), q, prec);
    // orientation root at split q: root of x^2 - Tr x + Nm
    if (kronecker(-B.K.DK, q) == 1) {
        ZZ seed = -1;
        for (ZZ x = 0; x < q; ++x)
            if (mod_pos(x * x - B.K.tr_th * x + B.K.nm_th, q) == 0) {
                seed = x;
                break;
            }
        if (seed >= 0)
            sp.theta_root = quad_root_qadic(B.K.tr_th, B.K.nm_th, q, prec, seed);
    }
    return sp;
}

qlat initial_order(const quat_alg& B)
{
    std::vector<quat_elt> gens = {
        quat_elt(1, 0, 0, 0), quat_elt(0, 1, 0, 0), quat_elt(0, 0, 1, 0), quat_elt(0, 0, 0, 1)};
    return lat_from_rows(gens);
}

bool is_order(const quat_alg& B, const qlat& O)
{
    if (!lat_contains(O, quat_elt::one()))
        return false;
    auto b = lat_basis(O);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!lat_contains(O, q_mul(B, b[i], b[j])))
                return false;
    for (int i = 0; i < 4; ++i)
        if (q_trd(B, b[i]).get_den() != 1 || q_nrd(B, b[i]).get_den() != 1)
            return false;
    return true;
}

qlat left_order(const quat_alg& B, const qlat& I)
{
    // O_l(I) = { x : x g_k in I } = intersection of I g_k^{-1}
    auto b = lat_basis(I);
    qlat O = lat_mul_right(B, I, q_inv(B, b[0]));
    for (int k = 1; k < 4; ++k)
        O = lat_intersect(O, lat_mul_right(B, I, q_inv(B, b[k])));
    return O;
}

qlat right_order(const quat_alg& B, const qlat& I)
{
    auto b = lat_basis(I);
    qlat O = lat_mul_left(B, q_inv(B, b[0]), I);
    for (int k = 1; k < 4; ++k)
        O = lat_intersect(O, lat_mul_left(B, q_inv(B, b[k]), I));
    return O;
}

namespace {

/* structure constants of O/qO over F_q; table[i][j] = coords of e_i e_j */
struct fq_algebra {
    long q;
    std::array<std::array<std::array<long, 4>, 4>, 4> table;

    std::array<long, 4> mul(const std::array<long, 4>& x, const std::array<long, 4>& y) const
    {
        std::array<long, 4> r{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            if (!x[i])
                continue;
            for (int j = 0; j < 4; ++j) {
                if (!y[j])
                    continue;
                long c = (x[i] * y[j]) % q;
                for (int k = 0; k < 4; ++k)
                    r[k] = (r[k] + c * table[i][j][k]) % q;
            }
        }
        return r;
    }
};

fq_algebra structure_constants(const quat_alg& B, const qlat& O, const ZZ& q)
{
    fq_algebra A;
    A.q = to_i64(q);
    auto b = lat_basis(O);
    // solve coords of e_i e_j in the basis: y with y * H/den = prod
    qmat Bm(4, qrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            Bm[i][j] = QQ(O.H[i][j]) / QQ(O.den);
    qmat inv = qq_mat_inv(Bm);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            quat_elt p = q_mul(B, b[i], b[j]);
            for (int k = 0; k < 4; ++k) {
                QQ c = 0;
                for (int t = 0; t < 4; ++t)
                    c += p.v[t] * inv[t][k];
                if (c.get_den() != 1)
                    throw order_error("structure constants not integral");
                A.table[i][j][k] = to_i64(mod_pos(ZZ(c.get_num()), q));
            }
        }
    return A;
}

/* basis of the nilradical of O/qO as coordinate rows over F_q */
std::vector<std::array<long, 4>> nilradical(const fq_algebra& A)
{
    long q = A.q;
    if (q == 2) {
        // 16 elements: x is in the radical iff the two-sided ideal it
        // generates is nilpotent
        std::vector<std::array<long, 4>> rad_gens;
        for (int mask = 1; mask < 16; ++mask) {
            std::array<long, 4> x{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
            // span of {x, e_i x, x e_j, e_i x e_j}
            std::vector<std::array<long, 4>> gen{x};
            std::array<long, 4> e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
            for (int i = 0; i < 4; ++i) {
                gen.push_back(A.mul(e[i], x));
                gen.push_back(A.mul(x, e[i]));
                for (int j = 0; j < 4; ++j)
                    gen.push_back(A.mul(A.mul(e[i], x), e[j]));
            }
            // nilpotency of the ideal: fourth power of the span vanishes
            auto span_closure = gen;
            bool nil = true;
            std::vector<std::array<long, 4>> cur = span_closure;
            for (int step = 0; step < 2 && nil; ++step) {
                std::vector<std::array<long, 4>> nxt;
                for (auto& a : cur)
                    for (auto& b : span_closure)
                        nxt.push_back(A.mul(a, b));
                cur = nxt; // cur = ideal^{2^{step+1}}
            }
            for (auto& a : cur)
                if (a != std::array<long, 4>{0, 0, 0, 0})
                    nil = false;
            if (nil)
                rad_gens.push_back(x);
        }
        return rad_gens;
    }
    // odd q: radical of the regular trace form (x,y) -> Tr_reg(xy) = 2 trd(xy)
    zmat T(4, zrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // Tr_reg(e_i e_j): trace of left multiplication by e_i e_j
            auto p = A.table[i][j];
            long tr = 0;
            for (int k = 0; k < 4; ++k) {
                std::array<long, 4> ek{0, 0, 0, 0};
                ek[k] = 1;
                std::array<long, 4> pe = A.mul(p, ek);
                tr = (tr + pe[k]) % A.q;
            }
            T[i][j] = tr;
        }
    zmat kerZ = congruence_lattice(T, ZZ(A.q), 4);
    std::vector<std::array<long, 4>> out;
    for (auto& row : kerZ) {
        std::array<long, 4> v;
        bool nonzero = false;
        for (int i = 0; i < 4; ++i) {
            v[i] = to_i64(mod_pos(row[i], ZZ(A.q)));
            nonzero |= v[i] != 0;
        }
        if (nonzero)
            out.push_back(v);
    }
    return out;
}

/* a nontrivial idempotent of O/qO, as coordinates, if one is found */
std::optional<std::array<long, 4>> find_idempotent(const fq_algebra& A)
{
    long q = A.q;
    auto try_elt = [&](const std::array<long, 4>& u) -> std::optional<std::array<long, 4>> {
        // powers of u up to degree 4; find the minimal linear dependence
        std::vector<std::array<long, 4>> pw;
        std::array<long, 4> cur{1, 0, 0, 0};
        for (int d = 0; d <= 4; ++d) {
            pw.push_back(cur);
            cur = A.mul(cur, u);
        }
        // minimal polynomial via kernel of the
        // (deg+1) x 4 coefficient matrix, smallest degree first
        for (int deg = 1; deg <= 4; ++deg) {
            // {c : sum_i c_i u^i = 0 mod q} = left kernel of the power matrix
            zmat Mt(4, zrow(size_t(deg) + 1));
            for (int i = 0; i <= deg; ++i)
                for (int j = 0; j < 4; ++j)
                    Mt[size_t(j)][size_t(i)] = pw[size_t(i)][size_t(j)];
            zmat K = congruence_lattice(Mt, ZZ(q), size_t(deg) + 1);
            bool monic_seen = false;
            for (auto& c : K) {
                if (mod_pos(c[size_t(deg)], ZZ(q)) == 0)
                    continue;
                monic_seen = true;
                // monic minimal-candidate of degree deg: try to split it
                std::vector<long> f(size_t(deg) + 1);
                ZZ lead_inv = inv_mod(mod_pos(c[size_t(deg)], ZZ(q)), ZZ(q));
                for (int i = 0; i <= deg; ++i)
                    f[size_t(i)] = to_i64(mod_pos(c[size_t(i)] * lead_inv, ZZ(q)));
                // find a root a of f and split off (x - a) when f has
                // another coprime factor
                for (long a = 0; a < q; ++a) {
                    long val = 0, powa = 1;
                    for (int i = 0; i <= deg; ++i) {
                        val = (val + f[size_t(i)] * powa) % q;
                        powa = powa * a % q;
                    }
                    if (val != 0)
                        continue;
                    // g = (x - a), h = f / (x - a); need gcd(g, h) = 1, i.e. h(a) != 0
                    std::vector<long> h(static_cast<size_t>(deg), 0L);
                    long carry = f[size_t(deg)];
                    for (int i = deg - 1; i >= 0; --i) {
                        h[size_t(i)] = carry;
                        carry = (f[size_t(i)] + carry * a) % q;
                    }
                    long ha = 0, pa = 1;
                    for (int i = 0; i < deg; ++i) {
                        ha = (ha + h[size_t(i)] * pa) % q;
                        pa = pa * a % q;
                    }
                    if (ha % q == 0)
                        continue;
                    // e = h(u) * h(a)^{-1}: kills the (x-a)-part complement
                    ZZ hainv = inv_mod(ZZ(((ha % q) + q) % q), ZZ(q));
                    std::array<long, 4> e{0, 0, 0, 0};
                    for (int i = 0; i < deg; ++i)
                        for (int j = 0; j < 4; ++j)
                            e[size_t(j)] =
                                (e[size_t(j)] +
                                 to_i64(mod_pos(ZZ(h[size_t(i)]) * hainv, ZZ(q))) *
                                     pw[size_t(i)][size_t(j)]) %
                                q;
                    // nontrivial idempotent check
                    if (A.mul(e, e) != e)
                        continue;
                    bool zero = e == std::array<long, 4>{0, 0, 0, 0};
                    bool one = e == std::array<long, 4>{1, 0, 0, 0};
                    if (!zero && !one)
                        return e;
                }
            }
            if (monic_seen)
                break; // minimal degree reached; higher degrees add nothing
        }
        return std::nullopt;
    };
    // deterministic candidates, then seeded pseudo-random ones
    std::vector<std::array<long, 4>> cands = {
        {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}};
    splitmix64 rng(0x9e3779b9);
    for (int t = 0; t < 200; ++t) {
        if (size_t(t) < cands.size()) {
            if (auto e = try_elt(cands[size_t(t)]))
                return e;
        } else {
            std::array<long, 4> u;
            for (auto& x : u)
                x = rng.below(q);
            if (auto e = try_elt(u))
                return e;
        }
    }
    return std::nullopt;
}

} // namespace

qlat maximal_order(const quat_alg& B)
{
    qlat O = initial_order(B);
    ZZ target = B.Nminus;
    int guard = 0;
    while (true) {
        ZZ rd = order_reduced_discriminant(B, O);
        if (rd == target)
            return O;
        if (mod_pos(rd, target) != 0)
            throw order_error("order discriminant drifted below target");
        ZZ excess = rd / target;
        ZZ q = factor(excess)[0].first;
        fq_algebra A = structure_constants(B, O, q);
        auto b = lat_basis(O);

        auto grow_by = [&](const qlat& J) -> bool {
            qlat Ol = left_order(B, J);
            if (lat_index(O, Ol) > 1) {
                O = Ol;
                return true;
            }
            qlat Or = right_order(B, J);
            if (lat_index(O, Or) > 1) {
                O = Or;
                return true;
            }
            return false;
        };

        // radical idealizer move
        auto rad = nilradical(A);
        std::vector<quat_elt> gens;
        for (auto& v : rad) {
            quat_elt x;
            for (int i = 0; i < 4; ++i)
                x = q_add(x, q_scal(QQ(v[i]), b[i]));
            gens.push_back(x);
        }
        for (int i = 0; i < 4; ++i)
            gens.push_back(q_scal(QQ(q), b[i]));
        bool grew = grow_by(lat_from_rows(gens));

        if (!grew) {
            // hereditary at q: split with a nontrivial idempotent of O/qO
            auto e = find_idempotent(A);
            if (!e)
                throw order_error("no idempotent found mod " + q.get_str() +
                                  " at discriminant " + rd.get_str());
            quat_elt ex;
            for (int i = 0; i < 4; ++i)
                ex = q_add(ex, q_scal(QQ((*e)[size_t(i)]), b[i]));
            std::vector<quat_elt> g2;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    g2.push_back(q_mul(B, q_mul(B, b[i], ex), b[j]));
            for (int i = 0; i < 4; ++i)
                g2.push_back(q_scal(QQ(q), b[i]));
            grew = grow_by(lat_from_rows(g2));
        }
        if (!grew)
            throw order_error("order enlargement stalled at discriminant " + rd.get_str());
        if (++guard > 200)
            throw order_error("maximal order enlargement did not terminate");
    }
}

qlat sublattice_by_conditions(const qlat& L, const zmat& forms_on_basis, const ZZ& qm)
{
    zmat sub = congruence_lattice(forms_on_basis, qm, 4);
    // rows of sub are coordinates w.r.t. the basis of L
    std::vector<quat_elt> gens;
    auto b = lat_basis(L);
    for (auto& row : sub) {
        quat_elt x;
        for (int i = 0; i < 4; ++i)
            x = q_add(x, q_scal(QQ(row[i]), b[i]));
        gens.push_back(x);
    }
    return lat_from_rows(gens);
}

qlat eichler_order(const quat_alg& B, const qlat& Omax,
                   const std::vector<std::pair<local_splitting, unsigned>>& levels)
{
    qlat R = Omax;
    for (const auto& [sp, v] : levels) {
        if (v == 0)
            continue;
        if (sp.prec < v + 2)
            throw order_error("splitting precision too low at q = " + sp.q.get_str());
        ZZ qv = zz_pow(sp.q, v);
        // lower-left entry of i_q(x) must vanish mod q^v
        zmat forms(1, zrow(4));
        auto b = lat_basis(R);
        for (int k = 0; k < 4; ++k) {
            auto m = sp.image(B, b[k]);
            forms[0][k] = m[2];
        }
        R = sublattice_by_conditions(R, forms, qv);
    }
    return R;
}

long unit_count(const quat_alg& B, const qlat& O)
{
    auto c = nrd_counts(B, O, QQ(1));
    auto it = c.find(QQ(1));
    return it == c.end() ? 0 : it->second;
}

} // namespace gi
