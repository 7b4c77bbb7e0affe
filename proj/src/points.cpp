#include "gi/points.hpp"

namespace gi {

const ring_class_group& heegner_context::pic_at(unsigned s) const
{
    auto it = pic.find(zz_pow(ZZ(p), s));
    if (it == pic.end())
        throw arith_error("ring class group at p^" + std::to_string(s) + " not built");
    return it->second;
}

long heegner_context::gamma_of(unsigned s, long cls, int n) const
{
    long cur = cls;
    for (unsigned t = s; t > unsigned(n) + 1; --t)
        cur = lower_conductor(pic_at(t), pic_at(t - 1), cur);
    return quots.at(size_t(n)).to_gamma(cur);
}

std::vector<long> heegner_context::lowering_kernel(unsigned s) const
{
    const ring_class_group& G = pic_at(s);
    const ring_class_group& G1 = pic_at(s - 1);
    std::vector<long> ker;
    for (long i = 0; i < G.order(); ++i)
        if (lower_conductor(G, G1, i) == 0)
            ker.push_back(i);
    return ker;
}

heegner_context make_heegner_context(const quat_alg& B, const qlat& Omax, const ZZ& Nplus,
                                     i64 p, int n_max, int r_max)
{
    heegner_context H;
    H.B = B;
    H.Omax = Omax;
    H.Nplus = Nplus;
    H.p = p;
    H.n_max = n_max;
    H.r_max = r_max;
    for (int r = 1; r <= r_max; ++r)
        H.sets.push_back(make_shimura_set(B, Omax, Nplus, p, r));
    for (const auto& [q, e] : factor(Nplus))
        H.nplus_splits.push_back(make_splitting(B, q, e + 8));
    unsigned smax = unsigned(n_max) + 1 + unsigned(r_max);
    H.p_split = make_splitting(B, ZZ(p), smax + 8);
    H.p_splits_in_K = kronecker(-B.K.DK, ZZ(p)) == 1;
    if (H.p_splits_in_K && H.p_split.theta_root == 0)
        throw arith_error("p splits in K but no theta root was found");
    for (unsigned s = 1; s <= smax; ++s)
        H.pic.emplace(zz_pow(ZZ(p), s), make_ring_class_group(B.K.DK, zz_pow(ZZ(p), s)));
    for (int n = 0; n <= n_max; ++n)
        H.quots.push_back(make_anticyclotomic_quotient(B.K.DK, p, n));
    return H;
}

/*
 * The ideal B cap varsigma^{(s)} R-hat at level r: cut from O_max by
 *  - at q | N+:  row-2 left-kernel form of varsigma_q^{-1} i_q(x), mod q^{v_q}
 *  - at p: the three forms from varsigma_p^{(s)} described in the text.
 */
static qlat point_ideal(const heegner_context& H, unsigned s, int r)
{
    qlat L = H.Omax;
    // N+ components: varsigma_q^{-1} = [[1, -theta_bar],[-1, theta]]
    for (const auto& sp : H.nplus_splits) {
        unsigned v = valuation(H.Nplus, sp.q);
        ZZ qv = zz_pow(sp.q, v);
        ZZ t = sp.theta_root;
        ZZ tbar = mod_pos(H.B.K.tr_th - t, sp.mod);
        auto b = lat_basis(L);
        zmat forms(1, zrow(4));
        for (int k = 0; k < 4; ++k) {
            auto m = sp.image(H.B, b[k]);
            // y10 = -m00 + theta * m10
            forms[0][size_t(k)] = mod_pos(-m[0] + t * m[2], qv);
        }
        (void)tbar;
        L = sublattice_by_conditions(L, forms, qv);
    }
    // p component
    {
        const local_splitting& sp = H.p_split;
        ZZ ps = zz_pow(ZZ(H.p), s);
        ZZ pr = zz_pow(ZZ(H.p), unsigned(r));
        auto b = lat_basis(L);
        zmat forms(3, zrow(4));
        for (int k = 0; k < 4; ++k) {
            auto m = sp.image(H.B, b[k]);
            if (H.p_splits_in_K) {
                ZZ t = sp.theta_root;
                // z = C^{-1} i(x), C = [[t, -1],[1, 0]]: z row 1 = (m10, m11),
                // z row 2 = (-m00 + t m10, -m01 + t m11)
                forms[0][size_t(k)] = mod_pos(m[2], ps);              // z00 mod p^s
                forms[1][size_t(k)] = mod_pos(m[3], ps);              // z01 mod p^s
                forms[2][size_t(k)] = mod_pos(-m[0] + t * m[2], pr);  // z10 mod p^r
            } else {
                // C = [[0, 1],[-1, 0]]: z row 1 = (-m10, -m11), row 2 = (m00, m01)
                forms[0][size_t(k)] = mod_pos(-m[2], ps);
                forms[1][size_t(k)] = mod_pos(-m[3], ps);
                forms[2][size_t(k)] = mod_pos(m[0], pr);
            }
        }
        // impose the three congruences at their own moduli
        zmat f0(1, forms[0]), f1(1, forms[1]), f2(1, forms[2]);
        L = sublattice_by_conditions(L, f0, ps);
        L = sublattice_by_conditions(L, f1, ps);
        L = sublattice_by_conditions(L, f2, pr);
    }
    return L;
}

gross_point base_point(const heegner_context& H, int n, int r)
{
    unsigned s = unsigned(n + r);
    gross_point P;
    P.I = point_ideal(H, s, r);
    P.conductor = zz_pow(ZZ(H.p), s);
    P.r = r;
    P.omega = quat_elt(0, QQ(P.conductor), 0, 0); // iota_K(c theta)
    if (!optimality_check(H, P))
        throw embedding_error("base point embedding is not optimal");
    return P;
}

bool optimality_check(const heegner_context& H, const gross_point& P)
{
    // K cap O_l(I) as a rank-2 lattice in coordinates (x, y): x + y theta
    qlat O = left_order(H.B, P.I);
    // {(x, y) : x e0 + y e_theta in O}: dual-lattice method on the 2 x 4
    // coefficient matrix
    qmat Bm(4, qrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            Bm[i][j] = QQ(O.H[i][j]) / QQ(O.den);
    qmat inv = qq_mat_inv(Bm);
    // coords of e0 and e_theta in the O-basis: rows of P2 = E * inv
    // with E = [[1,0,0,0],[0,1,0,0]]
    // condition: (x, y) P2 integral -> lattice = dual of column span of P2
    qmat P2(2, qrow(4));
    for (int j = 0; j < 4; ++j) {
        P2[0][j] = inv[0][j];
        P2[1][j] = inv[1][j];
    }
    // columns of P2 generate a lattice in Q^2; the (x, y)-lattice is its dual
    // dual computed by clearing denominators and 2x2 inversion on an HNF
    ZZ den = 1;
    for (int r2 = 0; r2 < 2; ++r2)
        for (int j = 0; j < 4; ++j)
            den = lcm(den, ZZ(P2[size_t(r2)][size_t(j)].get_den()));
    zmat cols;
    for (int j = 0; j < 4; ++j) {
        zrow c(2);
        for (int r2 = 0; r2 < 2; ++r2) {
            QQ v = P2[size_t(r2)][size_t(j)] * QQ(den);
            c[size_t(r2)] = ZZ(v.get_num());
        }
        cols.push_back(c);
    }
    zmat Hn = hnf_rows(cols);
    if (Hn.size() != 2)
        return false;
    // dual of (1/den) * rowspan(Hn): rows of den * (Hn^{-1})^T
    ZZ det = Hn[0][0] * Hn[1][1] - Hn[0][1] * Hn[1][0];
    // dual basis rows: den/det * [[Hn11, -Hn10],[-Hn01, Hn00]] transposed
    // the (x, y) lattice L2 = { v : v * (Hn/den)^T integral }
    // = row span of den * (Hn^T)^{-1} = den/det * [[Hn11, -Hn01],[-Hn10, Hn00]]
    qmat D(2, qrow(2));
    D[0][0] = QQ(den * Hn[1][1]) / QQ(det);
    D[0][1] = QQ(-den * Hn[0][1]) / QQ(det);
    D[1][0] = QQ(-den * Hn[1][0]) / QQ(det);
    D[1][1] = QQ(den * Hn[0][0]) / QQ(det);
    // compare with Z + Z*c: HNF over Q of D must be [[1, x],[0, c-part]]
    // expected: x + y theta in O  <=>  y = 0 mod c and x integral
    // i.e. the lattice is exactly Z (+) cZ
    // bring D to HNF with rational entries cleared
    ZZ dd = 1;
    for (auto& row : D)
        for (auto& v : row)
            dd = lcm(dd, ZZ(v.get_den()));
    zmat Dz;
    for (auto& row : D) {
        zrow rr(2);
        for (int j = 0; j < 2; ++j) {
            QQ v = row[size_t(j)] * QQ(dd);
            rr[size_t(j)] = ZZ(v.get_num());
        }
        Dz.push_back(rr);
    }
    zmat Hd = hnf_rows(Dz);
    if (Hd.size() != 2)
        return false;
    // lattice (1/dd) Hd should equal Z1 + Z(c theta): rows (dd, 0), (0, dd*c)
    return Hd[0][0] == dd && Hd[0][1] == 0 && Hd[1][0] == 0 &&
           Hd[1][1] == dd * P.conductor;
}

long point_class(const heegner_context& H, const gross_point& P)
{
    return H.at_r(P.r).resolve(P.I);
}

gross_point galois_act(const heegner_context& H, const bqf& cls, const gross_point& P)
{
    ZZ D = bqf_disc(cls);
    if (D != -P.conductor * P.conductor * H.B.K.DK)
        throw arith_error("galois_act: conductor mismatch");
    // Psi(a) = Z A + Z (-b + (2 omega - c D'))/2 with A = cls.a
    quat_elt s = q_sub(q_scal(QQ(2), P.omega),
                       q_scal(QQ(P.conductor * H.B.K.Dp), quat_elt::one()));
    quat_elt g2 = q_scal(QQ(1, 2), q_add(q_scal(QQ(-cls.b), quat_elt::one()), s));
    // J = Psi(a) * I: products of the two generators with the basis of I
    std::vector<quat_elt> gens;
    auto bI = lat_basis(P.I);
    for (int k = 0; k < 4; ++k) {
        gens.push_back(q_scal(QQ(cls.a), bI[k]));
        gens.push_back(q_mul(H.B, g2, bI[k]));
    }
    gross_point Q;
    Q.I = lat_from_rows(gens);
    Q.conductor = P.conductor;
    Q.r = P.r;
    Q.omega = P.omega; // the embedding is unchanged; the ideal moved
    return Q;
}

bool points_equal(const heegner_context& H, const gross_point& P, const gross_point& Q)
{
    const shimura_set& S = H.at_r(P.r);
    auto [ip, xp] = S.resolve_transporter(P.I);
    auto [iq, xq] = S.resolve_transporter(Q.I);
    if (ip != iq || P.conductor != Q.conductor)
        return false;
    // embeddings into the left order of the representative: omega conjugated
    quat_elt wp = q_mul(H.B, q_mul(H.B, q_inv(H.B, xp), P.omega), xp);
    quat_elt wq = q_mul(H.B, q_mul(H.B, q_inv(H.B, xq), Q.omega), xq);
    // equal up to conjugation by a unit of O_l(I_ip)
    auto units = all_nrd(H.B, S.left_orders[size_t(ip)], QQ(1));
    for (const auto& u : units) {
        quat_elt w = q_mul(H.B, q_mul(H.B, q_inv(H.B, u), wp), u);
        if (w == wq)
            return true;
    }
    return false;
}

std::vector<long> orbit_classes(const heegner_context& H, int n, int r)
{
    unsigned s = unsigned(n + r);
    const ring_class_group& G = H.pic_at(s);
    gross_point P = base_point(H, n, r);
    const shimura_set& S = H.at_r(r);
    std::vector<long> classes(size_t(G.order()));
    for (long i = 0; i < G.order(); ++i) {
        gross_point Q = galois_act(H, G.elems[size_t(i)], P);
        classes[size_t(i)] = S.resolve(Q.I);
    }
    return classes;
}

std::vector<std::vector<ZZ>> corestriction_table(const heegner_context& H, int n, int r)
{
    unsigned s = unsigned(n + 1 + r);
    const ring_class_group& G = H.pic_at(s);
    const shimura_set& S = H.at_r(r);
    gross_point P = base_point(H, n + 1, r);
    long pn = i64_pow(H.p, unsigned(n));
    std::vector<std::vector<ZZ>> table(size_t(pn), std::vector<ZZ>(size_t(S.h()), 0));
    for (long i = 0; i < G.order(); ++i) {
        gross_point Q = galois_act(H, G.elems[size_t(i)], P);
        long cls = S.resolve(Q.I);
        long sigma = H.gamma_of(s, i, n);
        table[size_t(sigma)][size_t(cls)] += 1;
    }
    return table;
}

compat_report verify_compatibilities(const heegner_context& H,
                                     const std::map<int, zzmat>& up_by_r,
                                     const std::map<int, zzmat>& lower_by_r, int nr_bound)
{
    compat_report rep;
    for (int r = 1; r <= H.r_max; ++r) {
        for (int n = 0; n <= H.n_max; ++n) {
            if (n + r > nr_bound)
                continue;
            // vertical: n > 0
            if (n > 0) {
                unsigned s = unsigned(n + r);
                const shimura_set& S = H.at_r(r);
                gross_point P = base_point(H, n, r);
                std::vector<ZZ> lhs(size_t(S.h()), 0);
                const ring_class_group& G = H.pic_at(s);
                for (long kcls : H.lowering_kernel(s)) {
                    gross_point Q = galois_act(H, G.elems[size_t(kcls)], P);
                    lhs[size_t(S.resolve(Q.I))] += 1;
                }
                gross_point Pl = base_point(H, n - 1, r);
                std::vector<ZZ> rhs(size_t(S.h()), 0);
                const zzmat& U = up_by_r.at(r);
                long c = S.resolve(Pl.I);
                for (long j = 0; j < S.h(); ++j)
                    rhs[size_t(j)] = U.at(size_t(j), size_t(c));
                rep.lines.push_back({n, r, "vertical", lhs == rhs});
            }
            // horizontal: r > 1
            if (r > 1) {
                unsigned s = unsigned(n + r);
                const shimura_set& Slow = H.at_r(r - 1);
                gross_point P = base_point(H, n, r);
                std::vector<ZZ> lhs(size_t(Slow.h()), 0);
                const ring_class_group& G = H.pic_at(s);
                for (long kcls : H.lowering_kernel(s)) {
                    gross_point Q = galois_act(H, G.elems[size_t(kcls)], P);
                    qlat down = lat_product(H.B, Q.I, Slow.R);
                    lhs[size_t(Slow.resolve(down))] += 1;
                }
                gross_point Pl = base_point(H, n, r - 1);
                std::vector<ZZ> rhs(size_t(Slow.h()), 0);
                const zzmat& U = up_by_r.at(r - 1);
                long c = Slow.resolve(Pl.I);
                for (long j = 0; j < Slow.h(); ++j)
                    rhs[size_t(j)] = U.at(size_t(j), size_t(c));
                rep.lines.push_back({n, r, "horizontal", lhs == rhs});
            }
        }
    }
    (void)lower_by_r;
    return rep;
}

} // namespace gi
