#include "gi/hecke.hpp"

namespace gi {

zzmat zz_mul(const zzmat& A, const zzmat& B)
{
    if (A.cols != B.rows)
        throw arith_error("zzmat dimension mismatch");
    zzmat C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            const ZZ& v = A.at(i, k);
            if (v == 0)
                continue;
            for (size_t j = 0; j < B.cols; ++j)
                if (B.at(k, j) != 0)
                    C.at(i, j) += v * B.at(k, j);
        }
    return C;
}

std::vector<ZZ> zz_colsums(const zzmat& A)
{
    std::vector<ZZ> s(A.cols, 0);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            s[j] += A.at(i, j);
    return s;
}

modmat to_modmat(const zzmat& A, const padic_ctx& cx)
{
    modmat M(cx, A.rows, A.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            M.at(i, j) = cx.reduce(A.at(i, j));
    return M;
}

std::map<long, zzmat> brandt_matrices(const shimura_set& S, const std::vector<long>& ells)
{
    long h = S.h();
    std::map<long, zzmat> out;
    for (long ell : ells)
        out[ell] = zzmat(size_t(h), size_t(h));
    long maxell = *std::max_element(ells.begin(), ells.end());

    for (long i = 0; i < h; ++i)
        for (long j = 0; j < h; ++j) {
            // count x in I_i conj(I_j) with nrd(x) = ell nrd(I_i) nrd(I_j),
            // then divide by the unit count of O_l(I_j)
            qlat M = lat_product(S.B, S.ideals[size_t(i)], lat_conj(S.B, S.ideals[size_t(j)]));
            QQ base = S.nrds[size_t(i)] * S.nrds[size_t(j)];
            auto counts = nrd_counts(S.B, M, QQ(maxell) * base);
            for (long ell : ells) {
                auto it = counts.find(QQ(ell) * base);
                long c = it == counts.end() ? 0 : it->second;
                if (c % S.units[size_t(j)] != 0)
                    throw arith_error("brandt count not divisible by unit order");
                out[ell].at(size_t(j), size_t(i)) = c / S.units[size_t(j)];
            }
        }
    return out;
}

zzmat brandt_matrix(const shimura_set& S, long ell)
{
    return brandt_matrices(S, {ell}).at(ell);
}

namespace {

/*
 * Entry conditions for sublattices cut from lattice L at prime q through a
 * local generator x0 of L: returns the integer matrix whose row k holds the
 * four entries (mod q^prec) of i_q(conj(x0) b_k) * unit(nrd x0)^{-1}; these
 * equal q^e * m_k with m_k = i_q(x0^{-1} b_k) integral and e = v_q(nrd L).
 */
struct local_frame {
    unsigned e = 0;
    std::array<std::array<ZZ, 4>, 4> M; // per basis vector: 2x2 image entries
    ZZ mod;
};

local_frame make_frame(const quat_alg& B, const qlat& L, const local_splitting& sp,
                       const quat_elt& x0)
{
    local_frame fr;
    QQ n0 = q_nrd(B, x0);
    unsigned vnum = valuation(ZZ(n0.get_num()), sp.q);
    unsigned vden = n0.get_den() == 1 ? 0 : valuation(ZZ(n0.get_den()), sp.q);
    if (vden != 0)
        throw arith_error("local generator norm has q in denominator");
    fr.e = vnum;
    ZZ unit_num = ZZ(n0.get_num()) / zz_pow(sp.q, vnum);
    ZZ unit_den = ZZ(n0.get_den());
    ZZ uinv = mod_pos(unit_den * inv_mod(mod_pos(unit_num, sp.mod), sp.mod), sp.mod);
    quat_elt x0c = q_conj(B, x0);
    auto b = lat_basis(L);
    for (int k = 0; k < 4; ++k) {
        auto im = sp.image(B, q_mul(B, x0c, b[k]));
        for (int t = 0; t < 4; ++t)
            fr.M[size_t(k)][size_t(t)] = mod_pos(im[size_t(t)] * uinv, sp.mod);
    }
    fr.mod = sp.mod;
    return fr;
}

/* sublattice of L where the given entry-forms vanish mod q^{e + extra} */
qlat cut_by_entries(const qlat& L, const local_frame& fr,
                    const std::vector<std::array<ZZ, 4>>& entry_forms, const ZZ& q,
                    unsigned extra)
{
    ZZ m = zz_pow(q, fr.e + extra);
    zmat forms;
    for (const auto& coef : entry_forms) {
        zrow f(4);
        for (int k = 0; k < 4; ++k) {
            ZZ v = 0;
            for (int t = 0; t < 4; ++t)
                v += coef[size_t(t)] * fr.M[size_t(k)][size_t(t)];
            f[size_t(k)] = mod_pos(v, m);
        }
        forms.push_back(f);
    }
    return sublattice_by_conditions(L, forms, m);
}

} // namespace

zzmat u_p_matrix(const shimura_set& S)
{
    if (S.r < 1)
        throw arith_error("U_p needs level r >= 1");
    long hs = S.h();
    ZZ p(S.p);
    auto U = zzmat(size_t(hs), size_t(hs));
    for (long i = 0; i < hs; ++i) {
        const qlat& I = S.ideals[size_t(i)];
        quat_elt x0 = local_generator(S.B, I, p, S.nrds[size_t(i)]);
        QQ n0 = q_nrd(S.B, x0);
        unsigned e = valuation(ZZ(n0.get_num()), p);
        local_splitting sp = make_splitting(S.B, p, e + unsigned(S.r) + 8);
        local_frame fr = make_frame(S.B, I, sp, x0);
        for (long t = 0; t < S.p; ++t) {
            // m in [[p, t],[0, 1]] E  <=>  m00 = t m10 and m01 = t m11 mod p
            std::vector<std::array<ZZ, 4>> forms = {
                {ZZ(1), ZZ(0), ZZ(-t), ZZ(0)},  // m00 - t m10
                {ZZ(0), ZZ(1), ZZ(0), ZZ(-t)}}; // m01 - t m11
            qlat J = cut_by_entries(I, fr, forms, p, 1);
            if (lat_index(J, I) != QQ(S.p) * QQ(S.p))
                throw arith_error("U_p sublattice has wrong index");
            long j = S.resolve(J);
            U.at(size_t(j), size_t(i)) += 1;
        }
    }
    return U;
}

zzmat degeneracy_pushforward(const shimura_set& from, const shimura_set& to, long ell, int i,
                             int dprime_exp)
{
    if (i < 1 || i > 2 || dprime_exp < 0 || dprime_exp > i)
        throw arith_error("degeneracy map: bad exponents");
    if (from.Nplus != to.Nplus * zz_pow(ZZ(ell), unsigned(i)) || from.r != to.r)
        throw arith_error("degeneracy map: level mismatch");
    long h = from.h();
    ZZ q(ell);
    zzmat D(size_t(to.h()), size_t(h));
    for (long c = 0; c < h; ++c) {
        const qlat& I = from.ideals[size_t(c)];
        qlat L = lat_product(from.B, I, to.R);
        long j;
        if (dprime_exp == 0) {
            j = to.resolve(L);
        } else {
            // the frame must come from a local generator of I itself, so that
            // I_ell = x0 E_big and B cap x0 pi R_small is generator-independent
            quat_elt x0 = local_generator(from.B, I, q, from.nrds[size_t(c)]);
            QQ n0 = q_nrd(from.B, x0);
            unsigned e = valuation(ZZ(n0.get_num()), q);
            local_splitting sp = make_splitting(from.B, q, e + unsigned(dprime_exp) + 6);
            local_frame fr = make_frame(from.B, L, sp, x0);
            // m in diag(1, ell^w) M2(Z_ell) <=> bottom row = 0 mod ell^w
            std::vector<std::array<ZZ, 4>> forms = {{ZZ(0), ZZ(0), ZZ(1), ZZ(0)},
                                                    {ZZ(0), ZZ(0), ZZ(0), ZZ(1)}};
            qlat J = cut_by_entries(L, fr, forms, q, unsigned(dprime_exp));
            j = to.resolve(J);
        }
        D.at(size_t(j), size_t(c)) += 1;
    }
    return D;
}

zzmat level_lowering(const shimura_set& from, const shimura_set& to)
{
    if (from.Nplus != to.Nplus || from.r != to.r + 1)
        throw arith_error("level lowering expects r -> r-1");
    zzmat A(size_t(to.h()), size_t(from.h()));
    for (long c = 0; c < from.h(); ++c) {
        qlat L = lat_product(from.B, from.ideals[size_t(c)], to.R);
        A.at(size_t(to.resolve(L)), size_t(c)) += 1;
    }
    return A;
}

ordinary_space ordinary_projector(const shimura_set& S, const zzmat& Up, const padic_ctx& cx)
{
    ordinary_space o;
    o.e = ordinary_projector_matrix(to_modmat(Up, cx));
    o.ib = split_idempotent(o.e);
    o.rank = o.ib.P.cols;
    // e commutes with U_p and U_p is invertible on the image
    modmat U = to_modmat(Up, cx);
    if (!(mm_mul(o.e, U) == mm_mul(U, o.e)))
        throw arith_error("ordinary projector does not commute with U_p");
    modmat Ublock = mm_mul(o.ib.S, mm_mul(U, o.ib.P));
    mm_inv(Ublock); // throws if not invertible
    return o;
}

std::vector<eigensystem_mod_p> eigensystems_mod_p(const shimura_set& S,
                                                  const std::map<long, zzmat>& ops,
                                                  const zzmat& Up, i64 p)
{
    if (ops.empty())
        throw arith_error("eigensystems: empty operator range");
    padic_ctx cx1(p, 1);
    // split the full space by simultaneous eigenvalues over F_p
    struct space {
        modmat basis; // rows span
        std::map<long, i64> a;
    };
    modmat full = modmat::identity(cx1, size_t(S.h()));
    std::vector<space> spaces{{full, {}}};
    auto split_by = [&](long label, const zzmat& T) {
        modmat Tm = to_modmat(T, cx1);
        std::vector<space> nxt;
        for (auto& sp : spaces) {
            size_t k = sp.basis.rows;
            // restricted action A: rows of basis * T^T ... solve in row space
            // work with row vectors: v T for each basis row v
            for (i64 a = 0; a < p; ++a) {
                // kernel of (T - a) on the row space: rows c with c (B T - a B) = 0
                modmat BT(cx1, k, size_t(S.h()));
                for (size_t r = 0; r < k; ++r)
                    for (size_t j = 0; j < size_t(S.h()); ++j) {
                        i64 v = 0;
                        for (size_t t = 0; t < size_t(S.h()); ++t)
                            if (sp.basis.at(r, t))
                                v = cx1.add(v, cx1.mul(sp.basis.at(r, t), Tm.at(t, j)));
                        BT.at(r, j) = cx1.sub(v, cx1.mul(a, sp.basis.at(r, j)));
                    }
                modmat K = left_kernel_mod(BT);
                if (K.rows == 0)
                    continue;
                space ns;
                ns.a = sp.a;
                ns.a[label] = a;
                ns.basis = modmat(cx1, K.rows, size_t(S.h()));
                for (size_t r = 0; r < K.rows; ++r)
                    for (size_t j = 0; j < size_t(S.h()); ++j) {
                        i64 v = 0;
                        for (size_t t = 0; t < k; ++t)
                            if (K.at(r, t))
                                v = cx1.add(v, cx1.mul(K.at(r, t), sp.basis.at(t, j)));
                        ns.basis.at(r, j) = v;
                    }
                nxt.push_back(std::move(ns));
            }
        }
        spaces = std::move(nxt);
    };
    for (const auto& [ell, T] : ops)
        split_by(ell, T);
    split_by(long(p), Up);

    std::vector<eigensystem_mod_p> out;
    for (auto& sp : spaces) {
        eigensystem_mod_p m;
        m.p = p;
        m.a = sp.a;
        m.multiplicity = long(sp.basis.rows);
        m.ordinary = m.a.at(long(p)) != 0;
        m.eisenstein = true;
        for (const auto& [ell, a] : m.a) {
            if (ell == long(p))
                continue;
            if (a != (ell + 1) % p) {
                m.eisenstein = false;
                break;
            }
        }
        i64 ap = m.a.at(long(p));
        m.distinguished = (ap * ap) % p != 1 % p;
        out.push_back(std::move(m));
    }
    return out;
}

mult_one_certificate multiplicity_one_check(const ordinary_space& osp,
                                            const std::map<long, zzmat>& ops, const zzmat& Up,
                                            const eigensystem_mod_p& m)
{
    if (m.eisenstein || !m.ordinary)
        throw arith_error("multiplicity one check needs a non-Eisenstein ordinary system");
    padic_ctx cx1(m.p, 1);
    size_t h = Up.rows;
    // joint kernel of (T - a_T) on the ordinary part mod p: stack the maps
    std::vector<const zzmat*> mats;
    std::vector<i64> eigs;
    for (const auto& [ell, a] : m.a) {
        mats.push_back(ell == long(m.p) ? &Up : &ops.at(ell));
        eigs.push_back(a);
    }
    modmat e1(cx1, h, h);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j)
            e1.at(i, j) = cx1.reduce(osp.e.at(i, j) % m.p);
    // columns space: vectors v = e1 w with (T - a) v = 0 for all T
    modmat stacked(cx1, h * mats.size() + h, h);
    for (size_t t = 0; t < mats.size(); ++t) {
        modmat Tm = to_modmat(*mats[t], cx1);
        for (size_t i = 0; i < h; ++i)
            for (size_t j = 0; j < h; ++j)
                stacked.at(t * h + i, j) =
                    cx1.sub(Tm.at(i, j), i == j ? eigs[t] : 0);
    }
    // also require v in im(e1): (1 - e1) v = 0
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j)
            stacked.at(mats.size() * h + i, j) =
                cx1.sub(i == j ? 1 : 0, e1.at(i, j));
    // kernel of stacked acting on column vectors = left kernel of transpose
    modmat K = left_kernel_mod(mm_transpose(stacked));
    mult_one_certificate cert;
    cert.eigenspace_dim = long(K.rows);
    cert.ok = K.rows == 1;
    return cert;
}

eigen_functional make_eigen_functional(const ordinary_space& osp,
                                       const std::vector<std::pair<zzmat, i64>>& ops_eigs,
                                       const padic_ctx& cx)
{
    size_t h = osp.e.rows;
    size_t k = osp.rank;
    // restrict operators to the ordinary block: Tb = S T P (k x k);
    // find row vector phi_b with phi_b Tb = a phi_b for all pairs, i.e.
    // phi_b in the left kernel of the horizontal stack of the (Tb - a)
    modmat stacked(cx, k, k * ops_eigs.size());
    size_t t = 0;
    for (const auto& [T, a] : ops_eigs) {
        modmat Tb = mm_mul(osp.ib.S, mm_mul(to_modmat(T, cx), osp.ib.P));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                stacked.at(i, t * k + j) = cx.sub(Tb.at(i, j), i == j ? a : 0);
        ++t;
    }
    modmat K = left_kernel_mod(stacked);
    eigen_functional f;
    f.rank_one = (K.rows == 1);
    if (K.rows == 0)
        throw arith_error("no eigenfunctional mod p^M for the given system");
    // pick the first kernel row with some unit entry (free generator)
    size_t pick = K.rows;
    for (size_t r = 0; r < K.rows && pick == K.rows; ++r)
        for (size_t j = 0; j < k; ++j)
            if (cx.is_unit(K.at(r, j))) {
                pick = r;
                break;
            }
    if (pick == K.rows)
        throw arith_error("eigenfunctional kernel has no unit vector");
    // phi on the full space: phi = phi_b S, then precompose with e:
    // value on divisor v is phi_b S e v; S e = S, so row = phi_b S
    std::vector<i64> row(h, 0);
    for (size_t j = 0; j < h; ++j) {
        i64 v = 0;
        for (size_t c = 0; c < k; ++c)
            v = cx.add(v, cx.mul(K.at(pick, c), osp.ib.S.at(c, j)));
        row[j] = v;
    }
    // normalization: first standard basis divisor with unit value of
    // phi(e * delta_j)
    f.row = row;
    std::vector<i64> vals(h, 0);
    for (size_t j = 0; j < h; ++j) {
        i64 v = 0;
        for (size_t i = 0; i < h; ++i)
            v = cx.add(v, cx.mul(row[i], osp.e.at(i, j)));
        vals[j] = v;
    }
    long best = -1;
    int bestval = cx.M + 1;
    for (size_t j = 0; j < h; ++j) {
        int val = cx.valuation(vals[j]);
        if (val == 0) {
            best = long(j);
            bestval = 0;
            break;
        }
        if (val < bestval) {
            bestval = val;
            best = long(j);
        }
    }
    if (best < 0)
        throw arith_error("eigenfunctional vanishes on all basis divisors");
    f.norm_index = best;
    f.norm_shift = bestval;
    if (bestval == 0) {
        i64 s = cx.inv(vals[size_t(best)]);
        for (auto& x : f.row)
            x = cx.mul(x, s);
    } else {
        // no unit pairing: scale so the minimal-valuation value becomes p^shift
        i64 red = cx.reduce(vals[size_t(best)]) / i64_pow(cx.p, unsigned(bestval));
        i64 s = cx.inv(red);
        for (auto& x : f.row)
            x = cx.mul(x, s);
    }
    return f;
}

i64 apply_functional(const padic_ctx& cx, const std::vector<i64>& row,
                     const std::vector<i64>& divisor)
{
    if (row.size() != divisor.size())
        throw arith_error("functional/divisor size mismatch");
    i64 v = 0;
    for (size_t i = 0; i < row.size(); ++i)
        v = cx.add(v, cx.mul(row[i], divisor[i]));
    return v;
}

} // namespace gi
