#include "gi/shimura.hpp"

#include <deque>

namespace gi {

QQ eichler_mass(const ZZ& Nminus, const ZZ& level)
{
    QQ m(1, 24);
    for (const auto& [q, e] : factor(Nminus))
        m *= QQ(q - 1);
    ZZ psi = level;
    for (const auto& [q, e] : factor(level))
        psi = psi / q * (q + 1);
    m *= QQ(psi);
    return m;
}

ZZ shimura_set::level() const
{
    return B.Nminus * Nplus * zz_pow(ZZ(p), unsigned(r));
}

std::vector<long> shimura_set::signature(const qlat& J) const
{
    QQ n = lat_nrd(J, R);
    auto counts = nrd_counts(B, J, 6 * n);
    std::vector<long> sig;
    for (const auto& [val, cnt] : counts) {
        QQ rel = val / n;
        sig.push_back(to_i64(ZZ(rel.get_num())));
        sig.push_back(to_i64(ZZ(rel.get_den())));
        sig.push_back(cnt);
    }
    return sig;
}

std::pair<long, quat_elt> shimura_set::resolve_transporter(const qlat& J) const
{
    std::vector<long> sig = signature(J);
    auto it = sig_index_.find(sig);
    if (it == sig_index_.end())
        throw arith_error("ideal matches no class signature");
    QQ nJ = lat_nrd(J, R);
    for (long j : it->second) {
        qlat M = lat_product(B, J, lat_conj(B, ideals[size_t(j)]));
        auto x = find_nrd(B, M, nJ * nrds[size_t(j)]);
        if (x) {
            quat_elt t = q_scal(1 / QQ(nrds[size_t(j)]), *x);
            return {j, t};
        }
    }
    throw arith_error("ideal matches no class (signature collision only)");
}

long shimura_set::resolve(const qlat& J) const
{
    return resolve_transporter(J).first;
}

quat_elt local_generator(const quat_alg& B, const qlat& I, const ZZ& q, const QQ& nrdI)
{
    unsigned vtarget = valuation(ZZ(nrdI.get_num()), q) >= 1
                           ? valuation(ZZ(nrdI.get_num()), q)
                           : 0;
    if (nrdI.get_den() % q == 0)
        throw arith_error("local generator: nrd has q in denominator");
    // search elements of I by increasing norm
    for (QQ bound = nrdI; ; bound *= 2) {
        auto counts = nrd_counts(B, I, bound);
        for (const auto& [val, cnt] : counts) {
            if (val == 0)
                continue;
            QQ rel = val / nrdI;
            if (rel.get_den() % q != 0 && valuation(ZZ(rel.get_num()), q) == 0) {
                auto x = find_nrd(B, I, val);
                if (x)
                    return *x;
            }
        }
        if (bound > 4096 * nrdI)
            throw arith_error("no local generator found at q = " + q.get_str());
    }
    (void)vtarget;
}

std::vector<qlat> neighbor_sublattices(const quat_alg& B, const qlat& R, const qlat& I, long ell)
{
    // right-multiplication matrices of the R-basis on I-coordinates, mod ell
    qmat Bm(4, qrow(4)), BmInv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            Bm[i][j] = QQ(I.H[i][j]) / QQ(I.den);
    BmInv = qq_mat_inv(Bm);
    auto bI = lat_basis(I);
    auto bR = lat_basis(R);
    long M[4][4][4]; // M[r][i][k]: coords of bI[i] * bR[r]
    for (int rr = 0; rr < 4; ++rr)
        for (int i = 0; i < 4; ++i) {
            quat_elt prod = q_mul(B, bI[i], bR[rr]);
            for (int k = 0; k < 4; ++k) {
                QQ c = 0;
                for (int t = 0; t < 4; ++t)
                    c += prod.v[t] * BmInv[t][k];
                if (c.get_den() != 1)
                    throw arith_error("ideal is not R-stable");
                M[rr][i][k] = to_i64(mod_pos(ZZ(c.get_num()), ZZ(ell)));
            }
        }

    auto mulvec = [&](const std::array<long, 4>& v, int rr) {
        std::array<long, 4> w{0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            if (!v[size_t(i)])
                continue;
            for (int k = 0; k < 4; ++k)
                w[size_t(k)] = (w[size_t(k)] + v[size_t(i)] * M[rr][i][k]) % ell;
        }
        return w;
    };

    // enumerate 2-dimensional subspaces of F_ell^4 in echelon form
    std::vector<qlat> out;
    auto in_span = [&](const std::array<long, 4>& a, const std::array<long, 4>& b,
                       const std::array<long, 4>& w) {
        // solve w = x a + y b over F_ell (a, b echelon rows)
        std::array<long, 4> r = w;
        // reduce by a then b using their pivots
        for (const auto& row : {a, b}) {
            int piv = -1;
            for (int i = 0; i < 4; ++i)
                if (row[size_t(i)]) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            long inv = 1; // row[piv]^{-1} mod ell
            {
                long base = row[size_t(piv)] % ell, e = ell - 2, acc = 1;
                while (e) {
                    if (e & 1)
                        acc = acc * base % ell;
                    base = base * base % ell;
                    e >>= 1;
                }
                inv = acc;
            }
            long f = r[size_t(piv)] * inv % ell;
            for (int i = 0; i < 4; ++i)
                r[size_t(i)] = ((r[size_t(i)] - f * row[size_t(i)]) % ell + ell) % ell;
        }
        return r == std::array<long, 4>{0, 0, 0, 0};
    };

    for (int p1 = 0; p1 < 4; ++p1)
        for (int p2 = p1 + 1; p2 < 4; ++p2) {
            // echelon pair with pivots p1 < p2; free entries in non-pivot columns
            std::vector<int> free1, free2;
            for (int c = p1 + 1; c < 4; ++c)
                if (c != p2)
                    free1.push_back(c);
            for (int c = p2 + 1; c < 4; ++c)
                free2.push_back(c);
            long n1 = 1, n2 = 1;
            for (size_t t = 0; t < free1.size(); ++t)
                n1 *= ell;
            for (size_t t = 0; t < free2.size(); ++t)
                n2 *= ell;
            for (long a1 = 0; a1 < n1; ++a1)
                for (long a2 = 0; a2 < n2; ++a2) {
                    std::array<long, 4> va{0, 0, 0, 0}, vb{0, 0, 0, 0};
                    va[size_t(p1)] = 1;
                    vb[size_t(p2)] = 1;
                    long t1 = a1;
                    for (int c : free1) {
                        va[size_t(c)] = t1 % ell;
                        t1 /= ell;
                    }
                    long t2 = a2;
                    for (int c : free2) {
                        vb[size_t(c)] = t2 % ell;
                        t2 /= ell;
                    }
                    // R-stability
                    bool stable = true;
                    for (int rr = 0; rr < 4 && stable; ++rr) {
                        if (!in_span(va, vb, mulvec(va, rr)) ||
                            !in_span(va, vb, mulvec(vb, rr)))
                            stable = false;
                    }
                    if (!stable)
                        continue;
                    // J = Z<va, vb> * I + ell I
                    std::vector<quat_elt> gens;
                    quat_elt ga, gb;
                    for (int i = 0; i < 4; ++i) {
                        ga = q_add(ga, q_scal(QQ(va[size_t(i)]), bI[i]));
                        gb = q_add(gb, q_scal(QQ(vb[size_t(i)]), bI[i]));
                    }
                    gens.push_back(ga);
                    gens.push_back(gb);
                    for (int i = 0; i < 4; ++i)
                        gens.push_back(q_scal(QQ(ell), bI[i]));
                    out.push_back(lat_from_rows(gens));
                }
        }
    return out;
}

shimura_set make_shimura_set(const quat_alg& B, const qlat& Omax, const ZZ& Nplus, i64 p, int r)
{
    shimura_set S;
    S.B = B;
    S.Omax = Omax;
    S.Nplus = Nplus;
    S.p = p;
    S.r = r;

    // Eichler order
    std::vector<std::pair<local_splitting, unsigned>> levels;
    for (const auto& [q, e] : factor(Nplus)) {
        levels.push_back({make_splitting(B, q, e + 6), e});
    }
    if (r > 0)
        levels.push_back({make_splitting(B, ZZ(p), unsigned(r) + 8), unsigned(r)});
    S.R = eichler_order(B, Omax, levels);

    // auxiliary neighbor prime: smallest prime coprime to the level
    ZZ lev = S.level();
    for (long q = 2;; ++q) {
        if (!is_prime(ZZ(q)))
            continue;
        if (mod_pos(lev, ZZ(q)) != 0) {
            S.ell0 = q;
            break;
        }
    }

    QQ target = eichler_mass(B.Nminus, Nplus * zz_pow(ZZ(p), unsigned(r)));
    QQ massacc = 0;

    std::deque<long> frontier;
    auto add_class = [&](const qlat& I) {
        S.ideals.push_back(I);
        qlat O = left_order(B, I);
        S.left_orders.push_back(O);
        long u = unit_count(B, O);
        S.units.push_back(u);
        S.nrds.push_back(lat_nrd(I, S.R));
        S.sigs_.push_back(S.signature(I));
        S.sig_index_[S.sigs_.back()].push_back(S.h() - 1);
        massacc += QQ(1) / QQ(u);
        frontier.push_back(S.h() - 1);
    };

    add_class(S.R);

    while (massacc != target && !frontier.empty()) {
        long i = frontier.front();
        frontier.pop_front();
        auto nbrs = neighbor_sublattices(B, S.R, S.ideals[size_t(i)], S.ell0);
        for (const auto& J : nbrs) {
            bool known = false;
            // resolve against known classes, tolerating unknown signatures
            std::vector<long> sig = S.signature(J);
            QQ nJ = lat_nrd(J, S.R);
            auto it = S.sig_index_.find(sig);
            if (it != S.sig_index_.end()) {
                for (long j : it->second) {
                    qlat M = lat_product(B, J, lat_conj(B, S.ideals[size_t(j)]));
                    if (find_nrd(B, M, nJ * S.nrds[size_t(j)])) {
                        known = true;
                        break;
                    }
                }
            }
            if (!known) {
                add_class(J);
                if (massacc == target)
                    break;
            }
        }
    }
    if (massacc != target)
        throw mass_mismatch("traversal closed at mass " + std::string(massacc.get_str()) +
                            " != " + std::string(target.get_str()));
    return S;
}

} // namespace gi
