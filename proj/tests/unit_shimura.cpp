#include "doctest.h"
#include <set>

#include "gi/hecke.hpp"
#include "oracle_ec.hpp"

using namespace gi;

namespace {

quat_alg alg11()
{
    return choose_beta(imag_quad_field(ZZ(3)), ZZ(11), {ZZ(7)});
}

const shimura_set& set11_level1()
{
    static shimura_set S = [] {
        quat_alg B = alg11();
        return make_shimura_set(B, maximal_order(B), ZZ(1), 7, 0);
    }();
    return S;
}

const shimura_set& set11_r1()
{
    static shimura_set S = [] {
        quat_alg B = alg11();
        return make_shimura_set(B, maximal_order(B), ZZ(1), 7, 1);
    }();
    return S;
}

} // namespace

TEST_CASE("class sets meet the mass formula")
{
    const shimura_set& S = set11_level1();
    CHECK(S.h() == 2);
    CHECK(eichler_mass(ZZ(11), ZZ(1)) == QQ(5, 12));
    // unit orders {2, 3} up to sign
    std::multiset<long> u(S.units.begin(), S.units.end());
    CHECK(u == std::multiset<long>{4, 6});

    // disc 2: h = 1 with 24 units
    quat_alg B2 = choose_beta(imag_quad_field(ZZ(11)), ZZ(2), {ZZ(5)});
    shimura_set S2 = make_shimura_set(B2, maximal_order(B2), ZZ(1), 5, 0);
    CHECK(S2.h() == 1);
    CHECK(S2.units[0] == 24);

    // disc 3
    quat_alg B3 = choose_beta(imag_quad_field(ZZ(7)), ZZ(3), {ZZ(11)});
    shimura_set S3 = make_shimura_set(B3, maximal_order(B3), ZZ(1), 11, 0);
    CHECK(S3.h() == 1);
    CHECK(S3.units[0] == 12);
}

TEST_CASE("brandt anchor at disc 11: eigenvalues {ell + 1, a_ell(11a)}")
{
    const shimura_set& S = set11_level1();
    auto mats = brandt_matrices(S, {2, 3, 5, 7, 13});
    for (long ell : {2L, 3L, 5L, 7L, 13L}) {
        const zzmat& T = mats[ell];
        // column sums ell + 1
        for (const ZZ& s : zz_colsums(T))
            CHECK(s == ell + 1);
        // 2x2: eigenvalues are ell+1 and trace - (ell+1)
        ZZ tr = T.at(0, 0) + T.at(1, 1);
        CHECK(tr - (ell + 1) == trace_11a(ell));
    }
    // commutativity
    CHECK(zz_mul(mats[2], mats[3]) == zz_mul(mats[3], mats[2]));
}

TEST_CASE("eichler trace consistency at disc 11")
{
    // trace of T_ell on the Brandt module = (ell + 1) + a_ell for good small ell
    const shimura_set& S = set11_level1();
    for (long ell : {2L, 3L, 5L, 7L, 13L, 17L, 19L}) {
        zzmat T = brandt_matrix(S, ell);
        CHECK(T.at(0, 0) + T.at(1, 1) == (ell + 1) + trace_11a(ell));
    }
}

TEST_CASE("U_p at disc 11, p=7, r=1: structure and ordinarity")
{
    const shimura_set& S = set11_r1();
    CHECK(eichler_mass(ZZ(11), ZZ(7)) == QQ(10, 3));
    zzmat U = u_p_matrix(S);
    for (const ZZ& s : zz_colsums(U))
        CHECK(s == 7);
    // commutes with T_ell
    for (long ell : {2L, 3L, 5L}) {
        zzmat T = brandt_matrix(S, ell);
        CHECK(zz_mul(U, T) == zz_mul(T, U));
        for (const ZZ& s : zz_colsums(T))
            CHECK(s == ell + 1);
    }

    padic_ctx cx(7, 8);
    ordinary_space osp = ordinary_projector(S, U, cx);
    CHECK(mm_mul(osp.e, osp.e) == osp.e);
    // rank equals the number of unit roots of charpoly(U_7), read off the
    // Newton polygon: deg - (least index with 7-unit coefficient)
    {
        long h = S.h();
        // charpoly by Lagrange interpolation of det(xI - U) at x = 0..h
        std::vector<QQ> detvals;
        for (long x = 0; x <= h; ++x) {
            auto M = qmat(size_t(h), qrow(size_t(h)));
            for (long a = 0; a < h; ++a)
                for (long b = 0; b < h; ++b)
                    M[size_t(a)][size_t(b)] = QQ((a == b ? ZZ(x) : ZZ(0)) - U.at(size_t(a), size_t(b)));
            // determinant by elimination
            QQ det = 1;
            for (long c = 0; c < h; ++c) {
                long piv = c;
                while (piv < h && M[size_t(piv)][size_t(c)] == 0)
                    ++piv;
                if (piv == h) {
                    det = 0;
                    break;
                }
                if (piv != c) {
                    std::swap(M[size_t(piv)], M[size_t(c)]);
                    det = -det;
                }
                det *= M[size_t(c)][size_t(c)];
                for (long i = c + 1; i < h; ++i) {
                    if (M[size_t(i)][size_t(c)] == 0)
                        continue;
                    QQ f = M[size_t(i)][size_t(c)] / M[size_t(c)][size_t(c)];
                    for (long j = c; j < h; ++j)
                        M[size_t(i)][size_t(j)] -= f * M[size_t(c)][size_t(j)];
                }
            }
            detvals.push_back(det);
        }
        // interpolate to coefficients
        std::vector<QQ> coef(size_t(h) + 1, 0);
        for (long i = 0; i <= h; ++i) {
            // Lagrange basis poly for node i
            std::vector<QQ> l{1};
            QQ denom = 1;
            for (long j = 0; j <= h; ++j) {
                if (j == i)
                    continue;
                std::vector<QQ> nl(l.size() + 1, 0);
                for (size_t t = 0; t < l.size(); ++t) {
                    nl[t + 1] += l[t];
                    nl[t] -= QQ(j) * l[t];
                }
                l = nl;
                denom *= QQ(i - j);
            }
            for (size_t t = 0; t < l.size(); ++t)
                coef[t] += detvals[size_t(i)] * l[t] / denom;
        }
        long lowest_unit = -1;
        for (long t = 0; t <= h; ++t) {
            CHECK(coef[size_t(t)].get_den() == 1);
            if (mod_pos(ZZ(coef[size_t(t)].get_num()), ZZ(7)) != 0) {
                lowest_unit = t;
                break;
            }
        }
        REQUIRE(lowest_unit >= 0);
        CHECK(long(osp.rank) == h - lowest_unit);
    }
    auto ops = brandt_matrices(S, {2, 3, 5, 13});
    auto systems = eigensystems_mod_p(S, ops, U, 7);
    bool saw_11a = false;
    for (const auto& m : systems) {
        if (!m.eisenstein && m.a.at(2) == ((trace_11a(2) % 7) + 7) % 7 &&
            m.a.at(3) == ((trace_11a(3) % 7) + 7) % 7 &&
            m.a.at(7) == ((trace_11a(7) % 7) + 7) % 7)
            saw_11a = true;
    }
    CHECK(saw_11a);
}

TEST_CASE("multiplicity one and the eigenfunctional for 11a at p=7")
{
    const shimura_set& S = set11_r1();
    zzmat U = u_p_matrix(S);
    auto ops = brandt_matrices(S, {2, 3, 5, 13});
    auto systems = eigensystems_mod_p(S, ops, U, 7);
    const eigensystem_mod_p* f = nullptr;
    for (const auto& m : systems)
        if (!m.eisenstein && m.ordinary && m.a.at(2) == ((trace_11a(2) % 7) + 7) % 7)
            f = &m;
    REQUIRE(f != nullptr);
    CHECK(f->distinguished);

    padic_ctx cx(7, 8);
    ordinary_space osp = ordinary_projector(S, U, cx);
    auto cert = multiplicity_one_check(osp, ops, U, *f);
    CHECK(cert.ok);
    CHECK(cert.eigenspace_dim == 1);

    // Eisenstein system is rejected
    for (const auto& m : systems)
        if (m.eisenstein)
            CHECK_THROWS(multiplicity_one_check(osp, ops, U, m));

    // delta_f with exact eigenvalues: a_ell from the oracle, U_7 = unit root
    // of x^2 - a_7 x + 7
    ZZ alpha = quad_root_qadic(ZZ(trace_11a(7)), ZZ(7), ZZ(7), 8,
                               ZZ(((trace_11a(7) % 7) + 7) % 7));
    std::vector<std::pair<zzmat, i64>> pairs;
    for (long ell : {2L, 3L, 5L, 13L})
        pairs.push_back({ops[ell], cx.reduce(ZZ(trace_11a(ell)))});
    pairs.push_back({U, cx.reduce(alpha)});
    eigen_functional delta = make_eigen_functional(osp, pairs, cx);
    CHECK(delta.rank_one);
    CHECK(delta.norm_shift == 0);
    // equivariance: phi(T v) = a phi(v) on random divisors
    splitmix64 rng(11);
    for (int t = 0; t < 10; ++t) {
        std::vector<i64> v(size_t(S.h()));
        for (auto& x : v)
            x = rng.below(cx.pM);
        // project to ordinary part first
        std::vector<i64> ev(size_t(S.h()), 0);
        for (size_t i = 0; i < ev.size(); ++i)
            for (size_t j = 0; j < ev.size(); ++j)
                ev[i] = cx.add(ev[i], cx.mul(osp.e.at(i, j), v[j]));
        for (auto& [T, a] : pairs) {
            std::vector<i64> Tv(ev.size(), 0);
            for (size_t i = 0; i < ev.size(); ++i)
                for (size_t j = 0; j < ev.size(); ++j)
                    Tv[i] = cx.add(Tv[i], cx.mul(cx.reduce(T.at(i, j)), ev[j]));
            CHECK(apply_functional(cx, delta.row, Tv) ==
                  cx.mul(a, apply_functional(cx, delta.row, ev)));
        }
    }
    // normalization: delta(e * basis vector at norm_index) = 1
    std::vector<i64> basis(size_t(S.h()), 0);
    for (size_t i = 0; i < basis.size(); ++i)
        basis[i] = osp.e.at(i, size_t(delta.norm_index));
    CHECK(apply_functional(cx, delta.row, basis) == 1);
}

TEST_CASE("degeneracy identities at disc 11 with auxiliary split ell = 13")
{
    // level 13 -> 1 at r = 1: pushforward columns sum to 1, and
    // (B_{13,1})_* (B_{13,1})^* = 14 on the small set
    quat_alg B = choose_beta(imag_quad_field(ZZ(3)), ZZ(11), {ZZ(7), ZZ(13)});
    qlat O = maximal_order(B);
    shimura_set Ssmall = make_shimura_set(B, O, ZZ(1), 7, 1);
    shimura_set Sbig = make_shimura_set(B, O, ZZ(13), 7, 1);
    zzmat D1 = degeneracy_pushforward(Sbig, Ssmall, 13, 1, 0);
    zzmat Dl = degeneracy_pushforward(Sbig, Ssmall, 13, 1, 1);
    for (const ZZ& s : zz_colsums(D1))
        CHECK(s == 1);
    for (const ZZ& s : zz_colsums(Dl))
        CHECK(s == 1);
    // weighted transposes give the pullbacks
    auto weights = [&](const shimura_set& S) {
        std::vector<QQ> w;
        for (long u : S.units)
            w.push_back(QQ(1) / QQ(u));
        return w;
    };
    auto wS = weights(Ssmall), wB = weights(Sbig);
    auto pullback = [&](const zzmat& P) {
        // P: small x big; P^* : big x small with P^*[c][j] = P[j][c] wB[c] / wS[j]
        std::vector<std::vector<QQ>> M(size_t(Sbig.h()),
                                       std::vector<QQ>(size_t(Ssmall.h())));
        for (long c = 0; c < Sbig.h(); ++c)
            for (long j = 0; j < Ssmall.h(); ++j)
                M[size_t(c)][size_t(j)] = QQ(P.at(size_t(j), size_t(c))) * wB[size_t(c)] / wS[size_t(j)];
        return M;
    };
    auto P1 = pullback(D1);
    // (B_{13,1})_* (B_{13,1})^* = (13 + 1) Id
    for (long a = 0; a < Ssmall.h(); ++a)
        for (long b = 0; b < Ssmall.h(); ++b) {
            QQ s = 0;
            for (long c = 0; c < Sbig.h(); ++c)
                s += QQ(D1.at(size_t(a), size_t(c))) * P1[size_t(c)][size_t(b)];
            CHECK(s == (a == b ? QQ(14) : QQ(0)));
        }
    // (B_{13,13})_* (B_{13,1})^* = T_13
    zzmat T13 = brandt_matrix(Ssmall, 13);
    for (long a = 0; a < Ssmall.h(); ++a)
        for (long b = 0; b < Ssmall.h(); ++b) {
            QQ s = 0;
            for (long c = 0; c < Sbig.h(); ++c)
                s += QQ(Dl.at(size_t(a), size_t(c))) * P1[size_t(c)][size_t(b)];
            CHECK(s == QQ(T13.at(size_t(a), size_t(b))));
        }
}
