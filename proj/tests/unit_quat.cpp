#include "doctest.h"

#include <set>

#include "gi/orders.hpp"

using namespace gi;

static quat_alg alg_disc11_K3()
{
    imag_quad_field K(ZZ(3));
    return choose_beta(K, ZZ(11), {ZZ(7)}); // p = 7 split
}

TEST_CASE("field data")
{
    imag_quad_field K(ZZ(3));
    CHECK(K.Dp == 3);
    CHECK(K.tr_th == 3);
    CHECK(K.nm_th == 3);
    CHECK(K.class_number() == 1);
    imag_quad_field K20(ZZ(20));
    CHECK(K20.Dp == 10);
    CHECK(K20.nm_th == 30);
    CHECK(K20.class_number() == 2);
    imag_quad_field K7(ZZ(7));
    CHECK(K7.class_number() == 1);
    CHECK(imag_quad_field(ZZ(23)).class_number() == 3);
    CHECK_THROWS(imag_quad_field(ZZ(12)));
}

TEST_CASE("beta search certifies ramification")
{
    quat_alg B = alg_disc11_K3();
    CHECK(B.beta < 0);
    CHECK(ramified_primes(B.K, B.beta) == std::vector<ZZ>{ZZ(11)});
    // the three bullets
    CHECK(kronecker(B.beta, ZZ(7)) == 1);
    CHECK(mod_pos(B.beta, ZZ(3)) != 0);
    // reciprocity: product over all places = +1 including infinity
    int prod = hilbert_symbol(QQ(-B.K.DK), QQ(B.beta), ZZ(0));
    std::set<ZZ> places{ZZ(2)};
    for (auto& [q, e] : factor(B.K.DK))
        places.insert(q);
    for (auto& [q, e] : factor(B.beta))
        places.insert(q);
    for (auto& q : places)
        prod *= hilbert_symbol(QQ(-B.K.DK), QQ(B.beta), q);
    CHECK(prod == 1);
}

TEST_CASE("norm is multiplicative and positive definite")
{
    quat_alg B = alg_disc11_K3();
    splitmix64 rng(2024);
    for (int t = 0; t < 200; ++t) {
        quat_elt x(QQ(rng.below(19) - 9), QQ(rng.below(19) - 9), QQ(rng.below(19) - 9),
                   QQ(rng.below(19) - 9));
        quat_elt y(QQ(rng.below(19) - 9), QQ(rng.below(19) - 9), QQ(rng.below(19) - 9),
                   QQ(rng.below(19) - 9));
        CHECK(q_nrd(B, q_mul(B, x, y)) == q_nrd(B, x) * q_nrd(B, y));
        if (!(x == quat_elt()))
            CHECK(q_nrd(B, x) > 0);
        // conjugation is an anti-automorphism and x conj(x) = nrd(x)
        quat_elt n = q_mul(B, x, q_conj(B, x));
        CHECK(n.v[0] == q_nrd(B, x));
        CHECK(n.v[1] == 0);
        CHECK(n.v[2] == 0);
        CHECK(n.v[3] == 0);
        CHECK(q_conj(B, q_mul(B, x, y)) == q_mul(B, q_conj(B, y), q_conj(B, x)));
    }
}

TEST_CASE("j t = conj(t) j holds structurally")
{
    quat_alg B = alg_disc11_K3();
    quat_elt j(0, 0, 1, 0), th(0, 1, 0, 0);
    quat_elt lhs = q_mul(B, j, th);
    quat_elt rhs = q_mul(B, q_conj(B, th), j);
    CHECK(lhs == rhs);
    quat_elt jj = q_mul(B, j, j);
    CHECK(jj.v[0] == QQ(B.beta));
}

TEST_CASE("maximal orders have the right discriminant")
{
    for (long nm : {2L, 3L, 11L}) {
        // pick K and p making all conditions hold
        ZZ DK;
        std::vector<ZZ> split;
        if (nm == 2) {
            DK = 11;
            split = {ZZ(5)};
        } else if (nm == 3) {
            DK = 7;
            split = {ZZ(11)};
        } else {
            DK = 3;
            split = {ZZ(7)};
        }
        imag_quad_field K(DK);
        quat_alg B = choose_beta(K, ZZ(nm), split);
        qlat O = maximal_order(B);
        CHECK(is_order(B, O));
        CHECK(order_reduced_discriminant(B, O) == nm);
        CHECK(lat_contains(O, quat_elt::one()));
        // norm form positive definite with integer Gram on orders
        qmat G = lat_gram(B, O);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(G[i][j].get_den() == 1);
    }
}

TEST_CASE("eichler orders: discriminant and nesting")
{
    // N- = 11, N+ = 2, p = 5, r = 1 -> reduced discriminant 110 at r=0 ... 550 at r=1
    imag_quad_field K(ZZ(15)); // 11 inert, 2 split, 5 ... check 5: kron(-15,5)=0 -> 5 | DK bad
    // use K = Q(sqrt(-15)): D = 15, 5 divides 15, so pick p = 17 (split)
    quat_alg B = choose_beta(K, ZZ(11), {ZZ(2), ZZ(17)});
    qlat O = maximal_order(B);
    auto sp2 = make_splitting(B, ZZ(2), 8);
    auto sp17 = make_splitting(B, ZZ(17), 6);
    qlat R0 = eichler_order(B, O, {{sp2, 1}});
    CHECK(is_order(B, R0));
    CHECK(order_reduced_discriminant(B, R0) == 22);
    qlat R1 = eichler_order(B, O, {{sp2, 1}, {sp17, 1}});
    CHECK(is_order(B, R1));
    CHECK(order_reduced_discriminant(B, R1) == 22 * 17);
    qlat R2 = eichler_order(B, O, {{sp2, 1}, {sp17, 2}});
    CHECK(order_reduced_discriminant(B, R2) == ZZ(22 * 17) * 17);
    // nesting with index p
    CHECK(lat_subset(R2, R1));
    CHECK(lat_index(R2, R1) == 17);
    // r=0, N+=1 keeps the maximal order
    qlat R = eichler_order(B, O, {});
    CHECK(R == O);
}

TEST_CASE("local splitting is a ring homomorphism to stated precision")
{
    quat_alg B = alg_disc11_K3();
    qlat O = maximal_order(B);
    auto sp = make_splitting(B, ZZ(7), 6);
    auto b = lat_basis(O);
    splitmix64 rng(31);
    auto mat_mul = [&](const std::array<ZZ, 4>& x, const std::array<ZZ, 4>& y) {
        std::array<ZZ, 4> r;
        r[0] = mod_pos(x[0] * y[0] + x[1] * y[2], sp.mod);
        r[1] = mod_pos(x[0] * y[1] + x[1] * y[3], sp.mod);
        r[2] = mod_pos(x[2] * y[0] + x[3] * y[2], sp.mod);
        r[3] = mod_pos(x[2] * y[1] + x[3] * y[3], sp.mod);
        return r;
    };
    for (int t = 0; t < 50; ++t) {
        quat_elt x, y;
        for (int i = 0; i < 4; ++i) {
            x = q_add(x, q_scal(QQ(rng.below(9) - 4), b[i]));
            y = q_add(y, q_scal(QQ(rng.below(9) - 4), b[i]));
        }
        auto ix = sp.image(B, x), iy = sp.image(B, y);
        auto prod = sp.image(B, q_mul(B, x, y));
        CHECK(mat_mul(ix, iy) == prod);
        // trace and determinant match trd/nrd
        CHECK(mod_pos(ix[0] + ix[3] - ZZ(q_trd(B, x).get_num()), sp.mod) == 0);
        CHECK(mod_pos(ix[0] * ix[3] - ix[1] * ix[2] - ZZ(q_nrd(B, x).get_num()), sp.mod) == 0);
    }
    // i_q(theta) is the companion matrix of the paper's display
    auto ith = sp.image(B, quat_elt(0, 1, 0, 0));
    CHECK(ith[0] == mod_pos(B.K.tr_th, sp.mod));
    CHECK(ith[1] == mod_pos(-B.K.nm_th, sp.mod));
    CHECK(ith[2] == 1);
    CHECK(ith[3] == 0);
}

TEST_CASE("unit groups are finite with classical orders")
{
    for (long nm : {2L, 3L, 11L}) {
        ZZ DK = nm == 2 ? 11 : (nm == 3 ? 7 : 3);
        std::vector<ZZ> split = {nm == 2 ? ZZ(5) : (nm == 3 ? ZZ(11) : ZZ(7))};
        quat_alg B = choose_beta(imag_quad_field(DK), ZZ(nm), split);
        qlat O = maximal_order(B);
        long u = unit_count(B, O);
        long half = u / 2;
        CHECK(u % 2 == 0);
        bool classical = half == 1 || half == 2 || half == 3 || half == 4 || half == 6 || half == 12;
        CHECK(classical);
    }
}
