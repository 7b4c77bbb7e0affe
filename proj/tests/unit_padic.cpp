#include "doctest.h"

#include "gi/padic.hpp"

using namespace gi;

TEST_CASE("valuation examples")
{
    padic_ctx cx(5, 6);
    CHECK(cx.valuation(50) == 2);
    CHECK(cx.valuation(1) == 0);
    CHECK(cx.valuation(0) == 6); // capped at precision
    CHECK(cx.capped(0));
    CHECK(!cx.capped(50));
}

TEST_CASE("group ring involution")
{
    padic_ctx cx(3, 6);
    group_ring_elt e(cx, 1);
    e.c[1] = 1; // [g]
    group_ring_elt i = involution(e);
    CHECK(i.c[2] == 1); // [g^{-1}] = [g^2] at level 1
    // 1 + [g] -> 1 + [g^{-1}]
    group_ring_elt f = gr_add(group_ring_elt::one(cx, 1), e);
    group_ring_elt fi = involution(f);
    CHECK(fi.c[0] == 1);
    CHECK(fi.c[2] == 1);
    // involutivity on random elements
    splitmix64 rng(7);
    for (int t = 0; t < 20; ++t) {
        group_ring_elt r(cx, 2);
        for (auto& x : r.c)
            x = rng.below(cx.pM);
        CHECK(gr_equal(involution(involution(r)), r));
    }
}

TEST_CASE("ring laws (randomized)")
{
    padic_ctx cx(3, 5);
    splitmix64 rng(99);
    auto rnd = [&]() {
        group_ring_elt r(cx, 2);
        for (auto& x : r.c)
            x = rng.below(cx.pM);
        return r;
    };
    for (int t = 0; t < 15; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(gr_equal(gr_mul(gr_mul(a, b), c), gr_mul(a, gr_mul(b, c))));
        CHECK(gr_equal(gr_mul(a, gr_add(b, c)), gr_add(gr_mul(a, b), gr_mul(a, c))));
        CHECK(gr_equal(gr_mul(a, b), gr_mul(b, a)));
    }
}

TEST_CASE("T-basis conversion round trip and projection")
{
    padic_ctx cx(5, 6);
    splitmix64 rng(1234);
    for (int t = 0; t < 10; ++t) {
        group_ring_elt a(cx, 2);
        for (auto& x : a.c)
            x = rng.below(cx.pM);
        lambda_series f = to_T_basis(a);
        CHECK(gr_equal(from_T_basis(f), a));
    }
    // projection sums over cosets
    group_ring_elt a(cx, 1);
    for (size_t i = 0; i < a.c.size(); ++i)
        a.c[i] = i64(i) + 1;
    group_ring_elt b = project_level(a);
    CHECK(b.n == 0);
    CHECK(b.c[0] == 1 + 2 + 3 + 4 + 5);
}

TEST_CASE("content and mu/lambda")
{
    padic_ctx cx(5, 6);
    lambda_series f;
    f.ctx = cx;
    f.mod_cyclotomic = false;
    f.c = {5, 25}; // 5 + 25 T
    CHECK(content(f) == 1);
    f.c = {1, 5};
    CHECK(content(f) == 0);

    // p + T: mu 0, lambda 1
    f.c = {5, 1};
    auto r = mu_lambda(f);
    CHECK(r.mu == 0);
    CHECK(r.lambda == 1);

    // p(1 + T + T^2): mu 1, lambda 0
    f.c = {5, 5, 5};
    r = mu_lambda(f);
    CHECK(r.mu == 1);
    CHECK(r.lambda == 0);

    // (T - p)(T^2 - p) = T^3 - pT^2 - pT + p^2: mu 0, lambda 3
    f.c = {25, cx.reduce(-5), cx.reduce(-5), 1};
    r = mu_lambda(f);
    CHECK(r.mu == 0);
    CHECK(r.lambda == 3);

    f.c = {0, 0};
    CHECK_THROWS_AS(content(f), all_capped_error);
}

TEST_CASE("tower stability and the level horizon")
{
    padic_ctx cx(3, 6);
    auto series = [&](std::vector<i64> c) {
        lambda_series f;
        f.ctx = cx;
        f.mod_cyclotomic = false;
        f.c = std::move(c);
        return f;
    };
    // lambda = 1 < 3^1 - 3^0 = 2: stable at levels {1,2}
    auto rep = mu_lambda_tower({series({3, 1}), series({3, 1})}, {1, 2});
    CHECK(rep.stable);
    CHECK(rep.mu == 0);
    CHECK(rep.lambda == 1);
    // lambda = 2 at n_min = 1 hits the horizon
    auto rep2 = mu_lambda_tower({series({3, 3, 1}), series({3, 3, 1})}, {1, 2});
    CHECK(!rep2.stable);
    // disagreement across levels
    auto rep3 = mu_lambda_tower({series({3, 1}), series({1, 1})}, {1, 2});
    CHECK(!rep3.stable);
}

TEST_CASE("involution preserves content; JSON round trip")
{
    padic_ctx cx(5, 6);
    splitmix64 rng(5);
    for (int t = 0; t < 10; ++t) {
        group_ring_elt a(cx, 2);
        for (auto& x : a.c)
            x = rng.below(cx.pM);
        if (gr_is_zero(a))
            continue;
        CHECK(content(to_T_basis(a)) == content(to_T_basis(involution(a))));
        group_ring_elt b = gr_from_json(gr_to_json(a));
        CHECK(gr_equal(a, b));
    }
}
