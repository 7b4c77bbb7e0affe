#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gi/basic.hpp"
#include "gi/lattice.hpp"

using namespace gi;

TEST_CASE("hilbert symbol at 2 matches exhaustive solvability")
{
    // (-1,-1)_2 = -1: x^2 + y^2 + z^2 = 0 has no primitive solution mod 8
    bool solvable = false;
    for (int x = 0; x < 8 && !solvable; ++x)
        for (int y = 0; y < 8 && !solvable; ++y)
            for (int z = 0; z < 8 && !solvable; ++z) {
                if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0)
                    continue;
                if ((x * x + y * y + z * z) % 8 == 0)
                    solvable = true;
            }
    CHECK(!solvable);
    CHECK(hilbert_symbol(QQ(-1), QQ(-1), ZZ(2)) == -1);
}

TEST_CASE("hilbert symbol basics")
{
    CHECK(hilbert_symbol(QQ(-1), QQ(-1), ZZ(0)) == -1); // real place
    for (long q : {2L, 3L, 5L, 7L, 11L})
        CHECK(hilbert_symbol(QQ(1), QQ(q + 3), ZZ(q)) == 1);
    // product formula on random pairs over all relevant places
    splitmix64 rng(42);
    for (int t = 0; t < 50; ++t) {
        long a = long(rng.below(200)) - 100;
        long b = long(rng.below(200)) - 100;
        if (a == 0 || b == 0)
            continue;
        int prod = hilbert_symbol(QQ(a), QQ(b), ZZ(0));
        std::set<ZZ> places{ZZ(2)};
        for (auto& [q, e] : factor(ZZ(a)))
            places.insert(q);
        for (auto& [q, e] : factor(ZZ(b)))
            places.insert(q);
        for (const ZZ& q : places)
            prod *= hilbert_symbol(QQ(a), QQ(b), q);
        CHECK(prod == 1);
    }
}

TEST_CASE("qadic square roots and quadratic Hensel")
{
    ZZ s = sqrt_qadic(ZZ(2), ZZ(7), 8);
    CHECK(mod_pos(s * s - 2, zz_pow(ZZ(7), 8)) == 0);
    ZZ r = quad_root_qadic(ZZ(3), ZZ(3), ZZ(7), 10, ZZ(4)); // x^2-3x+3, root 4 mod 7
    CHECK(mod_pos(r * r - 3 * r + 3, zz_pow(ZZ(7), 10)) == 0);
}

TEST_CASE("HNF, kernels and congruence lattices")
{
    zmat rows = {{ZZ(2), ZZ(4)}, {ZZ(6), ZZ(8)}};
    zmat H = hnf_rows(rows);
    REQUIRE(H.size() == 2);
    CHECK(H[0][0] > 0);
    CHECK(H[1][0] == 0);

    // kernel of a rank-1 matrix
    zmat M = {{ZZ(1), ZZ(2)}, {ZZ(2), ZZ(4)}, {ZZ(3), ZZ(6)}};
    zmat K = left_kernel(M);
    REQUIRE(K.size() == 2);
    for (auto& v : K) {
        CHECK(v[0] * 1 + v[1] * 2 + v[2] * 3 == 0);
    }

    // {y in Z^2 : y0 + y1 = 0 mod 9}
    zmat A = {{ZZ(1), ZZ(1)}};
    zmat L = congruence_lattice(A, ZZ(9), 2);
    REQUIRE(L.size() == 2);
    // index must be 9
    ZZ det = L[0][0] * L[1][1] - L[0][1] * L[1][0];
    CHECK(abs(det) == 9);
}
