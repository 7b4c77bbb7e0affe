#ifndef GI_LATTICE_HPP
#define GI_LATTICE_HPP

#include <functional>
#include <map>
#include <optional>

#include "gi/quat.hpp"

namespace gi {

using zrow = std::vector<ZZ>;
using zmat = std::vector<zrow>;
using qrow = std::vector<QQ>;
using qmat = std::vector<qrow>;

/* Row-style Hermite normal form: echelon, positive pivots, entries above each
 * pivot reduced into [0, pivot).  Zero rows are dropped. */
zmat hnf_rows(zmat rows);

/* Left kernel {v : v M = 0} of an integer matrix, as HNF rows. */
zmat left_kernel(const zmat& M);

/* {y in Z^n : A y = 0 mod m} for A a k x n integer matrix, as HNF rows. */
zmat congruence_lattice(const zmat& A, const ZZ& m, size_t n);

qmat qq_mat_inv(const qmat& A);
qmat qq_mat_mul(const qmat& A, const qmat& B);

/*
 * Full-rank rank-4 lattice in B, rows of H/den are the basis in
 * (1, theta, j, theta j) coordinates.  Canonical: H in HNF, gcd(den,
 * content(H)) = 1, den > 0.
 */
struct qlat {
    ZZ den = 1;
    zmat H; // 4x4

    bool operator==(const qlat&) const = default;
};

qlat lat_from_rows(const std::vector<quat_elt>& gens);
qlat lat_from_zrows(zmat rows, const ZZ& den);

quat_elt lat_basis_elt(const qlat& L, int i);
std::vector<quat_elt> lat_basis(const qlat& L);

bool lat_contains(const qlat& L, const quat_elt& x);
bool lat_subset(const qlat& A, const qlat& B); // A subset of B
QQ lat_det(const qlat& L);                     // absolute value of basis determinant
QQ lat_index(const qlat& sub, const qlat& sup); // [sup : sub], exact
qlat lat_sum(const qlat& A, const qlat& B);
qlat lat_intersect(const qlat& A, const qlat& B);
qlat lat_dual(const qlat& L); // coordinate dual
qlat lat_scale(const qlat& L, const QQ& s);
qlat lat_product(const quat_alg& Bq, const qlat& A, const qlat& B);
qlat lat_mul_right(const quat_alg& Bq, const qlat& L, const quat_elt& y);
qlat lat_mul_left(const quat_alg& Bq, const quat_elt& y, const qlat& L);
qlat lat_conj(const quat_alg& Bq, const qlat& L);

/* Gram matrix of the trace pairing (x, y) -> trd(x conj(y)); equals 2*nrd on
 * the diagonal. */
qmat lat_gram(const quat_alg& Bq, const qlat& L);

/* sqrt(det Gram)/4-free reduced discriminant of an order lattice. */
ZZ order_reduced_discriminant(const quat_alg& Bq, const qlat& O);

/* nrd of a lattice relative to a reference order with nrd 1. */
QQ lat_nrd(const qlat& L, const qlat& reference_order);

/*
 * Exact Schnorr-Euchner enumeration: visit every nonzero v (up to sign; only
 * one of +-v is reported) with Q(v) <= bound, Q the quadratic form of gram.
 */
void enumerate_gram(const qmat& gram, const QQ& bound,
                    const std::function<void(const std::array<long, 4>&, const QQ&)>& visit);

/* counts of lattice elements x with nrd(x) = value, for nrd values <= bound */
std::map<QQ, long> nrd_counts(const quat_alg& Bq, const qlat& L, const QQ& bound);

/* one element of given reduced norm, if any */
std::optional<quat_elt> find_nrd(const quat_alg& Bq, const qlat& L, const QQ& target);

/* all x in L with nrd(x) = target (up to sign) */
std::vector<quat_elt> all_nrd(const quat_alg& Bq, const qlat& L, const QQ& target);

} // namespace gi

#endif
