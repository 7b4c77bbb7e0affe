#ifndef GI_QUAT_HPP
#define GI_QUAT_HPP

#include <array>
#include <iosfwd>

#include "gi/basic.hpp"

namespace gi {

/*
 * K = Q(sqrt(-D_K)) with theta = (D' + sqrt(-D_K))/2, D' = D_K or D_K/2 by
 * parity, so O_K = Z[theta], Tr(theta) = D', Nm(theta) = (D'^2 + D_K)/4.
 */
struct imag_quad_field {
    ZZ DK;     // positive fundamental |discriminant|
    ZZ Dp;     // D'
    ZZ tr_th;  // Tr(theta) = D'
    ZZ nm_th;  // Nm(theta)

    imag_quad_field() = default;
    explicit imag_quad_field(const ZZ& DK_);

    /* class number by direct reduced-form enumeration of disc -DK */
    long class_number() const;
};

bool is_fundamental_discriminant_neg(const ZZ& DK);

/*
 * B = K + K*j with j^2 = beta < 0 and j*t = conj(t)*j.  Elements are stored
 * in coordinates over the Q-basis (1, theta, j, theta*j).
 */
struct quat_alg {
    imag_quad_field K;
    ZZ beta;    // negative integer
    ZZ Nminus;  // certified discriminant of B
};

struct quat_elt {
    std::array<QQ, 4> v{}; // (a, b, c, d) = a + b*theta + (c + d*theta) j

    quat_elt() = default;
    quat_elt(QQ a, QQ b, QQ c, QQ d) : v{a, b, c, d} {}
    static quat_elt one() { return quat_elt(1, 0, 0, 0); }
    bool operator==(const quat_elt&) const = default;
};

quat_elt q_add(const quat_elt& x, const quat_elt& y);
quat_elt q_sub(const quat_elt& x, const quat_elt& y);
quat_elt q_mul(const quat_alg& B, const quat_elt& x, const quat_elt& y);
quat_elt q_scal(const QQ& s, const quat_elt& x);
quat_elt q_conj(const quat_alg& B, const quat_elt& x);
QQ q_nrd(const quat_alg& B, const quat_elt& x);
QQ q_trd(const quat_alg& B, const quat_elt& x);
quat_elt q_inv(const quat_alg& B, const quat_elt& x);

std::ostream& operator<<(std::ostream& o, const quat_elt& x);

/*
 * Search for the smallest |beta| meeting the three congruence bullets,
 * certified by Hilbert symbols to ramify B exactly at {q | Nminus} and
 * infinity.  split_primes = all q | p N^+ (beta must be a unit square there),
 * DK-primes need beta to be a unit.
 */
struct beta_search_error : arith_error {
    explicit beta_search_error(const std::string& w) : arith_error(w) {}
};

quat_alg choose_beta(const imag_quad_field& K, const ZZ& Nminus,
                     const std::vector<ZZ>& split_primes, long bound = 1000000);

/* ramification set of (K, beta) as a sorted list of finite primes */
std::vector<ZZ> ramified_primes(const imag_quad_field& K, const ZZ& beta);

} // namespace gi

#endif
