#ifndef GI_ORDERS_HPP
#define GI_ORDERS_HPP

#include "gi/lattice.hpp"

namespace gi {

/*
 * Splitting data i_q: B otimes Q_q = M_2(Q_q) at working precision q^prec,
 * stored through the images of theta and j:
 *   i_q(theta) = [[Tr th, -Nm th], [1, 0]],  i_q(j) = sqrt(beta)[[-1, Tr th], [0, 1]]
 * (valid whenever beta is a square unit at q).  theta_root is the q-adic root
 * of x^2 - Tr x + Nm picked for the ideal factor of q fixed by the
 * configuration; it orients split primes.
 */
struct local_splitting {
    ZZ q;
    unsigned prec = 0;
    ZZ mod;           // q^prec
    ZZ sqrt_beta;     // mod q^prec
    ZZ theta_root;    // mod q^prec, for q split in K (0 when unused)

    /* 2x2 image of an element, entries mod q^prec (den must be a q-unit) */
    std::array<ZZ, 4> image(const quat_alg& B, const quat_elt& x) const;
};

local_splitting make_splitting(const quat_alg& B, const ZZ& q, unsigned prec);

struct order_error : arith_error {
    explicit order_error(const std::string& w) : arith_error(w) {}
};

/* Z<1, theta, j, theta j> saturated at 2 if needed; contains 1, rank 4. */
qlat initial_order(const quat_alg& B);

/* Maximal order by the radical-idealizer chain; reduced discriminant Nminus. */
qlat maximal_order(const quat_alg& B);

/*
 * Eichler order of level prod q^{v_q}: intersection of O_max with the
 * i_q-preimages of upper-triangular-mod-q^{v_q} matrices.
 */
qlat eichler_order(const quat_alg& B, const qlat& Omax,
                   const std::vector<std::pair<local_splitting, unsigned>>& levels);

/* left / right orders of a full lattice */
qlat left_order(const quat_alg& B, const qlat& I);
qlat right_order(const quat_alg& B, const qlat& I);

bool is_order(const quat_alg& B, const qlat& O);

/* number of units (elements of reduced norm 1, counting -1) */
long unit_count(const quat_alg& B, const qlat& O);

/*
 * Sublattice of L cut out by i_q-conditions: rows of A act on L-coordinates;
 * kept for reuse by ideal constructions.  cond maps the 2x2 image (as 4
 * entries a,b,c,d mod q^prec) of each L-basis vector into k linear forms; the
 * result is the sublattice where all forms vanish mod q^m.
 */
qlat sublattice_by_conditions(const qlat& L, const zmat& forms_on_basis, const ZZ& qm);

} // namespace gi

#endif
