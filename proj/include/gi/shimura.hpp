#ifndef GI_SHIMURA_HPP
#define GI_SHIMURA_HPP

#include "gi/orders.hpp"

namespace gi {

struct mass_mismatch : arith_error {
    explicit mass_mismatch(const std::string& w) : arith_error(w) {}
};

/* Eichler mass phi(N-) psi(M) / 24 for an Eichler order of level M in the
 * algebra of discriminant N-. */
QQ eichler_mass(const ZZ& Nminus, const ZZ& level);

/*
 * The finite Shimura set at level (N+, r): right ideal classes of the Eichler
 * order R of level N+ p^r, enumerated by neighbor traversal with the mass
 * formula as the certified stopping rule.  ideals[0] = R.
 */
struct shimura_set {
    quat_alg B;
    qlat Omax;
    qlat R;
    ZZ Nplus;
    i64 p = 0;
    int r = 0;
    long ell0 = 0; // auxiliary neighbor prime

    std::vector<qlat> ideals;
    std::vector<qlat> left_orders;
    std::vector<long> units; // |O_l(I_i)^x|
    std::vector<QQ> nrds;    // nrd relative to R

    long h() const { return long(ideals.size()); }
    ZZ level() const;

    /* class index of a right R-ideal J */
    long resolve(const qlat& J) const;
    /* also return x with J = x I_j */
    std::pair<long, quat_elt> resolve_transporter(const qlat& J) const;

    /* theta-prefix signature used to shortlist candidates */
    std::vector<long> signature(const qlat& J) const;

  private:
    friend shimura_set make_shimura_set(const quat_alg&, const qlat&, const ZZ&, i64, int);
    std::vector<std::vector<long>> sigs_;
    std::map<std::vector<long>, std::vector<long>> sig_index_;
};

shimura_set make_shimura_set(const quat_alg& B, const qlat& Omax, const ZZ& Nplus, i64 p, int r);

/* the ell+1 (or fewer, at bad ell) R-stable index-ell^2 sublattices of I
 * containing ell*I, excluding ell*I */
std::vector<qlat> neighbor_sublattices(const quat_alg& B, const qlat& R, const qlat& I, long ell);

/* element of I generating I locally at q: v_q(nrd x0) = v_q(nrd I) */
quat_elt local_generator(const quat_alg& B, const qlat& I, const ZZ& q, const QQ& nrdI);

} // namespace gi

#endif
