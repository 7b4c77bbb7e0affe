#ifndef GI_BQF_HPP
#define GI_BQF_HPP

#include <map>

#include "gi/basic.hpp"

namespace gi {

/* primitive positive-definite binary quadratic form a x^2 + b xy + c y^2 */
struct bqf {
    ZZ a, b, c;
    auto operator<=>(const bqf&) const = default;
};

ZZ bqf_disc(const bqf& f);
bqf bqf_reduce(bqf f);
bqf bqf_compose(const bqf& f, const bqf& g);
bqf bqf_inverse(const bqf& f);
bqf bqf_identity(const ZZ& disc);
bqf bqf_pow(const bqf& f, ZZ e);

/* all reduced primitive forms of the given negative discriminant */
std::vector<bqf> reduced_forms(const ZZ& disc);

/*
 * Pic(O_c) for the order of conductor c in the field of fundamental
 * discriminant -DK, realized as the form class group of discriminant -c^2 DK.
 */
struct ring_class_group {
    ZZ DK;
    ZZ conductor;
    ZZ disc;
    std::vector<bqf> elems; // reduced representatives; elems[0] = identity
    std::map<bqf, long> index;

    long order() const { return long(elems.size()); }
    long idx(const bqf& f) const;
    long compose(long i, long j) const;
    long inverse(long i) const;
    long power(long i, ZZ e) const;
    long element_order(long i) const;
};

ring_class_group make_ring_class_group(const ZZ& DK, const ZZ& conductor);

/*
 * Conductor-lowering Pic(O_c) -> Pic(O_{c'}) for c' | c: on a representative
 * form with leading coefficient coprime to c, divide b by c/c' mod 2a.
 */
long lower_conductor(const ring_class_group& from, const ring_class_group& to, long i);

/* a representative of the class with leading coefficient coprime to m */
bqf coprime_representative(const bqf& f, const ZZ& m);

/*
 * Finite-level model of Gamma/Gamma_n: the p-primary quotient of
 * Pic(O_{p^{n+1}}), certified cyclic of order p^n, with a distinguished
 * generator.  to_gamma maps a class of any Pic(O_{p^s}) with s >= n+1
 * through conductor lowering and the p-primary projection.
 */
struct anticyclotomic_quotient {
    i64 p = 0;
    int n = 0;
    ring_class_group G;       // Pic(O_{p^{n+1}})
    ZZ sylow_exponent;        // power map onto the p-primary part
    long generator = 0;       // index in G of the distinguished generator
    std::map<long, long> dlog; // index of p-primary class -> exponent

    long order() const { return i64_pow(p, unsigned(n)); }
    /* exponent in [0, p^n) of the image of class i of G */
    long to_gamma(long i) const;
};

struct not_cyclic_error : arith_error {
    explicit not_cyclic_error(const std::string& w) : arith_error(w) {}
};

anticyclotomic_quotient make_anticyclotomic_quotient(const ZZ& DK, i64 p, int n);

/*
 * Frobenius data at a split prime ell: the exponents of gamma_l and
 * gamma_lbar in Gamma/Gamma_n.  The label l follows the configured theta
 * root: l = (ell, theta - t).
 */
struct frobenius_pair {
    long t_l;    // exponent of gamma_l
    long t_lbar; // exponent of gamma_lbar
};

frobenius_pair frobenius_in_gamma(const anticyclotomic_quotient& q, const ZZ& DK, long ell,
                                  const ZZ& theta_root_mod_ell, const ZZ& Dprime);

} // namespace gi

#endif
