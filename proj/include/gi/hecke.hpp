#ifndef GI_HECKE_HPP
#define GI_HECKE_HPP

#include "gi/modmat.hpp"
#include "gi/shimura.hpp"

namespace gi {

/* integer matrix acting on column divisor vectors indexed by classes */
struct zzmat {
    size_t rows = 0, cols = 0;
    std::vector<ZZ> a;
    zzmat() = default;
    zzmat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
    ZZ& at(size_t i, size_t j) { return a[i * cols + j]; }
    const ZZ& at(size_t i, size_t j) const { return a[i * cols + j]; }
    bool operator==(const zzmat&) const = default;
};

zzmat zz_mul(const zzmat& A, const zzmat& B);
std::vector<ZZ> zz_colsums(const zzmat& A);
modmat to_modmat(const zzmat& A, const padic_ctx& cx);

/*
 * Brandt matrix of T_ell (ell coprime to the level) via theta counts:
 * entry (j, i) counts the index-ell^2 sublattices of I_i isomorphic to I_j.
 */
zzmat brandt_matrix(const shimura_set& S, long ell);

/* all Brandt matrices for ell in `ells` sharing one enumeration per pair */
std::map<long, zzmat> brandt_matrices(const shimura_set& S, const std::vector<long>& ells);

/* U_p on the level-p^r set (r >= 1): p neighbor sublattices per class */
zzmat u_p_matrix(const shimura_set& S);

/*
 * Degeneracy pushforward (B_{d,d'})_* from the level-(M ell^i) set to the
 * level-M set (same r), d = ell^i, d' | d: class of B cap g pi_{d'} R_small.
 */
zzmat degeneracy_pushforward(const shimura_set& from, const shimura_set& to, long ell, int i,
                             int dprime_exp);

/* level-lowering map on classes induced by R_r subset R_{r-1} */
zzmat level_lowering(const shimura_set& from, const shimura_set& to);

struct ordinary_space {
    modmat e;      // idempotent
    idem_basis ib; // P (h x k), S (k x h)
    size_t rank = 0;
};

ordinary_space ordinary_projector(const shimura_set& S, const zzmat& Up, const padic_ctx& cx);

struct eigensystem_mod_p {
    i64 p;
    std::map<long, i64> a; // ell -> a_ell mod p (includes U_p eigenvalue at ell = p)
    long multiplicity = 0;
    bool ordinary = false;
    bool eisenstein = false;
    bool distinguished = false;
};

/* simultaneous eigensystems of the given operators on the ordinary part mod p */
std::vector<eigensystem_mod_p> eigensystems_mod_p(const shimura_set& S,
                                                  const std::map<long, zzmat>& ops,
                                                  const zzmat& Up, i64 p);

/*
 * rank-one certificate: the joint eigenspace mod p of the eigensystem inside
 * the ordinary part is one-dimensional.
 */
struct mult_one_certificate {
    bool ok = false;
    long eigenspace_dim = 0;
};
mult_one_certificate multiplicity_one_check(const ordinary_space& osp,
                                            const std::map<long, zzmat>& ops, const zzmat& Up,
                                            const eigensystem_mod_p& m);

/*
 * The Hecke eigenfunctional delta_f mod p^M on the ordinary part: a row
 * vector phi of length h with phi T = a_T phi for every supplied operator,
 * normalized so that its value on the first standard basis divisor with unit
 * pairing is 1.  Eigenvalues are supplied mod p^M (exact integers reduced).
 */
struct eigen_functional {
    std::vector<i64> row;   // length h; apply to e_ord-divisors
    long norm_index = -1;   // designated class index
    int norm_shift = 0;     // valuation shift when no unit pairing exists
    bool rank_one = false;  // joint eigenspace free of rank one mod p^M
};

eigen_functional make_eigen_functional(const ordinary_space& osp,
                                       const std::vector<std::pair<zzmat, i64>>& ops_eigs,
                                       const padic_ctx& cx);

/* apply a functional to a divisor vector mod p^M */
i64 apply_functional(const padic_ctx& cx, const std::vector<i64>& row,
                     const std::vector<i64>& divisor);

} // namespace gi

#endif
