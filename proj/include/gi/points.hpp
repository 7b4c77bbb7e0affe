#ifndef GI_POINTS_HPP
#define GI_POINTS_HPP

#include "gi/bqf.hpp"
#include "gi/hecke.hpp"

namespace gi {

/*
 * A Gross point of conductor c = p^s on the level-(N+, r) set: a right
 * R-ideal I together with the embedding K -> B conjugated so that omega
 * generates Psi(O_c) inside the left order of I.  The p-level orientation is
 * carried by the ideal itself (it was cut from varsigma-data).
 */
struct gross_point {
    qlat I;
    quat_elt omega; // image of c*theta
    ZZ conductor;
    int r = 0;
};

struct embedding_error : arith_error {
    explicit embedding_error(const std::string& w) : arith_error(w) {}
};

/*
 * Context for one (K, B, N+, p) configuration: the Shimura sets for
 * r = 1..r_max, the splitting/orientation data, and the ring class tower.
 */
struct heegner_context {
    quat_alg B;
    qlat Omax;
    ZZ Nplus;
    i64 p = 0;
    int n_max = 0, r_max = 0;
    std::vector<shimura_set> sets;            // index r-1: level (N+, r)
    std::vector<local_splitting> nplus_splits; // one per prime q | N+
    local_splitting p_split;                   // high-precision splitting at p
    bool p_splits_in_K = true;
    std::map<ZZ, ring_class_group> pic;        // conductor p^s -> Pic(O_{p^s})
    std::vector<anticyclotomic_quotient> quots; // index n: level-n quotient

    const shimura_set& at_r(int r) const { return sets.at(size_t(r) - 1); }
    const ring_class_group& pic_at(unsigned s) const;
    /* image of a Pic(O_{p^s})-class in Gamma/Gamma_n via conductor lowering */
    long gamma_of(unsigned s, long cls, int n) const;
    /* kernel classes of Pic(O_{p^s}) -> Pic(O_{p^{s-1}}) */
    std::vector<long> lowering_kernel(unsigned s) const;
};

heegner_context make_heegner_context(const quat_alg& B, const qlat& Omax, const ZZ& Nplus,
                                     i64 p, int n_max, int r_max);

/* the base Heegner point P~_{p^n, r} of conductor p^{n+r} */
gross_point base_point(const heegner_context& H, int n, int r);

/* conductor optimality: K cap O_l(I) = Z + Z omega */
bool optimality_check(const heegner_context& H, const gross_point& P);

/* Galois action by the class of a form of discriminant -(p^s)^2 DK */
gross_point galois_act(const heegner_context& H, const bqf& cls, const gross_point& P);

/* class index of the point's ideal */
long point_class(const heegner_context& H, const gross_point& P);

/* equality of points up to conjugation by units of the left order */
bool points_equal(const heegner_context& H, const gross_point& P, const gross_point& Q);

/*
 * Divisor table of the corestriction Q_{n,r}: entry sigma in [0, p^n) is the
 * sum over Galois translates mapping to sigma of the class divisor of
 * P~_{p^{n+1}, r}; raw integer vectors, before e_ord.
 */
std::vector<std::vector<ZZ>> corestriction_table(const heegner_context& H, int n, int r);

struct compat_report {
    struct line {
        int n, r;
        std::string kind; // "vertical" | "horizontal"
        bool pass;
    };
    std::vector<line> lines;
    bool all_pass() const
    {
        for (const auto& l : lines)
            if (!l.pass)
                return false;
        return true;
    }
};

/* exact divisor identities: vertical (n > 0) and horizontal (r > 1) */
compat_report verify_compatibilities(const heegner_context& H,
                                     const std::map<int, zzmat>& up_by_r,
                                     const std::map<int, zzmat>& lower_by_r, int nr_bound);

/* Galois orbit of the base point as class indices, indexed by Pic-class */
std::vector<long> orbit_classes(const heegner_context& H, int n, int r);

} // namespace gi

#endif
