#ifndef GI_MODMAT_HPP
#define GI_MODMAT_HPP

#include "gi/padic.hpp"

namespace gi {

/* dense matrix over Z/p^M */
struct modmat {
    padic_ctx ctx;
    size_t rows = 0, cols = 0;
    std::vector<i64> a;

    modmat() = default;
    modmat(const padic_ctx& cx, size_t r, size_t c) : ctx(cx), rows(r), cols(c), a(r * c, 0) {}
    i64& at(size_t i, size_t j) { return a[i * cols + j]; }
    i64 at(size_t i, size_t j) const { return a[i * cols + j]; }
    static modmat identity(const padic_ctx& cx, size_t n);
    bool operator==(const modmat&) const = default;
};

modmat mm_mul(const modmat& A, const modmat& B);
modmat mm_add(const modmat& A, const modmat& B);
modmat mm_sub(const modmat& A, const modmat& B);
modmat mm_scal(const modmat& A, i64 s);
modmat mm_pow(modmat A, ZZ e);
modmat mm_transpose(const modmat& A);
bool mm_is_zero(const modmat& A);

/* inverse when determinant is a unit; throws otherwise */
modmat mm_inv(const modmat& A);

/*
 * Howell-style row echelon over Z/p^M: returns canonical generators of the
 * row space.  Useful for kernels and rank over the local ring.
 */
modmat howell_form(const modmat& A);

/* {x row vector : x A = 0} as Howell-form rows */
modmat left_kernel_mod(const modmat& A);

/* rank of the free part (number of unit pivots in the Howell form) */
size_t unit_rank(const modmat& A);

/* image basis of an idempotent e: columns P (n x k) and section S (k x n)
 * with S P = I_k and P S = e */
struct idem_basis {
    modmat P, S;
};
idem_basis split_idempotent(const modmat& e);

/* Hida's ordinary projector e = lim U^{n!} realized as a stabilized power */
modmat ordinary_projector_matrix(const modmat& U);

} // namespace gi

#endif
