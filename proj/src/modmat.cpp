#include "gi/modmat.hpp"

namespace gi {

modmat modmat::identity(const padic_ctx& cx, size_t n)
{
    modmat I(cx, n, n);
    for (size_t i = 0; i < n; ++i)
        I.at(i, i) = 1;
    return I;
}

modmat mm_mul(const modmat& A, const modmat& B)
{
    if (A.cols != B.rows)
        throw arith_error("modmat dimension mismatch");
    modmat C(A.ctx, A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            i64 v = A.at(i, k);
            if (!v)
                continue;
            const i64* brow = &B.a[k * B.cols];
            i64* crow = &C.a[i * C.cols];
            for (size_t j = 0; j < B.cols; ++j)
                if (brow[j])
                    crow[j] = A.ctx.add(crow[j], A.ctx.mul(v, brow[j]));
        }
    return C;
}

modmat mm_add(const modmat& A, const modmat& B)
{
    modmat C = A;
    for (size_t i = 0; i < C.a.size(); ++i)
        C.a[i] = A.ctx.add(C.a[i], B.a[i]);
    return C;
}

modmat mm_sub(const modmat& A, const modmat& B)
{
    modmat C = A;
    for (size_t i = 0; i < C.a.size(); ++i)
        C.a[i] = A.ctx.sub(C.a[i], B.a[i]);
    return C;
}

modmat mm_scal(const modmat& A, i64 s)
{
    modmat C = A;
    for (auto& x : C.a)
        x = A.ctx.mul(x, s);
    return C;
}

modmat mm_pow(modmat A, ZZ e)
{
    modmat R = modmat::identity(A.ctx, A.rows);
    while (e > 0) {
        if (mod_pos(e, ZZ(2)) == 1)
            R = mm_mul(R, A);
        e >>= 1;
        if (e > 0)
            A = mm_mul(A, A);
    }
    return R;
}

modmat mm_transpose(const modmat& A)
{
    modmat T(A.ctx, A.cols, A.rows);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            T.at(j, i) = A.at(i, j);
    return T;
}

bool mm_is_zero(const modmat& A)
{
    for (i64 x : A.a)
        if (x)
            return false;
    return true;
}

modmat mm_inv(const modmat& A)
{
    if (A.rows != A.cols)
        throw arith_error("inverse of non-square matrix");
    size_t n = A.rows;
    modmat M = A, I = modmat::identity(A.ctx, n);
    const padic_ctx& cx = A.ctx;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t i = c; i < n; ++i)
            if (cx.is_unit(M.at(i, c))) {
                piv = i;
                break;
            }
        if (piv == n)
            throw arith_error("matrix not invertible mod p^M");
        for (size_t j = 0; j < n; ++j) {
            std::swap(M.a[piv * n + j], M.a[c * n + j]);
            std::swap(I.a[piv * n + j], I.a[c * n + j]);
        }
        i64 d = cx.inv(M.at(c, c));
        for (size_t j = 0; j < n; ++j) {
            M.at(c, j) = cx.mul(M.at(c, j), d);
            I.at(c, j) = cx.mul(I.at(c, j), d);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c)
                continue;
            i64 f = M.at(i, c);
            if (!f)
                continue;
            for (size_t j = 0; j < n; ++j) {
                M.at(i, j) = cx.sub(M.at(i, j), cx.mul(f, M.at(c, j)));
                I.at(i, j) = cx.sub(I.at(i, j), cx.mul(f, I.at(c, j)));
            }
        }
    }
    return I;
}

/*
 * Howell form over Z/p^M.  Rows are reduced so that every row of the row
 * space is a Z/p^M-combination of the output rows; pivots are p-powers times
 * units, normalized to plain p-powers, with entries above a pivot reduced
 * modulo it.
 */
modmat howell_form(const modmat& A)
{
    const padic_ctx& cx = A.ctx;
    std::vector<std::vector<i64>> rows;
    for (size_t i = 0; i < A.rows; ++i)
        rows.emplace_back(A.a.begin() + i * A.cols, A.a.begin() + (i + 1) * A.cols);
    std::vector<std::vector<i64>> out;
    size_t n = A.cols;

    std::function<void(std::vector<i64>)> insert = [&](std::vector<i64> r) {
        for (size_t pos = 0;; ++pos) {
            size_t c = 0;
            while (c < n && r[c] == 0)
                ++c;
            if (c == n)
                return;
            // find existing row with pivot at column c
            size_t hit = out.size();
            for (size_t k = 0; k < out.size(); ++k) {
                size_t kc = 0;
                while (kc < n && out[k][kc] == 0)
                    ++kc;
                if (kc == c) {
                    hit = k;
                    break;
                }
            }
            if (hit == out.size()) {
                // normalize pivot to a power of p
                int v = cx.valuation(r[c]);
                i64 u = cx.inv(cx.reduce(r[c]) / i64_pow(cx.p, unsigned(v)));
                for (auto& x : r)
                    x = cx.mul(x, u);
                out.push_back(r);
                // Howell closure: p^{M-v} * row has pivot further right
                if (v > 0) {
                    std::vector<i64> extra = r;
                    i64 s = i64_pow(cx.p, unsigned(cx.M - v));
                    for (auto& x : extra)
                        x = cx.mul(x, s);
                    insert(extra);
                }
                return;
            }
            // reduce r against out[hit]
            int vp = cx.valuation(out[hit][c]);
            int vr = cx.valuation(r[c]);
            if (vr < vp) {
                std::swap(out[hit], r);
                std::swap(vr, vp);
                // renormalize the new pivot row
                i64 u = cx.inv(cx.reduce(out[hit][c]) / i64_pow(cx.p, unsigned(vp)));
                for (auto& x : out[hit])
                    x = cx.mul(x, u);
                if (vp > 0) {
                    std::vector<i64> extra = out[hit];
                    i64 s = i64_pow(cx.p, unsigned(cx.M - vp));
                    for (auto& x : extra)
                        x = cx.mul(x, s);
                    insert(extra);
                }
            }
            // now v(r[c]) >= v(out[hit][c]), pivot of hit is p^vp
            i64 f = cx.reduce(r[c]) / i64_pow(cx.p, unsigned(vp));
            for (size_t j = 0; j < n; ++j)
                r[j] = cx.sub(r[j], cx.mul(f, out[hit][j]));
            if (pos > 4 * size_t(cx.M) * n)
                throw arith_error("howell form did not converge");
        }
    };

    for (auto& r : rows)
        insert(r);

    // sort rows by pivot column, reduce upwards
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        size_t cx1 = 0, cy = 0;
        while (cx1 < n && x[cx1] == 0)
            ++cx1;
        while (cy < n && y[cy] == 0)
            ++cy;
        return cx1 < cy;
    });
    for (size_t k = out.size(); k-- > 0;) {
        size_t c = 0;
        while (c < n && out[k][c] == 0)
            ++c;
        if (c == n)
            continue;
        i64 piv = out[k][c];
        for (size_t i = 0; i < k; ++i) {
            i64 q = cx.reduce(out[i][c]) / piv;
            if (!q)
                continue;
            for (size_t j = 0; j < n; ++j)
                out[i][j] = cx.sub(out[i][j], cx.mul(q, out[k][j]));
        }
    }

    modmat H(cx, out.size(), n);
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < n; ++j)
            H.at(i, j) = out[i][j];
    return H;
}

modmat left_kernel_mod(const modmat& A)
{
    const padic_ctx& cx = A.ctx;
    // kernel via Howell form of [A^T | I]^T trick: operate on rows of the
    // augmented matrix [A | I] and collect rows whose A-part vanished.
    size_t m = A.rows, n = A.cols;
    modmat aug(cx, m, n + m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j)
            aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = 1;
    }
    modmat H = howell_form(aug);
    std::vector<std::vector<i64>> ker;
    for (size_t i = 0; i < H.rows; ++i) {
        bool zero = true;
        for (size_t j = 0; j < n; ++j)
            if (H.at(i, j)) {
                zero = false;
                break;
            }
        if (zero) {
            std::vector<i64> r(m);
            for (size_t j = 0; j < m; ++j)
                r[j] = H.at(i, n + j);
            ker.push_back(std::move(r));
        }
    }
    modmat K(cx, ker.size(), m);
    for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = 0; j < m; ++j)
            K.at(i, j) = ker[i][j];
    return K;
}

size_t unit_rank(const modmat& A)
{
    modmat H = howell_form(A);
    size_t r = 0;
    for (size_t i = 0; i < H.rows; ++i) {
        size_t c = 0;
        while (c < H.cols && H.at(i, c) == 0)
            ++c;
        if (c < H.cols && A.ctx.is_unit(H.at(i, c)))
            ++r;
    }
    return r;
}

idem_basis split_idempotent(const modmat& e)
{
    const padic_ctx& cx = e.ctx;
    size_t n = e.rows;
    // pivot columns of e with unit pivots give a basis of the image
    modmat H = howell_form(e);
    std::vector<size_t> pivots;
    for (size_t i = 0; i < H.rows; ++i) {
        size_t c = 0;
        while (c < H.cols && H.at(i, c) == 0)
            ++c;
        if (c == H.cols)
            continue;
        if (!cx.is_unit(H.at(i, c)))
            throw arith_error("idempotent image is not a free summand");
        pivots.push_back(c);
    }
    size_t k = pivots.size();
    // P: columns e * std_basis(pivot)
    modmat P(cx, n, k), S(cx, k, n);
    for (size_t t = 0; t < k; ++t)
        for (size_t i = 0; i < n; ++i)
            P.at(i, t) = e.at(i, pivots[t]);
    // S solves S P = I: use rows of H (the reduced images) as coordinates:
    // row t of H equals the coordinate functional, because H = R * e for some R
    // and H restricted to pivot columns is the identity.
    // Recover R: H rows are combinations of rows of e; solve R e = H by
    // Gaussian elimination on the pivot columns.
    // Since H(:, pivots) = I_k, take S = H-row-to-functional: S P = H(:,pivots) of e-products.
    for (size_t t = 0; t < k; ++t)
        for (size_t j = 0; j < n; ++j)
            S.at(t, j) = H.at(t, j);
    // verify S P = I_k
    modmat SP = mm_mul(S, P);
    if (!(SP == modmat::identity(cx, k)))
        throw arith_error("idempotent split failed");
    return {P, S};
}

modmat ordinary_projector_matrix(const modmat& U)
{
    const padic_ctx& cx = U.ctx;
    modmat e = mm_pow(U, ZZ(cx.p - 1));
    for (int i = 0; i < cx.M + 2; ++i)
        e = mm_pow(e, ZZ(cx.p));
    // stabilize: square until idempotent
    for (int guard = 0; guard < 64; ++guard) {
        modmat e2 = mm_mul(e, e);
        if (e2 == e)
            return e;
        e = e2;
    }
    throw arith_error("ordinary projector did not stabilize");
}

} // namespace gi
