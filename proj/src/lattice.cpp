#include "gi/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace gi {

static void row_axpy(zrow& a, const ZZ& q, const zrow& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] -= q * b[i];
}

static zmat hnf_core(zmat rows, zmat* transform)
{
    size_t m = rows.size();
    size_t n = m ? rows[0].size() : 0;
    zmat U;
    if (transform) {
        U.assign(m, zrow(m, 0));
        for (size_t i = 0; i < m; ++i)
            U[i][i] = 1;
    }
    size_t r = 0;
    for (size_t col = 0; col < n && r < m; ++col) {
        // gcd-eliminate entries in this column among rows r..m-1
        while (true) {
            size_t best = m;
            for (size_t i = r; i < m; ++i)
                if (rows[i][col] != 0 &&
                    (best == m || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == m)
                break; // column clear
            std::swap(rows[r], rows[best]);
            if (transform)
                std::swap(U[r], U[best]);
            bool clear = true;
            for (size_t i = r + 1; i < m; ++i) {
                if (rows[i][col] == 0)
                    continue;
                ZZ q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
                row_axpy(rows[i], q, rows[r]);
                if (transform)
                    row_axpy(U[i], q, U[r]);
                if (rows[i][col] != 0)
                    clear = false;
            }
            if (clear)
                break;
        }
        if (rows[r][col] == 0)
            continue;
        if (rows[r][col] < 0) {
            for (auto& x : rows[r])
                x = -x;
            if (transform)
                for (auto& x : U[r])
                    x = -x;
        }
        for (size_t i = 0; i < r; ++i) {
            ZZ q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
            row_axpy(rows[i], q, rows[r]);
            if (transform)
                row_axpy(U[i], q, U[r]);
        }
        ++r;
    }
    if (transform) {
        // keep all of U; rank information comes from the returned rows
        zmat trimmed = rows;
        trimmed.resize(r);
        *transform = std::move(U);
        return trimmed;
    }
    rows.resize(r);
    return rows;
}

zmat hnf_rows(zmat rows)
{
    return hnf_core(std::move(rows), nullptr);
}

zmat left_kernel(const zmat& M)
{
    zmat rows = M;
    zmat U;
    zmat H = hnf_core(rows, &U);
    // rows of U beyond rank(H) map to zero
    zmat ker;
    for (size_t i = H.size(); i < U.size(); ++i)
        ker.push_back(U[i]);
    return hnf_rows(ker);
}

zmat congruence_lattice(const zmat& A, const ZZ& m, size_t n)
{
    size_t k = A.size();
    // rows (y | z) in Z^{n+k} with y A^T + m z = 0  <=>  A y = -m z
    zmat W(n + k, zrow(k, 0));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < k; ++i)
            W[j][i] = A[i][j];
    for (size_t i = 0; i < k; ++i)
        W[n + i][i] = m;
    zmat ker = left_kernel(W);
    zmat proj;
    for (const auto& row : ker)
        proj.push_back(zrow(row.begin(), row.begin() + n));
    return hnf_rows(proj);
}

qmat qq_mat_mul(const qmat& A, const qmat& B)
{
    size_t m = A.size(), k = B.size(), n = B[0].size();
    qmat C(m, qrow(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (A[i][t] == 0)
                continue;
            for (size_t j = 0; j < n; ++j)
                C[i][j] += A[i][t] * B[t][j];
        }
    return C;
}

qmat qq_mat_inv(const qmat& A)
{
    size_t n = A.size();
    qmat M = A;
    qmat I(n, qrow(n, 0));
    for (size_t i = 0; i < n; ++i)
        I[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c] == 0)
            ++piv;
        if (piv == n)
            throw arith_error("singular matrix");
        std::swap(M[piv], M[c]);
        std::swap(I[piv], I[c]);
        QQ d = M[c][c];
        for (size_t j = 0; j < n; ++j) {
            M[c][j] /= d;
            I[c][j] /= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0)
                continue;
            QQ f = M[i][c];
            for (size_t j = 0; j < n; ++j) {
                M[i][j] -= f * M[c][j];
                I[i][j] -= f * I[c][j];
            }
        }
    }
    return I;
}

static qlat canonicalize(zmat H, ZZ den)
{
    if (H.size() != 4)
        throw arith_error("lattice is not full rank");
    ZZ g = den;
    for (const auto& row : H)
        for (const auto& x : row)
            g = gcd(g, x);
    if (g > 1) {
        den /= g;
        for (auto& row : H)
            for (auto& x : row)
                x /= g;
    }
    qlat L;
    L.den = den;
    L.H = std::move(H);
    return L;
}

qlat lat_from_zrows(zmat rows, const ZZ& den)
{
    return canonicalize(hnf_rows(std::move(rows)), den);
}

qlat lat_from_rows(const std::vector<quat_elt>& gens)
{
    ZZ den = 1;
    for (const auto& g : gens)
        for (const auto& x : g.v)
            den = lcm(den, ZZ(x.get_den()));
    zmat rows;
    for (const auto& g : gens) {
        zrow r(4);
        for (int i = 0; i < 4; ++i) {
            QQ s = g.v[i] * QQ(den);
            r[i] = ZZ(s.get_num()); // s integral by construction
        }
        rows.push_back(std::move(r));
    }
    return lat_from_zrows(std::move(rows), den);
}

quat_elt lat_basis_elt(const qlat& L, int i)
{
    quat_elt e;
    for (int j = 0; j < 4; ++j)
        e.v[j] = QQ(L.H[i][j]) / QQ(L.den);
    return e;
}

std::vector<quat_elt> lat_basis(const qlat& L)
{
    std::vector<quat_elt> b;
    for (int i = 0; i < 4; ++i)
        b.push_back(lat_basis_elt(L, i));
    return b;
}

bool lat_contains(const qlat& L, const quat_elt& x)
{
    // forward substitution against the upper-triangular HNF basis
    QQ c[4];
    for (int i = 0; i < 4; ++i)
        c[i] = x.v[i] * QQ(L.den);
    for (int i = 0; i < 4; ++i) {
        QQ q = c[i] / QQ(L.H[i][i]);
        if (q.get_den() != 1)
            return false;
        for (int j = i; j < 4; ++j)
            c[j] -= q * QQ(L.H[i][j]);
    }
    return true;
}

bool lat_subset(const qlat& A, const qlat& B)
{
    for (int i = 0; i < 4; ++i)
        if (!lat_contains(B, lat_basis_elt(A, i)))
            return false;
    return true;
}

QQ lat_det(const qlat& L)
{
    ZZ d = 1;
    for (int i = 0; i < 4; ++i)
        d *= L.H[i][i];
    QQ r = QQ(d) / QQ(zz_pow(L.den, 4));
    return abs(r);
}

QQ lat_index(const qlat& sub, const qlat& sup)
{
    QQ r = lat_det(sub) / lat_det(sup);
    return r;
}

qlat lat_sum(const qlat& A, const qlat& B)
{
    ZZ den = lcm(A.den, B.den);
    zmat rows;
    for (int i = 0; i < 4; ++i) {
        zrow r(4);
        for (int j = 0; j < 4; ++j)
            r[j] = A.H[i][j] * (den / A.den);
        rows.push_back(r);
        zrow s(4);
        for (int j = 0; j < 4; ++j)
            s[j] = B.H[i][j] * (den / B.den);
        rows.push_back(s);
    }
    return lat_from_zrows(std::move(rows), den);
}

qlat lat_dual(const qlat& L)
{
    qmat Bm(4, qrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            Bm[i][j] = QQ(L.H[i][j]) / QQ(L.den);
    qmat inv = qq_mat_inv(Bm);
    // dual basis rows = columns of inv
    std::vector<quat_elt> gens;
    for (int j = 0; j < 4; ++j)
        gens.push_back(quat_elt(inv[0][j], inv[1][j], inv[2][j], inv[3][j]));
    return lat_from_rows(gens);
}

qlat lat_intersect(const qlat& A, const qlat& B)
{
    return lat_dual(lat_sum(lat_dual(A), lat_dual(B)));
}

qlat lat_scale(const qlat& L, const QQ& s)
{
    if (s == 0)
        throw arith_error("scaling lattice by zero");
    std::vector<quat_elt> gens;
    for (int i = 0; i < 4; ++i)
        gens.push_back(q_scal(s, lat_basis_elt(L, i)));
    return lat_from_rows(gens);
}

qlat lat_product(const quat_alg& Bq, const qlat& A, const qlat& B)
{
    std::vector<quat_elt> gens;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            gens.push_back(q_mul(Bq, lat_basis_elt(A, i), lat_basis_elt(B, j)));
    return lat_from_rows(gens);
}

qlat lat_mul_right(const quat_alg& Bq, const qlat& L, const quat_elt& y)
{
    std::vector<quat_elt> gens;
    for (int i = 0; i < 4; ++i)
        gens.push_back(q_mul(Bq, lat_basis_elt(L, i), y));
    return lat_from_rows(gens);
}

qlat lat_mul_left(const quat_alg& Bq, const quat_elt& y, const qlat& L)
{
    std::vector<quat_elt> gens;
    for (int i = 0; i < 4; ++i)
        gens.push_back(q_mul(Bq, y, lat_basis_elt(L, i)));
    return lat_from_rows(gens);
}

qlat lat_conj(const quat_alg& Bq, const qlat& L)
{
    std::vector<quat_elt> gens;
    for (int i = 0; i < 4; ++i)
        gens.push_back(q_conj(Bq, lat_basis_elt(L, i)));
    return lat_from_rows(gens);
}

qmat lat_gram(const quat_alg& Bq, const qlat& L)
{
    auto b = lat_basis(L);
    qmat G(4, qrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            G[i][j] = q_trd(Bq, q_mul(Bq, b[i], q_conj(Bq, b[j])));
            G[j][i] = G[i][j];
        }
    return G;
}

ZZ order_reduced_discriminant(const quat_alg& Bq, const qlat& O)
{
    // |det(trd(e_i e_j))| = (reduced discriminant)^2
    auto b = lat_basis(O);
    qmat T(4, qrow(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            T[i][j] = q_trd(Bq, q_mul(Bq, b[i], b[j]));
    // determinant by fraction-free-ish Gaussian elimination over QQ
    QQ det = 1;
    qmat M = T;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        while (piv < 4 && M[piv][c] == 0)
            ++piv;
        if (piv == 4)
            return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (int i = c + 1; i < 4; ++i) {
            if (M[i][c] == 0)
                continue;
            QQ f = M[i][c] / M[c][c];
            for (int j = c; j < 4; ++j)
                M[i][j] -= f * M[c][j];
        }
    }
    det = abs(det);
    if (det.get_den() != 1)
        throw arith_error("trace form determinant is not integral");
    ZZ d = det.get_num();
    ZZ r;
    if (!mpz_root(r.get_mpz_t(), d.get_mpz_t(), 2))
        throw arith_error("trace form determinant is not a perfect square");
    return r;
}

QQ lat_nrd(const qlat& L, const qlat& reference_order)
{
    QQ ratio = lat_det(L) / lat_det(reference_order);
    // nrd^2 = ratio
    ZZ n = ratio.get_num(), d = ratio.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 2) ||
        !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 2))
        throw arith_error("lattice covolume ratio is not a square");
    return QQ(rn) / QQ(rd);
}

void enumerate_gram(const qmat& gram, const QQ& bound,
                    const std::function<void(const std::array<long, 4>&, const QQ&)>& visit)
{
    // exact LDL^T: gram = L D L^T with unit lower-triangular L
    qmat Lm(4, qrow(4, 0));
    qrow D(4, 0);
    {
        qmat G = gram;
        for (int i = 0; i < 4; ++i) {
            Lm[i][i] = 1;
            for (int j = 0; j < i; ++j) {
                QQ s = G[i][j];
                for (int k = 0; k < j; ++k)
                    s -= Lm[i][k] * Lm[j][k] * D[k];
                Lm[i][j] = s / D[j];
            }
            QQ s = G[i][i];
            for (int k = 0; k < i; ++k)
                s -= Lm[i][k] * Lm[i][k] * D[k];
            D[i] = s;
            if (D[i] <= 0)
                throw arith_error("gram matrix is not positive definite");
        }
    }
    // Q(x) = sum_i D[i] (x_i + sum_{j>i} Lm[j][i] x_j)^2 ; recurse from i = 3
    std::array<long, 4> x{0, 0, 0, 0};
    std::function<void(int, const QQ&)> rec = [&](int i, const QQ& budget) {
        if (i < 0) {
            // report one of +-x: leading nonzero coordinate (highest index) > 0
            int lead = 3;
            while (lead >= 0 && x[size_t(lead)] == 0)
                --lead;
            if (lead >= 0 && x[size_t(lead)] > 0)
                visit(x, bound - budget);
            return;
        }
        QQ center = 0;
        for (int j = i + 1; j < 4; ++j)
            center += Lm[j][i] * QQ(long(x[j]));
        long start = std::lround(-center.get_d());
        for (long xi = start;; ++xi) { // upward sweep
            QQ t = QQ(xi) + center;
            QQ term = D[size_t(i)] * t * t;
            if (term <= budget) {
                x[size_t(i)] = xi;
                rec(i - 1, budget - term);
            } else if (t >= 0)
                break;
            if (xi - start > 50000000)
                throw arith_error("enumeration runaway");
        }
        for (long xi = start - 1;; --xi) { // downward sweep
            QQ t = QQ(xi) + center;
            QQ term = D[size_t(i)] * t * t;
            if (term <= budget) {
                x[size_t(i)] = xi;
                rec(i - 1, budget - term);
            } else if (t <= 0)
                break;
            if (start - xi > 50000000)
                throw arith_error("enumeration runaway");
        }
        x[size_t(i)] = 0;
    };
    rec(3, bound);
}

std::map<QQ, long> nrd_counts(const quat_alg& Bq, const qlat& L, const QQ& bound)
{
    qmat G = lat_gram(Bq, L);
    std::map<QQ, long> out;
    enumerate_gram(G, 2 * bound, [&](const std::array<long, 4>&, const QQ& val) {
        out[val / 2] += 2; // count +-x
    });
    return out;
}

static quat_elt coords_to_elt(const qlat& L, const std::array<long, 4>& x)
{
    quat_elt e;
    for (int j = 0; j < 4; ++j) {
        QQ s = 0;
        for (int i = 0; i < 4; ++i)
            s += QQ(x[size_t(i)]) * QQ(L.H[i][j]);
        e.v[j] = s / QQ(L.den);
    }
    return e;
}

std::optional<quat_elt> find_nrd(const quat_alg& Bq, const qlat& L, const QQ& target)
{
    qmat G = lat_gram(Bq, L);
    std::optional<quat_elt> found;
    struct stop_enum {};
    try {
        enumerate_gram(G, 2 * target, [&](const std::array<long, 4>& x, const QQ& val) {
            if (val == 2 * target && !found) {
                found = coords_to_elt(L, x);
                throw stop_enum{};
            }
        });
    } catch (const stop_enum&) {
    }
    return found;
}

std::vector<quat_elt> all_nrd(const quat_alg& Bq, const qlat& L, const QQ& target)
{
    qmat G = lat_gram(Bq, L);
    std::vector<quat_elt> out;
    enumerate_gram(G, 2 * target, [&](const std::array<long, 4>& x, const QQ& val) {
        if (val == 2 * target)
            out.push_back(coords_to_elt(L, x));
    });
    return out;
}

} // namespace gi
