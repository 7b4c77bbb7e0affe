#include "gi/quat.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace gi {

bool is_fundamental_discriminant_neg(const ZZ& DK)
{
    if (DK <= 0)
        return false;
    ZZ d = -DK; // the discriminant itself
    ZZ m4 = mod_pos(d, ZZ(4));
    if (m4 == 1) {
        // squarefree check
        for (const auto& [q, e] : factor(DK))
            if (e > 1)
                return false;
        return true;
    }
    if (m4 == 0) {
        ZZ m = DK / 4;
        ZZ r = mod_pos(-m, ZZ(4));
        if (r != 2 && r != 3)
            return false;
        for (const auto& [q, e] : factor(m))
            if (e > 1)
                return false;
        return true;
    }
    return false;
}

imag_quad_field::imag_quad_field(const ZZ& DK_)
{
    if (!is_fundamental_discriminant_neg(DK_))
        throw arith_error("-" + DK_.get_str() + " is not a fundamental discriminant");
    DK = DK_;
    Dp = (mod_pos(DK, ZZ(2)) == 0) ? DK / 2 : DK;
    tr_th = Dp;
    ZZ num = Dp * Dp + DK;
    if (mod_pos(num, ZZ(4)) != 0)
        throw arith_error("theta is not integral");
    nm_th = num / 4;
}

long imag_quad_field::class_number() const
{
    // count primitive reduced forms (a,b,c) of discriminant -DK
    long h = 0;
    ZZ D = -DK;
    for (ZZ b = mod_pos(D, ZZ(2)); b * b <= DK / 3; b += 2) {
        ZZ num = (b * b - D) / 4;
        for (ZZ a = std::max(ZZ(1), b); a * a <= num; ++a) {
            if (mod_pos(num, a) != 0)
                continue;
            ZZ c = num / a;
            ZZ g = gcd(gcd(a, b), c);
            if (g != 1)
                continue;
            if (b == 0 || a == b || a == c)
                h += 1; // ambiguous boundary: only +b counts
            else
                h += 2; // (a, b, c) and (a, -b, c)
        }
    }
    return h;
}

quat_elt q_add(const quat_elt& x, const quat_elt& y)
{
    quat_elt r;
    for (int i = 0; i < 4; ++i)
        r.v[i] = x.v[i] + y.v[i];
    return r;
}

quat_elt q_sub(const quat_elt& x, const quat_elt& y)
{
    quat_elt r;
    for (int i = 0; i < 4; ++i)
        r.v[i] = x.v[i] - y.v[i];
    return r;
}

quat_elt q_scal(const QQ& s, const quat_elt& x)
{
    quat_elt r;
    for (int i = 0; i < 4; ++i)
        r.v[i] = s * x.v[i];
    return r;
}

namespace {

struct kelt { // a + b*theta
    QQ a, b;
};

kelt kmul(const imag_quad_field& K, const kelt& x, const kelt& y)
{
    // theta^2 = D' theta - Nm(theta)
    QQ N(K.nm_th), Dp(K.Dp);
    return {x.a * y.a - x.b * y.b * N, x.a * y.b + x.b * y.a + x.b * y.b * Dp};
}

kelt kconj(const imag_quad_field& K, const kelt& x)
{
    return {x.a + x.b * QQ(K.Dp), -x.b};
}

} // namespace

quat_elt q_mul(const quat_alg& B, const quat_elt& x, const quat_elt& y)
{
    // (z1 + w1 j)(z2 + w2 j) = (z1 z2 + beta w1 conj(w2)) + (z1 w2 + w1 conj(z2)) j
    kelt z1{x.v[0], x.v[1]}, w1{x.v[2], x.v[3]};
    kelt z2{y.v[0], y.v[1]}, w2{y.v[2], y.v[3]};
    kelt a = kmul(B.K, z1, z2);
    kelt t = kmul(B.K, w1, kconj(B.K, w2));
    a.a += QQ(B.beta) * t.a;
    a.b += QQ(B.beta) * t.b;
    kelt b = kmul(B.K, z1, w2);
    kelt s = kmul(B.K, w1, kconj(B.K, z2));
    b.a += s.a;
    b.b += s.b;
    return quat_elt(a.a, a.b, b.a, b.b);
}

quat_elt q_conj(const quat_alg& B, const quat_elt& x)
{
    return quat_elt(x.v[0] + x.v[1] * QQ(B.K.Dp), -x.v[1], -x.v[2], -x.v[3]);
}

QQ q_nrd(const quat_alg& B, const quat_elt& x)
{
    auto nmk = [&](const QQ& a, const QQ& b) -> QQ {
        return a * a + a * b * QQ(B.K.Dp) + b * b * QQ(B.K.nm_th);
    };
    return nmk(x.v[0], x.v[1]) - QQ(B.beta) * nmk(x.v[2], x.v[3]);
}

QQ q_trd(const quat_alg& B, const quat_elt& x)
{
    return 2 * x.v[0] + x.v[1] * QQ(B.K.Dp);
}

quat_elt q_inv(const quat_alg& B, const quat_elt& x)
{
    QQ n = q_nrd(B, x);
    if (n == 0)
        throw arith_error("inverse of zero quaternion");
    return q_scal(1 / n, q_conj(B, x));
}

std::ostream& operator<<(std::ostream& o, const quat_elt& x)
{
    return o << "(" << x.v[0] << ", " << x.v[1] << ", " << x.v[2] << ", " << x.v[3] << ")";
}

std::vector<ZZ> ramified_primes(const imag_quad_field& K, const ZZ& beta)
{
    // B = (-DK, beta): ramified exactly where the Hilbert symbol is -1
    std::set<ZZ> cand{ZZ(2)};
    for (const auto& [q, e] : factor(K.DK))
        cand.insert(q);
    for (const auto& [q, e] : factor(beta))
        cand.insert(q);
    std::vector<ZZ> ram;
    for (const ZZ& q : cand)
        if (hilbert_symbol(QQ(-K.DK), QQ(beta), q) == -1)
            ram.push_back(q);
    std::sort(ram.begin(), ram.end());
    return ram;
}

quat_alg choose_beta(const imag_quad_field& K, const ZZ& Nminus,
                     const std::vector<ZZ>& split_primes, long bound)
{
    std::vector<ZZ> target;
    for (const auto& [q, e] : factor(Nminus))
        target.push_back(q);
    std::sort(target.begin(), target.end());

    for (long m = 1; m <= bound; ++m) {
        ZZ beta(-m);
        bool ok = true;
        for (const ZZ& q : split_primes) {
            if (mod_pos(beta, q) == 0) {
                ok = false;
                break;
            }
            if (q == 2) {
                if (mod_pos(beta, ZZ(8)) != 1) {
                    ok = false;
                    break;
                }
            } else if (kronecker(beta, q) != 1) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        for (const auto& [q, e] : factor(K.DK)) {
            if (mod_pos(beta, q) == 0) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        if (ramified_primes(K, beta) != target)
            continue;
        quat_alg B;
        B.K = K;
        B.beta = beta;
        B.Nminus = Nminus;
        return B;
    }
    throw beta_search_error("no admissible beta with |beta| <= " + std::to_string(bound));
}

} // namespace gi
