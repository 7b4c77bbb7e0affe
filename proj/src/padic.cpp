#include "gi/padic.hpp"

#include <nlohmann/json.hpp>

namespace gi {

static void check_compat(const group_ring_elt& a, const group_ring_elt& b)
{
    if (a.n != b.n || a.ctx.p != b.ctx.p || a.ctx.M != b.ctx.M)
        throw arith_error("group ring: level/context mismatch");
}

group_ring_elt gr_add(const group_ring_elt& a, const group_ring_elt& b)
{
    check_compat(a, b);
    group_ring_elt r = a;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.ctx.add(r.c[i], b.c[i]);
    return r;
}

group_ring_elt gr_sub(const group_ring_elt& a, const group_ring_elt& b)
{
    check_compat(a, b);
    group_ring_elt r = a;
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = a.ctx.sub(r.c[i], b.c[i]);
    return r;
}

group_ring_elt gr_mul(const group_ring_elt& a, const group_ring_elt& b)
{
    check_compat(a, b);
    group_ring_elt r(a.ctx, a.n);
    size_t N = a.c.size();
    for (size_t i = 0; i < N; ++i) {
        if (a.c[i] == 0)
            continue;
        for (size_t j = 0; j < N; ++j) {
            if (b.c[j] == 0)
                continue;
            size_t k = i + j;
            if (k >= N)
                k -= N;
            r.c[k] = a.ctx.add(r.c[k], a.ctx.mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

group_ring_elt gr_scalar_mul(const group_ring_elt& a, i64 s)
{
    group_ring_elt r = a;
    for (auto& x : r.c)
        x = a.ctx.mul(x, s);
    return r;
}

bool gr_equal(const group_ring_elt& a, const group_ring_elt& b)
{
    check_compat(a, b);
    return a.c == b.c;
}

bool gr_is_zero(const group_ring_elt& a)
{
    for (i64 x : a.c)
        if (x != 0)
            return false;
    return true;
}

group_ring_elt involution(const group_ring_elt& a)
{
    group_ring_elt r(a.ctx, a.n);
    size_t N = a.c.size();
    for (size_t i = 0; i < N; ++i)
        r.c[(N - i) % N] = a.c[i];
    return r;
}

group_ring_elt project_level(const group_ring_elt& a)
{
    if (a.n == 0)
        throw arith_error("cannot project below level 0");
    group_ring_elt r(a.ctx, a.n - 1);
    size_t N = r.c.size();
    for (size_t i = 0; i < a.c.size(); ++i)
        r.c[i % N] = a.ctx.add(r.c[i % N], a.c[i]);
    return r;
}

group_ring_elt gr_one_minus(const padic_ctx& cx, int n, i64 u, i64 t)
{
    group_ring_elt r = group_ring_elt::one(cx, n);
    i64 N = r.order();
    i64 k = ((t % N) + N) % N;
    r.c[size_t(k)] = cx.sub(r.c[size_t(k)], u);
    return r;
}

/*
 * Basis change to T = g - 1: an element sum c_i g^i equals
 * sum c_i (1+T)^i; expand binomially and reduce nothing (degrees < p^n).
 */
lambda_series to_T_basis(const group_ring_elt& a)
{
    lambda_series f;
    f.ctx = a.ctx;
    f.mod_cyclotomic = true;
    f.level = a.n;
    size_t N = a.c.size();
    f.c.assign(N, 0);
    // row i of Pascal's triangle gives (1+T)^i
    std::vector<i64> binom(N, 0);
    binom[0] = 1;
    for (size_t i = 0; i < N; ++i) {
        if (a.c[i] != 0)
            for (size_t k = 0; k <= i; ++k)
                f.c[k] = a.ctx.add(f.c[k], a.ctx.mul(a.c[i], binom[k]));
        // binom <- next row
        for (size_t k = i + 1; k-- > 1;)
            binom[k] = a.ctx.add(binom[k], binom[k - 1]);
        if (i + 1 < N)
            binom[i + 1] = 1;
    }
    return f;
}

group_ring_elt from_T_basis(const lambda_series& f)
{
    if (!f.mod_cyclotomic)
        throw arith_error("from_T_basis needs a cyclotomic-modulus series");
    group_ring_elt a(f.ctx, f.level);
    size_t N = a.c.size();
    if (f.c.size() > N)
        throw arith_error("series degree exceeds group order");
    // T^k = (g-1)^k
    std::vector<i64> pw(N, 0);
    pw[0] = 1; // (g-1)^0
    for (size_t k = 0; k < f.c.size(); ++k) {
        if (f.c[k] != 0)
            for (size_t i = 0; i < N; ++i)
                a.c[i] = f.ctx.add(a.c[i], f.ctx.mul(f.c[k], pw[i]));
        // pw <- pw * (g - 1)
        std::vector<i64> nx(N, 0);
        for (size_t i = 0; i < N; ++i) {
            if (pw[i] == 0)
                continue;
            size_t s = (i + 1) % N;
            nx[s] = f.ctx.add(nx[s], pw[i]);
            nx[i] = f.ctx.sub(nx[i], pw[i]);
        }
        pw = nx;
    }
    return a;
}

int content(const lambda_series& f)
{
    int best = f.ctx.M;
    for (i64 x : f.c)
        best = std::min(best, f.ctx.valuation(x));
    if (best == f.ctx.M)
        throw all_capped_error();
    return best;
}

invariant_report mu_lambda(const lambda_series& f)
{
    invariant_report r;
    r.mu = content(f);
    i64 pmu = i64_pow(f.ctx.p, unsigned(r.mu));
    for (size_t i = 0; i < f.c.size(); ++i) {
        i64 shifted = f.ctx.reduce(f.c[i]) / pmu;
        if (shifted % f.ctx.p != 0) {
            r.lambda = long(i);
            break;
        }
    }
    r.stable = false; // a single series carries no stability evidence
    return r;
}

invariant_report mu_lambda_tower(const std::vector<lambda_series>& tower,
                                 const std::vector<int>& levels)
{
    if (tower.empty() || tower.size() != levels.size())
        throw arith_error("mu_lambda_tower: bad input");
    invariant_report out = mu_lambda(tower[0]);
    out.levels_used = levels;
    out.stable = true;
    int n_min = levels[0];
    for (size_t i = 1; i < tower.size(); ++i) {
        invariant_report ri = mu_lambda(tower[i]);
        n_min = std::min(n_min, levels[i]);
        if (ri.mu != out.mu || ri.lambda != out.lambda) {
            out.stable = false;
            out.note = "invariants differ across levels";
        }
    }
    i64 p = tower[0].ctx.p;
    long horizon = (n_min >= 1) ? long(i64_pow(p, unsigned(n_min)) - i64_pow(p, unsigned(n_min - 1)))
                                : 0;
    if (out.lambda >= horizon) {
        out.stable = false;
        if (out.note.empty())
            out.note = "lambda at or beyond the level horizon";
    }
    return out;
}

std::string gr_to_json(const group_ring_elt& a)
{
    nlohmann::ordered_json j;
    j["p"] = a.ctx.p;
    j["M"] = a.ctx.M;
    j["n"] = a.n;
    j["coeffs"] = a.c;
    return j.dump();
}

group_ring_elt gr_from_json(const std::string& s)
{
    auto j = nlohmann::json::parse(s);
    padic_ctx cx(j.at("p").get<i64>(), j.at("M").get<int>());
    group_ring_elt a(cx, j.at("n").get<int>());
    auto v = j.at("coeffs").get<std::vector<i64>>();
    if (v.size() != a.c.size())
        throw arith_error("group ring JSON: coefficient count mismatch");
    for (size_t i = 0; i < v.size(); ++i)
        a.c[i] = cx.reduce(v[i]);
    return a;
}

} // namespace gi
