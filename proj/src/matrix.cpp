#include "sik3/matrix.hpp"

#include <algorithm>

#include "sik3/errors.hpp"

namespace sik3 {

Int int_det(IntMat m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num / prev; // exact (Bareiss)
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

Rat rat_det(RatMat m) {
    const std::size_t n = m.size();
    Rat det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != k) {
            std::swap(m[k], m[p]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

namespace {

// Gauss-Jordan on [a | rhs]; rhs has arbitrary width.
RatMat eliminate(RatMat a, RatMat rhs) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) throw Error("singular linear system");
        std::swap(a[k], a[p]);
        std::swap(rhs[k], rhs[p]);
        const Rat pivot = a[k][k];
        for (auto& x : a[k]) x /= pivot;
        for (auto& x : rhs[k]) x /= pivot;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            const Rat f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = 0; j < rhs[i].size(); ++j) rhs[i][j] -= f * rhs[k][j];
        }
    }
    return rhs;
}

} // namespace

RatVec rat_solve(RatMat a, RatVec b) {
    RatMat rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) rhs[i] = {b[i]};
    RatMat sol = eliminate(std::move(a), std::move(rhs));
    RatVec out(sol.size());
    for (std::size_t i = 0; i < sol.size(); ++i) out[i] = sol[i][0];
    return out;
}

RatMat rat_inverse(RatMat a) {
    const std::size_t n = a.size();
    RatMat id(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return eliminate(std::move(a), std::move(id));
}

Smith smith_normal_form(IntMat m) {
    const std::size_t n = m.size();
    IntMat pinv(n, IntVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) pinv[i][i] = 1;

    // Row op helpers keep pinv = P^{-1} in sync (column ops on pinv).
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(m[i], m[j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(pinv[r][i], pinv[r][j]);
    };
    auto row_addmul = [&](std::size_t i, std::size_t j, const Int& c) {
        // row_i += c * row_j  =>  pinv col_j -= c * col_i
        for (std::size_t s = 0; s < n; ++s) m[i][s] += c * m[j][s];
        for (std::size_t r = 0; r < n; ++r) pinv[r][j] -= c * pinv[r][i];
    };
    auto row_negate = [&](std::size_t i) {
        for (auto& x : m[i]) x = -x;
        for (std::size_t r = 0; r < n; ++r) pinv[r][i] = -pinv[r][i];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r) std::swap(m[r][i], m[r][j]);
    };
    auto col_addmul = [&](std::size_t i, std::size_t j, const Int& c) {
        for (std::size_t r = 0; r < n; ++r) m[r][i] += c * m[r][j];
    };

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // Pivot: smallest nonzero magnitude in the trailing block.
            std::size_t bi = n, bj = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (m[i][j] != 0 &&
                        (bi == n || cmp(abs(m[i][j]), abs(m[bi][bj])) < 0)) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break; // trailing block zero
            if (bi != k) row_swap(k, bi);
            if (bj != k) col_swap(k, bj);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), m[i][k].get_mpz_t(), m[k][k].get_mpz_t());
                    row_addmul(i, k, -q);
                    if (m[i][k] != 0) clean = false;
                }
            for (std::size_t j = k + 1; j < n; ++j)
                if (m[k][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), m[k][j].get_mpz_t(), m[k][k].get_mpz_t());
                    col_addmul(j, k, -q);
                    if (m[k][j] != 0) clean = false;
                }
            if (!clean) continue;
            // Divisibility: m[k][k] must divide the rest of the block.
            bool fixed = true;
            for (std::size_t i = k + 1; i < n && fixed; ++i)
                for (std::size_t j = k + 1; j < n && fixed; ++j)
                    if (m[i][j] % m[k][k] != 0) {
                        row_addmul(k, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m[k][k] < 0) row_negate(k);
    }
    Smith out;
    out.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.diag[i] = m[i][i];
    out.pinv = std::move(pinv);
    return out;
}

IntMat hnf_row_basis(IntMat m) {
    if (m.empty()) return m;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            while (m[i][c] != 0) {
                Int q = m[r][c] / m[i][c];
                for (std::size_t j = 0; j < cols; ++j) m[r][j] -= q * m[i][j];
                std::swap(m[r], m[i]);
            }
        }
        if (m[r][c] < 0)
            for (auto& x : m[r]) x = -x;
        ++r;
    }
    if (r != cols) throw Error("hnf_row_basis: input not of full column rank");
    m.resize(cols);
    return m;
}

} // namespace sik3
