#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qsc {

// Dense integer matrices; homology chain complexes at desk scale stay tiny,
// so int64 with min-pivot reduction is plenty.
using IntMat = std::vector<std::vector<std::int64_t>>;
using IntVec = std::vector<std::int64_t>;

inline IntMat identity_mat(std::size_t n) {
    IntMat m(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
    IntMat c(n, IntVec(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t l = 0; l < p; ++l) c[i][l] += a[i][j] * b[j][l];
        }
    return c;
}

inline IntVec mat_vec(const IntMat& a, const IntVec& x) {
    IntVec y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SmithForm {
    IntMat d;
    IntMat u;
    IntMat v;
    std::size_t rank = 0;

    IntVec diagonal() const {
        IntVec out;
        std::size_t n = d.size() ? std::min(d.size(), d[0].size()) : 0;
        for (std::size_t i = 0; i < n; ++i)
            if (d[i][i] != 0) out.push_back(d[i][i]);
        return out;
    }
};

inline SmithForm smith_normal_form(IntMat a) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    SmithForm out;
    out.u = identity_mat(rows);
    out.v = identity_mat(cols);

    auto row_sub = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
        for (std::size_t j = 0; j < rows; ++j) out.u[dst][j] -= q * out.u[src][j];
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
        for (std::size_t i = 0; i < cols; ++i) out.v[i][dst] -= q * out.v[i][src];
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        std::swap(out.u[x], out.u[y]);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(out.v[i][x], out.v[i][y]);
    };
    auto row_negate = [&](std::size_t x) {
        for (std::size_t j = 0; j < cols; ++j) a[x][j] = -a[x][j];
        for (std::size_t j = 0; j < rows; ++j) out.u[x][j] = -out.u[x][j];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero pivot in the trailing block
        std::size_t pi = t, pj = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::int64_t v = a[i][j] < 0 ? -a[i][j] : a[i][j];
                if (v != 0 && (best == 0 || v < best)) { best = v; pi = i; pj = j; }
            }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                std::int64_t q = a[i][t] / a[t][t];
                row_sub(i, t, q);
                if (a[i][t] != 0) { row_swap(t, i); clean = false; }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                std::int64_t q = a[t][j] / a[t][t];
                col_sub(j, t, q);
                if (a[t][j] != 0) { col_swap(t, j); clean = false; }
            }
            if (clean) {
                // divisibility sweep
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            row_sub(t, i, -1); // add row i to row t
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0) row_negate(t);
        ++t;
    }
    out.rank = t;
    out.d = std::move(a);
    return out;
}

inline std::size_t int_rank(const IntMat& a) {
    if (a.empty() || a[0].empty()) return 0;
    return smith_normal_form(a).rank;
}

// Solves A x = b over the integers. `kernel` is a lattice basis of
// {x : A x = 0}; `particular` is empty-optional when no integer solution.
struct IntSolve {
    std::optional<IntVec> particular;
    std::vector<IntVec> kernel;
};

inline IntSolve solve_integer(const IntMat& a, const IntVec& b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    IntSolve out;
    if (cols == 0) {
        bool zero = true;
        for (auto v : b) zero = zero && v == 0;
        if (zero) out.particular = IntVec{};
        return out;
    }
    SmithForm s = smith_normal_form(a);
    IntVec ub = mat_vec(s.u, b);
    IntVec y(cols, 0);
    bool ok = true;
    for (std::size_t i = 0; i < rows; ++i) {
        std::int64_t d = (i < cols && i < s.d.size()) ? s.d[i][i] : 0;
        if (d != 0) {
            if (ub[i] % d != 0) { ok = false; break; }
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            ok = false;
            break;
        }
    }
    if (ok) out.particular = mat_vec(s.v, y);
    for (std::size_t j = s.rank; j < cols; ++j) {
        IntVec k(cols, 0);
        for (std::size_t i = 0; i < cols; ++i) k[i] = s.v[i][j];
        out.kernel.push_back(std::move(k));
    }
    return out;
}

// Row-style Hermite reduction: returns unimodular row operations T with
// T * M in echelon form; used to pick integer bases out of generating sets.
struct HermiteForm {
    IntMat h;          // echelon form
    IntMat t;          // unimodular, t * input = h
    std::vector<std::size_t> pivot_cols;
};

inline HermiteForm hermite_rows(IntMat m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    HermiteForm out;
    out.t = identity_mat(rows);
    auto row_sub = [&](std::size_t dst, std::size_t src, std::int64_t q) {
        for (std::size_t j = 0; j < cols; ++j) m[dst][j] -= q * m[src][j];
        for (std::size_t j = 0; j < rows; ++j) out.t[dst][j] -= q * out.t[src][j];
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        std::swap(m[x], m[y]);
        std::swap(out.t[x], out.t[y]);
    };
    auto row_negate = [&](std::size_t x) {
        for (std::size_t j = 0; j < cols; ++j) m[x][j] = -m[x][j];
        for (std::size_t j = 0; j < rows; ++j) out.t[x][j] = -out.t[x][j];
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // euclidean elimination within the column
        while (true) {
            std::size_t best = rows;
            std::int64_t bv = 0;
            for (std::size_t i = r; i < rows; ++i) {
                std::int64_t v = m[i][c] < 0 ? -m[i][c] : m[i][c];
                if (v != 0 && (bv == 0 || v < bv)) { bv = v; best = i; }
            }
            if (best == rows) break;
            row_swap(r, best);
            bool more = false;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                row_sub(i, r, m[i][c] / m[r][c]);
                if (m[i][c] != 0) more = true;
            }
            if (!more) break;
        }
        if (m[r][c] != 0) {
            if (m[r][c] < 0) row_negate(r);
            for (std::size_t i = 0; i < r; ++i)
                if (m[i][c] != 0) {
                    std::int64_t q = m[i][c] / m[r][c];
                    if (m[i][c] % m[r][c] != 0 && ((m[i][c] < 0) != (m[r][c] < 0))) --q;
                    row_sub(i, r, q);
                }
            out.pivot_cols.push_back(c);
            ++r;
        }
    }
    out.h = std::move(m);
    return out;
}

} // namespace qsc
