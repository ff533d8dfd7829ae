#include <catch2/catch_amalgamated.hpp>

#include "qsc/rng.hpp"
#include "qsc/snf.hpp"

using namespace qsc;

namespace {

// fraction-free rank over Q as an independent oracle
std::size_t rank_oracle(IntMat a) {
    if (a.empty() || a[0].empty()) return 0;
    std::size_t rows = a.size(), cols = a[0].size(), r = 0;
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<double>(a[i][j]);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        for (std::size_t i = r; i < rows; ++i)
            if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
        if (std::abs(m[p][c]) < 1e-9) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            double f = m[i][c] / m[r][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

std::int64_t det3_sign_free(const IntMat& u) {
    // |det| of a small square matrix by integer Bareiss; enough for 5x5 here
    IntMat a = u;
    std::size_t n = a.size();
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 v = (__int128)a[i][j] * a[k][k] - (__int128)a[i][k] * a[k][j];
                a[i][j] = static_cast<std::int64_t>(v / prev);
            }
        prev = a[k][k];
    }
    std::int64_t d = a[n - 1][n - 1];
    return d < 0 ? -d : d;
}

} // namespace

TEST_CASE("smith normal form on known matrices") {
    // classic: [[2,4,4],[-6,6,12],[10,4,16]] has SNF diag(2,2,156)
    IntMat a{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    SmithForm s = smith_normal_form(a);
    REQUIRE(s.rank == 3);
    IntVec d = s.diagonal();
    CHECK(d == IntVec{2, 2, 156});
    // U A V == D
    IntMat uav = mat_mul(mat_mul(s.u, a), s.v);
    CHECK(uav == s.d);
    CHECK(det3_sign_free(s.u) == 1);
    CHECK(det3_sign_free(s.v) == 1);
}

TEST_CASE("smith rank matches rational rank on random matrices") {
    SeqRng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng.index(5);
        std::size_t cols = 1 + rng.index(5);
        IntMat a(rows, IntVec(cols));
        for (auto& row : a)
            for (auto& v : row) v = rng.range(-3, 3);
        SmithForm s = smith_normal_form(a);
        CHECK(s.rank == rank_oracle(a));
        CHECK(mat_mul(mat_mul(s.u, a), s.v) == s.d);
        for (std::size_t i = 0; i + 1 < s.rank; ++i)
            CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
    }
}

TEST_CASE("integer solve and kernel") {
    IntMat a{{2, 0, 4}, {0, 3, 6}};
    SECTION("solvable") {
        IntSolve sol = solve_integer(a, {6, 9});
        REQUIRE(sol.particular.has_value());
        IntVec x = *sol.particular;
        CHECK(mat_vec(a, x) == IntVec{6, 9});
        REQUIRE(sol.kernel.size() == 1);
        CHECK(mat_vec(a, sol.kernel[0]) == IntVec{0, 0});
        CHECK((sol.kernel[0][0] != 0 || sol.kernel[0][1] != 0 || sol.kernel[0][2] != 0));
    }
    SECTION("no integer solution") {
        IntSolve sol = solve_integer(a, {1, 0});
        CHECK(!sol.particular.has_value());
    }
    SECTION("random consistency") {
        SeqRng rng(7);
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t rows = 1 + rng.index(4);
            std::size_t cols = 1 + rng.index(4);
            IntMat m(rows, IntVec(cols));
            for (auto& row : m)
                for (auto& v : row) v = rng.range(-2, 2);
            IntVec x(cols);
            for (auto& v : x) v = rng.range(-3, 3);
            IntVec b = mat_vec(m, x);
            IntSolve sol = solve_integer(m, b);
            REQUIRE(sol.particular.has_value());
            CHECK(mat_vec(m, *sol.particular) == b);
            for (const IntVec& k : sol.kernel)
                CHECK(mat_vec(m, k) == IntVec(rows, 0));
        }
    }
}

TEST_CASE("hermite row reduction picks pivots") {
    IntMat m{{2, 1}, {1, 1}, {0, 3}};
    HermiteForm h = hermite_rows(m);
    CHECK(mat_mul(h.t, m) == h.h);
    REQUIRE(h.pivot_cols.size() == 2);
    // rows of h.h span the same lattice; first two rows are a basis of Z^2 here
    IntMat top{h.h[0], h.h[1]};
    SmithForm s = smith_normal_form(top);
    CHECK(s.diagonal() == IntVec{1, 1});
}

TEST_CASE("counter rng is order independent") {
    CounterRng r(123);
    double a = r.uniform(10);
    double b = r.uniform(3);
    CHECK(a == r.uniform(10));
    CHECK(b == r.uniform(3));
    CHECK(a != b);
}
