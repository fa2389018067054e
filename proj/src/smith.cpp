#include "indexdensity/smith.hpp"

#include <utility>

namespace indexdensity {

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B, std::size_t inner, std::size_t cols) {
    IntMatrix C(A.size(), std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

namespace {

// Elementary operations on D mirrored into the transforms:
//   row ops act on U from the left, column ops on V from the right and,
//   inverted, on V_inv from the left.
struct Reducer {
    IntMatrix D, U, V, V_inv;
    std::size_t rows, cols;

    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(D[a], D[b]);
        std::swap(U[a], U[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (auto& r : D) std::swap(r[a], r[b]);
        for (auto& r : V) std::swap(r[a], r[b]);
        std::swap(V_inv[a], V_inv[b]);
    }
    // row_dst -= q * row_src
    void row_axpy(std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t j = 0; j < cols; ++j) D[dst][j] -= q * D[src][j];
        for (std::size_t j = 0; j < rows; ++j) U[dst][j] -= q * U[src][j];
    }
    // col_dst -= q * col_src
    void col_axpy(std::size_t dst, std::size_t src, const BigInt& q) {
        for (std::size_t i = 0; i < rows; ++i) D[i][dst] -= q * D[i][src];
        for (std::size_t i = 0; i < cols; ++i) V[i][dst] -= q * V[i][src];
        for (std::size_t j = 0; j < cols; ++j) V_inv[src][j] += q * V_inv[dst][j];
    }
    void negate_row(std::size_t r) {
        for (auto& x : D[r]) x = -x;
        for (auto& x : U[r]) x = -x;
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols) {
    const std::size_t rows = A.size();
    Reducer R{A, identity_matrix(rows), identity_matrix(cols), identity_matrix(cols), rows, cols};

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero |entry| in the trailing block
        bool found = false;
        std::size_t pi = t, pj = t;
        BigInt best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (R.D[i][j] == 0) continue;
                if (!found || abs(R.D[i][j]) < best) {
                    best = abs(R.D[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        R.swap_rows(t, pi);
        R.swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (R.D[i][t] == 0) continue;
                R.row_axpy(i, t, R.D[i][t] / R.D[t][t]);
                if (R.D[i][t] != 0) {
                    R.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (R.D[t][j] == 0) continue;
                R.col_axpy(j, t, R.D[t][j] / R.D[t][t]);
                if (R.D[t][j] != 0) {
                    R.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility d_t | every entry of the trailing block
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (R.D[i][j] % R.D[t][t] != 0) {
                        R.row_axpy(t, i, BigInt(-1));
                        clean = false;
                        break;
                    }
                }
        }
        if (R.D[t][t] < 0) R.negate_row(t);
        ++t;
    }

    SmithForm out;
    out.rows = rows;
    out.cols = cols;
    for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(R.D[i][i]);
    out.U = std::move(R.U);
    out.V = std::move(R.V);
    out.V_inv = std::move(R.V_inv);
    return out;
}

}  // namespace indexdensity
