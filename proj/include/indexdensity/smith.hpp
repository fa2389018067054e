#pragma once

#include <cstddef>
#include <vector>

#include "indexdensity/numeric.hpp"

namespace indexdensity {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// U * A * V = diag(d_1, ..., d_rank, 0, ...), U and V unimodular,
/// d_i > 0 and d_i | d_{i+1}. V_inv is carried alongside so that the rows of
/// V^{-1} can serve as an adapted basis of the column lattice.
struct SmithForm {
    IntMatrix U;
    IntMatrix V;
    IntMatrix V_inv;
    std::vector<BigInt> diagonal;  // nonzero invariant factors only
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t rank() const { return diagonal.size(); }
};

SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& A, const IntMatrix& B, std::size_t inner, std::size_t cols);

}  // namespace indexdensity
