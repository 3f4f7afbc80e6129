#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccbil/smallfield.hpp"

namespace ccb {

// dense matrix over a SmallField, row-major
struct Mat {
    int nr = 0, nc = 0;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}
    uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
    uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }
    static Mat identity(int n);
};

bool operator==(const Mat& x, const Mat& y);

Mat m_mul(const SmallField& F, const Mat& A, const Mat& B);
Mat m_transpose(const Mat& A);
std::vector<uint32_t> m_apply(const SmallField& F, const Mat& A, const std::vector<uint32_t>& x);

// reduced row echelon form in place; returns pivot column indices
std::vector<int> rref(const SmallField& F, Mat& A);
int rank(const SmallField& F, Mat A);

// solve A x = b; nullopt if inconsistent
std::optional<std::vector<uint32_t>> solve_linear(const SmallField& F, const Mat& A, const std::vector<uint32_t>& b);
// basis of the kernel of A, returned as columns of a (nc x k) matrix
Mat kernel_basis(const SmallField& F, const Mat& A);
// R with A R = I (requires full row rank); throws with the rank deficit otherwise
Mat right_inverse(const SmallField& F, const Mat& A);
// L with L A = I (requires full column rank)
Mat left_inverse(const SmallField& F, const Mat& A);

}  // namespace ccb
