#include "ccbil/linalg.hpp"

#include <stdexcept>
#include <string>

namespace ccb {

Mat Mat::identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

bool operator==(const Mat& x, const Mat& y) { return x.nr == y.nr && x.nc == y.nc && x.a == y.a; }

Mat m_mul(const SmallField& F, const Mat& A, const Mat& B) {
    if (A.nc != B.nr) throw std::invalid_argument("matrix dimension mismatch");
    Mat C(A.nr, B.nc);
    for (int i = 0; i < A.nr; ++i)
        for (int k = 0; k < A.nc; ++k) {
            uint32_t v = A.at(i, k);
            if (!v) continue;
            for (int j = 0; j < B.nc; ++j) {
                uint32_t w = B.at(k, j);
                if (w) C.at(i, j) = F.add(C.at(i, j), F.mul(v, w));
            }
        }
    return C;
}

Mat m_transpose(const Mat& A) {
    Mat T(A.nc, A.nr);
    for (int i = 0; i < A.nr; ++i)
        for (int j = 0; j < A.nc; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

std::vector<uint32_t> m_apply(const SmallField& F, const Mat& A, const std::vector<uint32_t>& x) {
    if (static_cast<int>(x.size()) != A.nc) throw std::invalid_argument("vector dimension mismatch");
    std::vector<uint32_t> y(static_cast<size_t>(A.nr), 0);
    for (int i = 0; i < A.nr; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < A.nc; ++j) {
            uint32_t v = A.at(i, j);
            if (v && x[static_cast<size_t>(j)]) acc = F.add(acc, F.mul(v, x[static_cast<size_t>(j)]));
        }
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

std::vector<int> rref(const SmallField& F, Mat& A) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < A.nc && row < A.nr; ++col) {
        int sel = -1;
        for (int i = row; i < A.nr; ++i)
            if (A.at(i, col)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < A.nc; ++j) std::swap(A.at(sel, j), A.at(row, j));
        uint32_t pinv = F.inv(A.at(row, col));
        for (int j = 0; j < A.nc; ++j) A.at(row, j) = F.mul(A.at(row, j), pinv);
        for (int i = 0; i < A.nr; ++i) {
            if (i == row) continue;
            uint32_t f = A.at(i, col);
            if (!f) continue;
            for (int j = 0; j < A.nc; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const SmallField& F, Mat A) { return static_cast<int>(rref(F, A).size()); }

std::optional<std::vector<uint32_t>> solve_linear(const SmallField& F, const Mat& A, const std::vector<uint32_t>& b) {
    if (static_cast<int>(b.size()) != A.nr) throw std::invalid_argument("rhs dimension mismatch");
    Mat aug(A.nr, A.nc + 1);
    for (int i = 0; i < A.nr; ++i) {
        for (int j = 0; j < A.nc; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.nc) = b[static_cast<size_t>(i)];
    }
    auto pivots = rref(F, aug);
    for (size_t k = 0; k < pivots.size(); ++k)
        if (pivots[k] == A.nc) return std::nullopt;  // inconsistent
    std::vector<uint32_t> x(static_cast<size_t>(A.nc), 0);
    for (size_t k = 0; k < pivots.size(); ++k) x[static_cast<size_t>(pivots[k])] = aug.at(static_cast<int>(k), A.nc);
    return x;
}

Mat kernel_basis(const SmallField& F, const Mat& A) {
    Mat R = A;
    auto pivots = rref(F, R);
    std::vector<bool> is_pivot(static_cast<size_t>(A.nc), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.nc; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    Mat K(A.nc, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        K.at(fc, static_cast<int>(k)) = 1;
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            K.at(pivots[pr], static_cast<int>(k)) = F.neg(R.at(static_cast<int>(pr), fc));
    }
    return K;
}

Mat right_inverse(const SmallField& F, const Mat& A) {
    // single elimination of [A | I]; rank(A) = nr puts all pivots in the A part
    Mat aug(A.nr, A.nc + A.nr);
    for (int i = 0; i < A.nr; ++i) {
        for (int j = 0; j < A.nc; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.nc + i) = 1;
    }
    auto pivots = rref(F, aug);
    int rk = 0;
    for (int c : pivots)
        if (c < A.nc) ++rk;
    if (rk != A.nr)
        throw std::invalid_argument("right_inverse requires surjectivity; rank deficit " + std::to_string(A.nr - rk));
    Mat R(A.nc, A.nr);
    for (size_t k = 0; k < pivots.size(); ++k)
        for (int col = 0; col < A.nr; ++col) R.at(pivots[k], col) = aug.at(static_cast<int>(k), A.nc + col);
    return R;
}

Mat left_inverse(const SmallField& F, const Mat& A) {
    int rk = rank(F, A);
    if (rk != A.nc)
        throw std::invalid_argument("left_inverse requires injectivity; rank deficit " + std::to_string(A.nc - rk));
    Mat Rt = right_inverse(F, m_transpose(A));
    return m_transpose(Rt);
}

}  // namespace ccb
