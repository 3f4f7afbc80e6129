#include "ccbil/structure_algebra.hpp"

#include <stdexcept>

namespace ccb {

void StructureAlgebra::set_entry(int a, int b, int k, uint32_t v) {
    if (!v) return;
    tab[static_cast<size_t>(a) * dim + b].emplace_back(static_cast<uint16_t>(k), v);
}

std::vector<uint32_t> StructureAlgebra::product_column(int a, int b) const {
    std::vector<uint32_t> col(static_cast<size_t>(dim), 0);
    for (auto [k, v] : row(a, b)) col[k] = F->add(col[k], v);
    return col;
}

std::vector<uint32_t> StructureAlgebra::mul_vec(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const {
    std::vector<uint32_t> out(static_cast<size_t>(dim), 0);
    for (int a = 0; a < dim; ++a) {
        if (!x[static_cast<size_t>(a)]) continue;
        for (int b = 0; b < dim; ++b) {
            if (!y[static_cast<size_t>(b)]) continue;
            uint32_t s = F->mul(x[static_cast<size_t>(a)], y[static_cast<size_t>(b)]);
            for (auto [k, v] : row(a, b)) out[k] = F->add(out[k], F->mul(s, v));
        }
    }
    return out;
}

bool StructureAlgebra::commutative() const {
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            if (product_column(a, b) != product_column(b, a)) return false;
    return true;
}

std::optional<std::vector<uint32_t>> StructureAlgebra::find_unity() const {
    if (unity) return unity;
    // solve sum_a u_a (e_a e_b) = e_b for all b, and the right-sided version
    Mat A(2 * dim * dim, dim);
    std::vector<uint32_t> rhs(static_cast<size_t>(2 * dim * dim), 0);
    for (int b = 0; b < dim; ++b)
        for (int a = 0; a < dim; ++a) {
            for (auto [k, v] : row(a, b)) A.at(b * dim + k, a) = F->add(A.at(b * dim + k, a), v);
            for (auto [k, v] : row(b, a)) A.at(dim * dim + b * dim + k, a) = F->add(A.at(dim * dim + b * dim + k, a), v);
        }
    for (int b = 0; b < dim; ++b) {
        rhs[static_cast<size_t>(b * dim + b)] = 1;
        rhs[static_cast<size_t>(dim * dim + b * dim + b)] = 1;
    }
    auto sol = solve_linear(*F, A, rhs);
    if (!sol) return std::nullopt;
    return sol;
}

bool StructureAlgebra::zero_divisor_free_exhaustive(uint64_t guard) const {
    uint64_t qd = 1;
    for (int i = 0; i < dim; ++i) {
        qd *= F->q;
        if (qd > guard) throw std::invalid_argument("algebra too large for zero-divisor scan");
    }
    auto decode = [&](uint64_t n) {
        std::vector<uint32_t> v(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            v[static_cast<size_t>(i)] = static_cast<uint32_t>(n % F->q);
            n /= F->q;
        }
        return v;
    };
    for (uint64_t i = 1; i < qd; ++i) {
        auto x = decode(i);
        // multiplication by x must be injective
        Mat M(dim, dim);
        for (int b = 0; b < dim; ++b) {
            std::vector<uint32_t> eb(static_cast<size_t>(dim), 0);
            eb[static_cast<size_t>(b)] = 1;
            auto col = mul_vec(x, eb);
            for (int k = 0; k < dim; ++k) M.at(k, b) = col[static_cast<size_t>(k)];
        }
        if (rank(*F, M) < dim) return false;
    }
    return true;
}

AlgebraPtr make_field_algebra(Workspace& ws, uint32_t q, uint32_t m) {
    auto& E = ws.ext(q, m);
    auto A = std::make_shared<StructureAlgebra>();
    A->F = &ws.field(q);
    A->dim = static_cast<int>(m);
    A->tab.resize(static_cast<size_t>(m) * m);
    // powers of the generator: gen^i * gen^j = gen^(i+j) reduced
    std::vector<Elt> pows(2 * m);
    pows[0] = E.one();
    for (uint32_t i = 1; i < 2 * m; ++i) pows[i] = E.mul(pows[i - 1], E.gen());
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = 0; j < m; ++j) {
            const Elt& prod = pows[i + j];
            for (uint32_t k = 0; k < m; ++k)
                if (prod[k]) A->set_entry(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), prod[k]);
        }
    std::vector<uint32_t> u(static_cast<size_t>(m), 0);
    u[0] = 1;
    A->unity = u;
    A->is_field = true;
    return A;
}

AlgebraPtr make_truncated_algebra(Workspace& ws, uint32_t q, uint32_t m, uint32_t l) {
    auto& E = ws.ext(q, m);
    auto A = std::make_shared<StructureAlgebra>();
    A->F = &ws.field(q);
    int d = static_cast<int>(m * l);
    A->dim = d;
    A->tab.resize(static_cast<size_t>(d) * d);
    std::vector<Elt> pows(2 * m);
    pows[0] = E.one();
    for (uint32_t i = 1; i < 2 * m; ++i) pows[i] = E.mul(pows[i - 1], E.gen());
    for (uint32_t j1 = 0; j1 < l; ++j1)
        for (uint32_t j2 = 0; j2 < l; ++j2) {
            if (j1 + j2 >= l) continue;  // t^l = 0
            for (uint32_t i1 = 0; i1 < m; ++i1)
                for (uint32_t i2 = 0; i2 < m; ++i2) {
                    const Elt& prod = pows[i1 + i2];
                    int a = static_cast<int>(j1 * m + i1), b = static_cast<int>(j2 * m + i2);
                    for (uint32_t k = 0; k < m; ++k)
                        if (prod[k]) A->set_entry(a, b, static_cast<int>((j1 + j2) * m + k), prod[k]);
                }
        }
    std::vector<uint32_t> u(static_cast<size_t>(d), 0);
    u[0] = 1;
    A->unity = u;
    A->is_field = (l == 1);
    return A;
}

AlgebraPtr make_product_algebra(const std::vector<AlgebraPtr>& parts) {
    if (parts.empty()) throw std::invalid_argument("empty product");
    auto A = std::make_shared<StructureAlgebra>();
    A->F = parts[0]->F;
    int total = 0;
    for (auto& p : parts) total += p->dim;
    A->dim = total;
    A->tab.resize(static_cast<size_t>(total) * total);
    int off = 0;
    bool have_unity = true;
    std::vector<uint32_t> u(static_cast<size_t>(total), 0);
    for (auto& p : parts) {
        if (!(*p->F == *A->F)) throw std::invalid_argument("mixed base fields in product");
        for (int a = 0; a < p->dim; ++a)
            for (int b = 0; b < p->dim; ++b)
                for (auto [k, v] : p->row(a, b)) A->set_entry(off + a, off + b, off + k, v);
        if (p->unity)
            for (int i = 0; i < p->dim; ++i) u[static_cast<size_t>(off + i)] = (*p->unity)[static_cast<size_t>(i)];
        else
            have_unity = false;
        off += p->dim;
    }
    if (have_unity) A->unity = u;
    A->is_field = (parts.size() == 1 && parts[0]->is_field.value_or(false));
    return A;
}

AlgebraPtr make_tensor_algebra(const StructureAlgebra& A, const StructureAlgebra& B) {
    if (!(*A.F == *B.F)) throw std::invalid_argument("mixed base fields in tensor product");
    auto T = std::make_shared<StructureAlgebra>();
    T->F = A.F;
    T->dim = A.dim * B.dim;
    T->tab.resize(static_cast<size_t>(T->dim) * T->dim);
    for (int a1 = 0; a1 < A.dim; ++a1)
        for (int b1 = 0; b1 < B.dim; ++b1)
            for (int a2 = 0; a2 < A.dim; ++a2)
                for (int b2 = 0; b2 < B.dim; ++b2) {
                    int x = a1 * B.dim + b1, y = a2 * B.dim + b2;
                    for (auto [ka, va] : A.row(a1, a2))
                        for (auto [kb, vb] : B.row(b1, b2))
                            T->set_entry(x, y, ka * B.dim + kb, A.F->mul(va, vb));
                }
    if (A.unity && B.unity) {
        std::vector<uint32_t> u(static_cast<size_t>(T->dim), 0);
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < B.dim; ++j)
                u[static_cast<size_t>(i * B.dim + j)] = A.F->mul((*A.unity)[static_cast<size_t>(i)], (*B.unity)[static_cast<size_t>(j)]);
        T->unity = u;
    }
    return T;
}

AlgebraPtr make_algebra_from_dense(const SmallField& F, int dim, const std::vector<uint32_t>& dense) {
    if (dense.size() != static_cast<size_t>(dim) * dim * dim) throw std::invalid_argument("bad tensor size");
    auto A = std::make_shared<StructureAlgebra>();
    A->F = &F;
    A->dim = dim;
    A->tab.resize(static_cast<size_t>(dim) * dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int k = 0; k < dim; ++k) {
                uint32_t v = dense[(static_cast<size_t>(a) * dim + b) * dim + k];
                if (v) A->set_entry(a, b, k, v);
            }
    auto u = A->find_unity();
    if (u) A->unity = u;
    return A;
}

}  // namespace ccb
