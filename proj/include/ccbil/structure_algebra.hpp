#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ccbil/finite_algebra.hpp"

namespace ccb {

// finite-dimensional F_q-algebra given by its structure constants, stored
// sparsely: row (a,b) lists the nonzero coordinates of e_a * e_b
struct StructureAlgebra {
    const SmallField* F = nullptr;
    int dim = 0;
    std::vector<std::vector<std::pair<uint16_t, uint32_t>>> tab;  // (a*dim+b) -> {(k, coeff)}
    std::optional<std::vector<uint32_t>> unity;
    std::optional<bool> is_field;  // set by constructors that know

    const std::vector<std::pair<uint16_t, uint32_t>>& row(int a, int b) const {
        return tab[static_cast<size_t>(a) * dim + b];
    }
    void set_entry(int a, int b, int k, uint32_t v);
    std::vector<uint32_t> product_column(int a, int b) const;  // dense e_a*e_b
    std::vector<uint32_t> mul_vec(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const;

    bool commutative() const;
    // detect a two-sided unity by solving the linear system; caches into unity
    std::optional<std::vector<uint32_t>> find_unity() const;
    // exhaustive zero-divisor scan; only valid when q^dim <= guard
    bool zero_divisor_free_exhaustive(uint64_t guard = (1u << 16)) const;
};

using AlgebraPtr = std::shared_ptr<const StructureAlgebra>;

// F_{q^m} on the power basis of the canonical generator
AlgebraPtr make_field_algebra(Workspace& ws, uint32_t q, uint32_t m);
// A_q(m,l) on the basis alpha^i t^j, index j*m+i
AlgebraPtr make_truncated_algebra(Workspace& ws, uint32_t q, uint32_t m, uint32_t l);
// direct product, block order as listed
AlgebraPtr make_product_algebra(const std::vector<AlgebraPtr>& parts);
// A tensor B, basis e_i tensor f_j with index i*dimB+j
AlgebraPtr make_tensor_algebra(const StructureAlgebra& A, const StructureAlgebra& B);
// dense constructor for hand-built algebras (tests, CLI input)
AlgebraPtr make_algebra_from_dense(const SmallField& F, int dim, const std::vector<uint32_t>& dense_cijk);

}  // namespace ccb
