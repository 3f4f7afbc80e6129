#pragma once

#include <optional>
#include <utility>

#include "ccbil/structure_algebra.hpp"

namespace ccb {

// a length-n decomposition x*y = sum_i phi_i(x) psi_i(y) w_i of the
// multiplication tensor of A; phi/psi are n x dim, w is dim x n
struct BilinearAlgorithm {
    AlgebraPtr A;
    Mat phi, psi, w;
    bool symmetric = false;

    int length() const { return phi.nr; }
    int dim() const { return A->dim; }
    const SmallField& field() const { return *A->F; }
};

// exhaustive check on all basis pairs; nullopt means verified, otherwise the
// first offending pair (a, b), 0-based
std::optional<std::pair<int, int>> verify(const BilinearAlgorithm& alg);

// char != 2, commutative target: split each term into (phi+psi) and (phi-psi)
// squares; vanishing terms are dropped
BilinearAlgorithm symmetrize(const BilinearAlgorithm& alg);

// the d(d+1)/2 symmetric decomposition from the generic rearrangement
BilinearAlgorithm naive_symmetric(AlgebraPtr A);

// concatenation along K -> L = F_{q^d} -> A: outer multiplies in L over K,
// inner multiplies in A over L. The result is an algorithm over K for the
// restriction of scalars of inner.A, basis e_s (x) l_t at index s*d + t.
BilinearAlgorithm concatenate(Workspace& ws, const BilinearAlgorithm& outer, const BilinearAlgorithm& inner,
                              const ExtField& L_ext);

BilinearAlgorithm direct_sum(const BilinearAlgorithm& a, const BilinearAlgorithm& b);
BilinearAlgorithm tensor_product(const BilinearAlgorithm& a, const BilinearAlgorithm& b);

// transfer along an injective morphism M : A' -> A (subalgebra) or a
// surjective morphism M : A -> A' (quotient); morphism property is checked
enum class RestrictKind { subalgebra, quotient };
BilinearAlgorithm restrict_algorithm(const BilinearAlgorithm& alg, AlgebraPtr target, const Mat& M, RestrictKind kind);

// change of basis along an algebra isomorphism M : A' -> A
BilinearAlgorithm change_basis(const BilinearAlgorithm& alg, AlgebraPtr target, const Mat& M);

// generator matrices (k x n, full rank rows) of the two evaluation codes
std::pair<Mat, Mat> codes(const BilinearAlgorithm& alg);
// every pair of nonzero codewords has intersecting supports; enumeration
// guard q^k <= 2^16
bool mutually_intersecting(const SmallField& F, const Mat& gen_phi, const Mat& gen_psi);

// dim A if unital, 2 dim - 1 if zero-divisor-free, else 0
long lower_bounds(const StructureAlgebra& A);

// (x, y) in F_4 with x^2 y != x y^2
std::pair<Elt, Elt> s3_counterexample_witness(Workspace& ws);

// the canonical-basis isomorphism helper: finds an algebra isomorphism from
// canonical A_q(m,l) onto alg.A (a restriction-of-scalars algebra whose
// t element sits at basis index t_col), and rewrites alg on that basis
BilinearAlgorithm canonicalize_truncated(Workspace& ws, const BilinearAlgorithm& alg, uint32_t q, uint32_t m,
                                         uint32_t l, int t_col);

}  // namespace ccb
