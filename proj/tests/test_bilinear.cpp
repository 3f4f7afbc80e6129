#include "ccbil/bilinear.hpp"
#include "ccbil/rank_search.hpp"
#include "doctest.h"

using namespace ccb;

namespace {

// the generic length-d^2 decomposition sum (e_i e_j) (x) e_i* (x) e_j*
BilinearAlgorithm full_expansion(AlgebraPtr A) {
    int d = A->dim;
    BilinearAlgorithm alg;
    alg.A = A;
    alg.phi = Mat(d * d, d);
    alg.psi = Mat(d * d, d);
    alg.w = Mat(d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            alg.phi.at(i * d + j, i) = 1;
            alg.psi.at(i * d + j, j) = 1;
            auto col = A->product_column(i, j);
            for (int k = 0; k < d; ++k) alg.w.at(k, i * d + j) = col[static_cast<size_t>(k)];
        }
    return alg;
}

AlgebraPtr remark_algebra(Workspace& ws) {
    // e1e2 = e2e1 = e1, e1^2 = e2^2 = 0 over F_2
    auto& F = ws.field(2);
    std::vector<uint32_t> dense(8, 0);
    dense[(0 * 2 + 1) * 2 + 0] = 1;  // e1*e2 = e1
    dense[(1 * 2 + 0) * 2 + 0] = 1;  // e2*e1 = e1
    return make_algebra_from_dense(F, 2, dense);
}

BilinearAlgorithm f8_fixture(Workspace& ws) {
    BilinearAlgorithm a;
    a.A = make_field_algebra(ws, 2, 3);
    uint32_t phi[6][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    uint32_t w[3][6] = {{1, 1, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 1}, {1, 1, 0, 0, 1, 0}};
    a.phi = Mat(6, 3);
    a.psi = Mat(6, 3);
    a.w = Mat(3, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) {
            a.phi.at(i, j) = phi[i][j];
            a.psi.at(i, j) = phi[i][j];
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) a.w.at(i, j) = w[i][j];
    a.symmetric = true;
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("bilinear_core");

TEST_CASE("verify accepts the F8 fixture and rejects tampering") {
    Workspace ws;
    auto alg = f8_fixture(ws);
    CHECK(!verify(alg));

    SUBCASE("zeroed w fails at the first basis pair") {
        BilinearAlgorithm bad = alg;
        bad.w = Mat(3, 6);
        auto fail = verify(bad);
        REQUIRE(fail);
        CHECK(*fail == std::make_pair(0, 0));
    }
    SUBCASE("single flipped entry fails") {
        BilinearAlgorithm bad = alg;
        bad.w.at(2, 5) ^= 1;
        CHECK(verify(bad));
    }
    SUBCASE("basis-pair soundness implies full bilinearity on random inputs") {
        const auto& F = alg.field();
        uint64_t s = 99;
        for (int it = 0; it < 200; ++it) {
            std::vector<uint32_t> x(3), y(3);
            for (auto& v : x) {
                s = s * 6364136223846793005ULL + 1442695040888963407ULL;
                v = (s >> 40) & 1;
            }
            for (auto& v : y) {
                s = s * 6364136223846793005ULL + 1442695040888963407ULL;
                v = (s >> 40) & 1;
            }
            auto want = alg.A->mul_vec(x, y);
            std::vector<uint32_t> got(3, 0);
            for (int i = 0; i < 6; ++i) {
                uint32_t px = 0, py = 0;
                for (int j = 0; j < 3; ++j) {
                    px = F.add(px, F.mul(alg.phi.at(i, j), x[static_cast<size_t>(j)]));
                    py = F.add(py, F.mul(alg.psi.at(i, j), y[static_cast<size_t>(j)]));
                }
                uint32_t c = F.mul(px, py);
                for (int k = 0; k < 3; ++k) got[static_cast<size_t>(k)] = F.add(got[static_cast<size_t>(k)], F.mul(c, alg.w.at(k, i)));
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("symmetrize") {
    Workspace ws;
    SUBCASE("already-symmetric input keeps its length") {
        auto A = make_field_algebra(ws, 7, 2);
        auto alg = naive_symmetric(A);
        auto sym = symmetrize(alg);
        CHECK(!verify(sym));
        CHECK(sym.length() == alg.length());
        CHECK(sym.symmetric);
    }
    SUBCASE("asymmetric input at most doubles") {
        auto A = make_truncated_algebra(ws, 7, 2, 2);
        auto alg = full_expansion(A);
        REQUIRE(!verify(alg));
        auto sym = symmetrize(alg);
        CHECK(!verify(sym));
        CHECK(sym.length() <= 2 * alg.length());
        CHECK(sym.symmetric);
    }
    SUBCASE("characteristic 2 rejected") {
        auto A = make_field_algebra(ws, 2, 2);
        CHECK_THROWS(symmetrize(full_expansion(A)));
    }
    SUBCASE("non-commutative targets rejected") {
        auto& F = ws.field(3);
        std::vector<uint32_t> dense(8, 0);
        dense[(0 * 2 + 1) * 2 + 0] = 1;  // e1*e2 = e1, but e2*e1 = 0
        auto A = make_algebra_from_dense(F, 2, dense);
        REQUIRE(!A->commutative());
        CHECK_THROWS(symmetrize(full_expansion(A)));
    }
}

TEST_CASE("naive_symmetric") {
    Workspace ws;
    SUBCASE("d=1") {
        auto A = make_field_algebra(ws, 5, 1);
        auto alg = naive_symmetric(A);
        CHECK(alg.length() == 1);
        CHECK(!verify(alg));
    }
    SUBCASE("F4 over F2 has length 3") {
        auto A = make_field_algebra(ws, 2, 2);
        auto alg = naive_symmetric(A);
        CHECK(alg.length() == 3);
        CHECK(!verify(alg));
        CHECK(alg.symmetric);
    }
    SUBCASE("A_2(1,3) has length 6") {
        auto A = make_truncated_algebra(ws, 2, 1, 3);
        auto alg = naive_symmetric(A);
        CHECK(alg.length() == 6);
        CHECK(!verify(alg));
    }
}

TEST_CASE("direct_sum") {
    Workspace ws;
    auto A1 = make_truncated_algebra(ws, 2, 1, 1);
    auto A2 = make_field_algebra(ws, 2, 2);
    auto a1 = naive_symmetric(A1), a2 = naive_symmetric(A2);
    auto sum = direct_sum(a1, a2);
    CHECK(sum.length() == 4);
    CHECK(sum.dim() == 3);
    CHECK(!verify(sum));
    CHECK(sum.symmetric);

    SUBCASE("seven copies of F_7") {
        auto A = make_field_algebra(ws, 7, 1);
        auto alg = naive_symmetric(A);
        BilinearAlgorithm acc = alg;
        for (int i = 1; i < 7; ++i) acc = direct_sum(acc, alg);
        CHECK(acc.length() == 7);
        CHECK(acc.dim() == 7);
        CHECK(!verify(acc));
    }
    SUBCASE("sum with the zero algebra is the same algorithm") {
        auto Z = make_algebra_from_dense(ws.field(2), 0, {});
        BilinearAlgorithm z;
        z.A = Z;
        z.phi = Mat(0, 0);
        z.psi = Mat(0, 0);
        z.w = Mat(0, 0);
        z.symmetric = true;
        auto s = direct_sum(a1, z);
        CHECK(s.length() == a1.length());
        CHECK(s.dim() == a1.dim());
        CHECK(!verify(s));
    }
}

TEST_CASE("tensor_product") {
    Workspace ws;
    auto A = make_field_algebra(ws, 2, 2);         // A_2(2,1)
    auto B = make_truncated_algebra(ws, 2, 1, 2);  // A_2(1,2)
    auto a = naive_symmetric(A), b = naive_symmetric(B);
    auto t = tensor_product(a, b);
    CHECK(t.length() == 9);
    CHECK(t.dim() == 4);
    CHECK(!verify(t));
    CHECK(t.symmetric);  // symmetric (x) symmetric stays symmetric

    SUBCASE("tensor with the base field is a relabeling") {
        auto K = make_field_algebra(ws, 2, 1);
        auto k = naive_symmetric(K);
        auto tk = tensor_product(a, k);
        CHECK(tk.length() == a.length());
        CHECK(tk.dim() == a.dim());
        CHECK(!verify(tk));
    }
}

TEST_CASE("restrict along quotient and subalgebra") {
    Workspace ws;
    auto& F = ws.field(2);
    SUBCASE("quotient A_q(m,l) -> A_q(m,1) by t -> 0") {
        auto A = make_truncated_algebra(ws, 2, 2, 2);
        auto Afield = make_field_algebra(ws, 2, 2);
        auto alg = naive_symmetric(A);
        Mat M(2, 4);
        M.at(0, 0) = 1;
        M.at(1, 1) = 1;
        auto res = restrict_algorithm(alg, Afield, M, RestrictKind::quotient);
        CHECK(res.length() == alg.length());
        CHECK(!verify(res));
    }
    SUBCASE("subfield F4 inside F16") {
        auto A16 = make_field_algebra(ws, 2, 4);
        auto A4 = make_field_algebra(ws, 2, 2);
        ExtField E4(F, 2), E16(F, 4);
        auto emb = make_embedding(ws, E4, E16);
        Mat M(4, 2);
        for (int j = 0; j < 2; ++j) {
            Elt img = emb.gen_powers[static_cast<size_t>(j)];
            for (int i = 0; i < 4; ++i) M.at(i, j) = img[static_cast<size_t>(i)];
        }
        auto alg = naive_symmetric(A16);
        auto res = restrict_algorithm(alg, A4, M, RestrictKind::subalgebra);
        CHECK(res.length() == alg.length());
        CHECK(!verify(res));
    }
    SUBCASE("identity map keeps everything") {
        auto A = make_field_algebra(ws, 3, 2);
        auto alg = naive_symmetric(A);
        auto res = restrict_algorithm(alg, A, Mat::identity(2), RestrictKind::subalgebra);
        CHECK(res.phi == alg.phi);
        CHECK(res.w == alg.w);
    }
    SUBCASE("non-morphism rejected") {
        auto A = make_field_algebra(ws, 2, 2);
        auto alg = naive_symmetric(A);
        Mat M(2, 2);
        M.at(0, 1) = 1;
        M.at(1, 0) = 1;
        CHECK_THROWS(restrict_algorithm(alg, A, M, RestrictKind::subalgebra));
    }
}

TEST_CASE("concatenation") {
    Workspace ws;
    auto& F2 = ws.field(2);
    SUBCASE("identity outer leaves the inner algorithm unchanged") {
        auto K = make_field_algebra(ws, 2, 1);
        BilinearAlgorithm outer = naive_symmetric(K);
        auto Ainner = make_field_algebra(ws, 2, 2);
        auto inner = naive_symmetric(Ainner);
        ExtField L1(F2, 1);
        auto out = concatenate(ws, outer, inner, L1);
        CHECK(out.length() == inner.length());
        CHECK(out.dim() == inner.dim());
        CHECK(!verify(out));
    }
    SUBCASE("base/target mismatch rejected") {
        auto K = make_field_algebra(ws, 2, 2);       // target F_4, dim 2
        auto inner = naive_symmetric(make_field_algebra(ws, 8, 1));  // base F_8 != F_4
        ExtField L(F2, 2);
        CHECK_THROWS(concatenate(ws, naive_symmetric(K), inner, L));
    }
    SUBCASE("F4-inner algorithm concatenated down to F2 and canonicalized") {
        auto outerA = make_field_algebra(ws, 2, 2);
        auto outer = brute_force_rank(outerA, 3, false).witness.value();
        auto innerA = make_truncated_algebra(ws, 4, 2, 2);
        auto inner = naive_symmetric(innerA);
        ExtField L(F2, 2);
        auto cat = concatenate(ws, outer, inner, L);
        CHECK(cat.length() == outer.length() * inner.length());
        CHECK(cat.dim() == 8);
        CHECK(!verify(cat));
        auto canon = canonicalize_truncated(ws, cat, 2, 4, 2, 2 * 2);
        CHECK(canon.dim() == 8);
        CHECK(!verify(canon));
        CHECK(canon.A->tab == make_truncated_algebra(ws, 2, 4, 2)->tab);
    }
}

TEST_CASE("brute force rank") {
    Workspace ws;
    SUBCASE("remark algebra: rank 2, symmetric rank 3") {
        auto A = remark_algebra(ws);
        auto r = brute_force_rank(A, 6, false);
        REQUIRE(r.rank);
        CHECK(*r.rank == 2);
        CHECK(!verify(*r.witness));
        auto rs = brute_force_rank(A, 6, true);
        REQUIRE(rs.rank);
        CHECK(*rs.rank == 3);
        CHECK(rs.witness->symmetric);
        CHECK(!verify(*rs.witness));
    }
    SUBCASE("F4 over F2 has rank 3") {
        auto A = make_field_algebra(ws, 2, 2);
        auto r = brute_force_rank(A, 5, false);
        REQUIRE(r.rank);
        CHECK(*r.rank == 3);
        CHECK(lower_bounds(*A) == 3);
    }
    SUBCASE("d=1 has rank 1") {
        auto A = make_field_algebra(ws, 3, 1);
        auto r = brute_force_rank(A, 3, false);
        CHECK(*r.rank == 1);
    }
    SUBCASE("A_2(1,3) has rank 5") {
        auto A = make_truncated_algebra(ws, 2, 1, 3);
        auto r = brute_force_rank(A, 6, false);
        REQUIRE(r.rank);
        CHECK(*r.rank == 5);
        CHECK(!verify(*r.witness));
    }
    SUBCASE("guard rejects big algebras") {
        auto A = make_field_algebra(ws, 16, 4);
        CHECK_THROWS(brute_force_rank(A, 3, false));
    }
}

TEST_CASE("lower bounds") {
    Workspace ws;
    SUBCASE("fields get 2m-1") {
        CHECK(lower_bounds(*make_field_algebra(ws, 2, 3)) == 5);
        CHECK(lower_bounds(*make_field_algebra(ws, 3, 2)) == 3);
    }
    SUBCASE("truncated algebras with l >= 2 get ml") {
        CHECK(lower_bounds(*make_truncated_algebra(ws, 2, 2, 2)) == 4);
        CHECK(lower_bounds(*make_truncated_algebra(ws, 3, 1, 2)) == 2);
    }
    SUBCASE("the non-unital remark algebra claims nothing") {
        CHECK(lower_bounds(*remark_algebra(ws)) == 0);
    }
}

TEST_CASE("codes and mutual intersection") {
    Workspace ws;
    SUBCASE("algorithms for fields give mutually intersecting codes") {
        auto alg = f8_fixture(ws);
        auto [cphi, cpsi] = codes(alg);
        CHECK(cphi.nr == 3);
        CHECK(mutually_intersecting(alg.field(), cphi, cpsi));
    }
    SUBCASE("two copies of the length-3 repetition code intersect") {
        auto& F = ws.field(2);
        Mat G(1, 3);
        G.at(0, 0) = G.at(0, 1) = G.at(0, 2) = 1;
        CHECK(mutually_intersecting(F, G, G));
    }
    SUBCASE("exact rank witnesses for fields also intersect") {
        auto r = brute_force_rank(make_field_algebra(ws, 3, 2), 4, false);
        REQUIRE(r.witness);
        auto [cphi, cpsi] = codes(*r.witness);
        CHECK(mutually_intersecting(r.witness->field(), cphi, cpsi));
    }
    SUBCASE("zero rows are ignored: inserting a dead term keeps codes intersecting") {
        Workspace w2;
        auto alg = f8_fixture(w2);
        BilinearAlgorithm padded = alg;
        padded.phi = Mat(7, 3);
        padded.psi = Mat(7, 3);
        padded.w = Mat(3, 7);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j) {
                padded.phi.at(i, j) = alg.phi.at(i, j);
                padded.psi.at(i, j) = alg.psi.at(i, j);
                padded.w.at(j, i) = alg.w.at(j, i);
            }
        CHECK(!verify(padded));
        auto [cphi, cpsi] = codes(padded);
        CHECK(mutually_intersecting(padded.field(), cphi, cpsi));
    }
    SUBCASE("disjoint supports detected") {
        auto& F = ws.field(2);
        Mat G1(1, 2), G2(1, 2);
        G1.at(0, 0) = 1;
        G2.at(0, 1) = 1;
        CHECK(!mutually_intersecting(F, G1, G2));
    }
}

TEST_CASE("rank bounds agree on fixtures") {
    Workspace ws;
    for (auto [q, m, l] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{
             {2, 1, 2}, {2, 2, 1}, {3, 1, 2}, {2, 1, 3}, {3, 2, 1}}) {
        auto A = make_truncated_algebra(ws, q, m, l);
        auto naive = naive_symmetric(A);
        auto r = brute_force_rank(A, naive.length(), false);
        REQUIRE(r.rank);
        CHECK(*r.rank >= lower_bounds(*A));
        CHECK(*r.rank <= naive.length());
    }
}

TEST_CASE("S3 counterexample witness") {
    Workspace ws;
    auto [x, y] = s3_counterexample_witness(ws);
    ExtField& F4 = ws.ext(2, 2);
    Elt a = F4.mul(F4.mul(x, x), y), b = F4.mul(x, F4.mul(y, y));
    CHECK(!(a == b));
    int found = 0;
    for (uint64_t i = 0; i < 4; ++i)
        for (uint64_t j = 0; j < 4; ++j) {
            Elt xx = F4.from_index(i), yy = F4.from_index(j);
            if (!(F4.mul(F4.mul(xx, xx), yy) == F4.mul(xx, F4.mul(yy, yy)))) {
                ++found;
                CHECK(!(xx == yy));
            }
        }
    CHECK(found >= 1);
}

TEST_SUITE_END();
