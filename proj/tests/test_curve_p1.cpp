#include "ccbil/curve_p1.hpp"
#include "ccbil/finite_algebra.hpp"
#include "doctest.h"

using namespace ccb;

TEST_SUITE_BEGIN("curve_p1");

TEST_CASE("rr_basis closed forms") {
    SmallField F2(2, 1);
    SUBCASE("k * infinity gives polynomials of degree <= k") {
        P1Divisor D;
        D.add(P1Point::infinity(), 3);
        auto b = rr_basis_p1(F2, D);
        REQUIRE(b.size() == 4);
        for (int j = 0; j < 4; ++j) {
            CHECK(b[static_cast<size_t>(j)].num.deg() == j);
            CHECK(b[static_cast<size_t>(j)].den == Poly::one());
        }
    }
    SUBCASE("negative degree is empty") {
        P1Divisor D;
        D.add(P1Point::infinity(), -1);
        CHECK(rr_basis_p1(F2, D).empty());
        CHECK(l_dim_p1(D) == 0);
    }
    SUBCASE("D = 2*(x^2+x+1) - 3*inf has dimension 2") {
        P1Divisor D;
        D.add(P1Point::finite(Poly{{1, 1, 1}}), 2);
        D.add(P1Point::infinity(), -3);
        CHECK(D.deg() == 1);
        auto b = rr_basis_p1(F2, D);
        REQUIRE(b.size() == 2);
        for (auto& f : b) {
            for (auto& [P, m] : D.mult) CHECK(p1_valuation(F2, f, P) >= -m);
        }
    }
}

TEST_CASE("riemann-roch dimension for 500 random divisors") {
    uint64_t s = 2024;
    auto rnd = [&](uint32_t mod) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<uint32_t>((s >> 33) % mod);
    };
    for (uint32_t q : {2u, 3u, 4u, 5u}) {
        SmallField F(factor_prime_power(q).first, factor_prime_power(q).second);
        for (int it = 0; it < 125; ++it) {
            P1Divisor D;
            int terms = 1 + static_cast<int>(rnd(3));
            for (int t = 0; t < terms; ++t) {
                int deg = 1 + static_cast<int>(rnd(3));
                auto pts = p1_points_of_degree(F, deg, std::min<long>(irreducible_count(F, deg), 3));
                if (pts.empty()) continue;
                auto P = pts[rnd(static_cast<uint32_t>(pts.size()))];
                D.add(P, static_cast<int>(rnd(7)) - 3);
            }
            if (rnd(2)) D.add(P1Point::infinity(), static_cast<int>(rnd(7)) - 3);
            auto b = rr_basis_p1(F, D);
            CHECK(static_cast<int>(b.size()) == l_dim_p1(D));
            CHECK(l_dim_p1(D) == std::max(D.deg() + 1, 0));
        }
    }
}

TEST_CASE("rr_basis nests along divisor inclusion") {
    SmallField F3(3, 1);
    P1Divisor D;
    D.add(P1Point::finite(Poly{{1, 0, 1}}), 1);
    D.add(P1Point::infinity(), 1);
    P1Divisor D2 = D;
    D2.add(P1Point::finite(Poly{{2, 1}}), 1);
    auto b1 = rr_basis_p1(F3, D);
    auto b2 = rr_basis_p1(F3, D2);
    CHECK(b1.size() < b2.size());
    // every element of L(D) must satisfy the constraints of D2 as well
    for (auto& f : b1)
        for (auto& [P, m] : D2.mult) CHECK(p1_valuation(F3, f, P) >= -m);
}

TEST_CASE("eval_thickened") {
    Workspace ws;
    auto& F2 = ws.field(2);
    SUBCASE("constants evaluate to themselves") {
        P1Function one = p1fun(F2, Poly::one(), Poly::one());
        auto v = eval_thickened(ws, F2, one, P1Point::finite(Poly{{1, 1, 1}}), 1, 0);
        CHECK(v == std::vector<uint32_t>{1, 0});
    }
    SUBCASE("x is the local parameter at the origin") {
        P1Function x = p1fun(F2, Poly::x(), Poly::one());
        auto v = eval_thickened(ws, F2, x, P1Point::finite(Poly{{0, 1}}), 2, 0);
        CHECK(v == std::vector<uint32_t>{0, 1});  // the element t of A_2(1,2)
    }
    SUBCASE("multiplicativity at a degree-2 thickened point") {
        P1Point P = P1Point::finite(Poly{{1, 1, 1}});
        ExtField E(F2, 2);
        uint64_t s = 5;
        int done = 0;
        while (done < 100) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            uint64_t fa = (s >> 13) % 32, fb = (s >> 43) % 32;
            Poly pa, pb;
            for (int i = 0; i < 5; ++i) {
                if ((fa >> i) & 1) pa.c.resize(static_cast<size_t>(i) + 1, 0), pa.c[static_cast<size_t>(i)] = 1;
                if ((fb >> i) & 1) pb.c.resize(static_cast<size_t>(i) + 1, 0), pb.c[static_cast<size_t>(i)] = 1;
            }
            pa.normalize();
            pb.normalize();
            if (pa.is_zero() || pb.is_zero()) continue;
            P1Function f = p1fun(F2, pa, Poly::one()), g = p1fun(F2, pb, Poly::one());
            auto vf = eval_thickened(ws, F2, f, P, 2, 0);
            auto vg = eval_thickened(ws, F2, g, P, 2, 0);
            auto vfg = eval_thickened(ws, F2, p1_mul(F2, f, g), P, 2, 0);
            CHECK(truncated_mul(E, 2, vf, vg) == vfg);
            ++done;
        }
    }
    SUBCASE("shift convention matches multiplication by the local parameter") {
        // eval with shift s of f equals eval with shift 0 of t_P^s f
        P1Point P = P1Point::finite(Poly{{0, 1}});  // the origin, t = x
        P1Function f = p1fun(F2, Poly::one(), Poly{{0, 1}});  // 1/x, pole of order 1
        auto v1 = eval_thickened(ws, F2, f, P, 3, 1);
        P1Function tf = p1_mul(F2, f, p1fun(F2, Poly::x(), Poly::one()));
        auto v2 = eval_thickened(ws, F2, tf, P, 3, 0);
        CHECK(v1 == v2);
        CHECK_THROWS(eval_thickened(ws, F2, f, P, 3, 0));
    }
    SUBCASE("evaluation at infinity uses 1/x") {
        P1Function f = p1fun(F2, Poly::one(), Poly::x());  // 1/x vanishes at infinity
        auto v = eval_thickened(ws, F2, f, P1Point::infinity(), 2, 0);
        CHECK(v == std::vector<uint32_t>{0, 1});
    }
}

TEST_CASE("points of degree listing") {
    SmallField F2(2, 1);
    auto pts = p1_points_of_degree(F2, 1, 3);
    REQUIRE(pts.size() == 3);
    CHECK(!pts[0].inf);
    CHECK(pts[2].inf);
    auto q = p1_points_of_degree(F2, 2, 1);
    CHECK(q[0].minpoly == Poly{{1, 1, 1}});
}

TEST_SUITE_END();
