#pragma once

#include <map>

#include "ccbil/finite_algebra.hpp"

namespace ccb {

// closed point of P^1: the infinite point or a monic irreducible polynomial
struct P1Point {
    bool inf = false;
    Poly minpoly;  // monic irreducible, empty when inf

    int deg() const { return inf ? 1 : minpoly.deg(); }
    bool operator<(const P1Point& o) const {
        if (inf != o.inf) return !inf;  // finite points sort before infinity
        if (inf) return false;
        if (minpoly.deg() != o.minpoly.deg()) return minpoly.deg() < o.minpoly.deg();
        for (size_t i = minpoly.c.size(); i-- > 0;)
            if (minpoly.c[i] != o.minpoly.c[i]) return minpoly.c[i] < o.minpoly.c[i];
        return false;
    }
    bool operator==(const P1Point& o) const { return inf == o.inf && minpoly == o.minpoly; }
    static P1Point infinity() {
        P1Point p;
        p.inf = true;
        return p;
    }
    static P1Point finite(Poly m) {
        P1Point p;
        p.minpoly = std::move(m);
        return p;
    }
};

struct P1Divisor {
    std::map<P1Point, int> mult;

    int deg() const {
        int s = 0;
        for (auto& [p, m] : mult) s += p.deg() * m;
        return s;
    }
    int at(const P1Point& p) const {
        auto it = mult.find(p);
        return it == mult.end() ? 0 : it->second;
    }
    void add(const P1Point& p, int m) {
        if (!m) return;
        auto it = mult.find(p);
        if (it == mult.end())
            mult.emplace(p, m);
        else {
            it->second += m;
            if (!it->second) mult.erase(it);
        }
    }
};

P1Divisor dv_add(const P1Divisor& a, const P1Divisor& b);
P1Divisor dv_neg(const P1Divisor& a);
P1Divisor dv_scale(const P1Divisor& a, int k);

// rational function num/den in reduced form, den monic
struct P1Function {
    Poly num, den;
};

P1Function p1fun(const SmallField& F, Poly num, Poly den);
P1Function p1_mul(const SmallField& F, const P1Function& f, const P1Function& g);
int p1_valuation(const SmallField& F, const P1Function& f, const P1Point& P);

// basis of L(D); size max(deg D + 1, 0)
std::vector<P1Function> rr_basis_p1(const SmallField& F, const P1Divisor& D);
int l_dim_p1(const P1Divisor& D);

// t_P^shift * f in A_q(deg P, u); local parameter is the point's polynomial,
// 1/x at infinity; requires v_P(f) >= -shift
std::vector<uint32_t> eval_thickened(Workspace& ws, const SmallField& F, const P1Function& f, const P1Point& P,
                                     int u, int shift);

// degree-1 points first (finite by code order, infinity last), then higher
// degrees in irreducible enumeration order
std::vector<P1Point> p1_points_of_degree(const SmallField& F, int d, long count);

}  // namespace ccb
