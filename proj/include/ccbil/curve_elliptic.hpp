#pragma once

#include <array>
#include <map>

#include "ccbil/poly.hpp"
#include "ccbil/series.hpp"
#include "ccbil/structure_algebra.hpp"

namespace ccb {

// Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q
struct EllipticCurve {
    const SmallField* F = nullptr;
    std::array<uint32_t, 5> a{};  // a1, a2, a3, a4, a6
    int trace = 0;
    // rational points, infinity first, then ascending (x, y) codes
    std::vector<std::pair<uint32_t, uint32_t>> affine;  // rational affine points
    int n_rational() const { return static_cast<int>(affine.size()) + 1; }
};

// point with coordinates in F_{q^d}; deg together with the representative
// determines the closed point (Frobenius orbit)
struct ECPoint {
    bool inf = false;
    Elt x, y;
    static ECPoint infinity() {
        ECPoint p;
        p.inf = true;
        return p;
    }
};

struct ECClosedPoint {
    bool inf = false;  // the distinguished rational point P_infinity
    int deg = 1;
    Elt x, y;  // canonical orbit representative, coordinates in F_{q^deg}

    bool operator<(const ECClosedPoint& o) const {
        if (inf != o.inf) return inf;  // P_infinity sorts first
        if (inf) return false;
        if (deg != o.deg) return deg < o.deg;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
    bool operator==(const ECClosedPoint& o) const { return inf == o.inf && deg == o.deg && x == o.x && y == o.y; }
    static ECClosedPoint infinity() {
        ECClosedPoint p;
        p.inf = true;
        return p;
    }
};

struct ECDivisor {
    std::map<ECClosedPoint, int> mult;

    int deg() const {
        int s = 0;
        for (auto& [p, m] : mult) s += p.deg * m;
        return s;
    }
    int at(const ECClosedPoint& p) const {
        auto it = mult.find(p);
        return it == mult.end() ? 0 : it->second;
    }
    void add(const ECClosedPoint& p, int m) {
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

ECDivisor ecdv_add(const ECDivisor& a, const ECDivisor& b);
ECDivisor ecdv_neg(const ECDivisor& a);
ECDivisor ecdv_scale(const ECDivisor& a, int k);

// function (a(x) + b(x) y) / c(x) with F_q coefficients
struct ECFunction {
    Poly a, b, c;
};

// ---- curve construction and point counts ----

// first curve (lexicographic Weierstrass tuple) over F_q with the given
// trace; nullptr if the exhaustive scan finds none
const EllipticCurve* curve_with_trace(Workspace& ws, uint32_t q, int t);
// construct a specific curve (validates nonsingularity, counts points)
const EllipticCurve* curve_from_coeffs(Workspace& ws, uint32_t q, const std::array<uint32_t, 5>& a);

// |X(F_{q^n})| from the trace recurrence
long point_count_ext(const EllipticCurve& C, int n);
// number of closed points of degree d (trace recurrence + Moebius)
long count_closed_points(const EllipticCurve& C, int d);
// exhaustive count over F_{q^d} for cross-checking; guard q^d <= 2^16
long count_points_enumerated(Workspace& ws, const EllipticCurve& C, int d);

// ---- group law (coordinates in E, which must extend C.F) ----

bool ec_on_curve(const EllipticCurve& C, const ExtField& E, const ECPoint& P);
ECPoint ec_neg(const EllipticCurve& C, const ExtField& E, const ECPoint& P);
ECPoint ec_add(const EllipticCurve& C, const ExtField& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_smul(const EllipticCurve& C, const ExtField& E, long k, const ECPoint& P);

// all closed points of degree d in canonical order; guard q^d <= 2^16
std::vector<ECClosedPoint> closed_points(Workspace& ws, const EllipticCurve& C, int d);
// rational closed points (degree 1), infinity first
std::vector<ECClosedPoint> rational_closed_points(const EllipticCurve& C);
// canonical closed point of an orbit representative
ECClosedPoint canonicalize_orbit(Workspace& ws, const EllipticCurve& C, int deg, const Elt& x, const Elt& y);
ECClosedPoint closed_neg(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& P);

// class-group reduction: sigma(D) is the rational point with
// D ~ sigma(D) + (deg D - 1) P_infinity
ECClosedPoint sigma(Workspace& ws, const EllipticCurve& C, const ECDivisor& D);

int l_dim(Workspace& ws, const EllipticCurve& C, const ECDivisor& D);
bool is_principal(Workspace& ws, const EllipticCurve& C, const ECDivisor& D);
// i(D - l Q) == 0, genus-1 form (trivial canonical class)
bool is_nonspecial_shifted(Workspace& ws, const EllipticCurve& C, const ECDivisor& D, const ECDivisor& lQ);

std::vector<ECFunction> rr_basis(Workspace& ws, const EllipticCurve& C, const ECDivisor& D);

// t_P^shift * f truncated at order u, as coordinates of A_q(deg P, u);
// uniformizer x - x_P (or y - y_P at 2-torsion), x/y at infinity
std::vector<uint32_t> local_expand(Workspace& ws, const EllipticCurve& C, const ECFunction& f,
                                   const ECClosedPoint& P, int u, int shift);
// exact valuation of a nonzero f at P
int ec_valuation(Workspace& ws, const EllipticCurve& C, const ECFunction& f, const ECClosedPoint& P);

// a closed point of exact degree m; deterministic for a fixed seed
ECClosedPoint find_point_of_degree(Workspace& ws, const EllipticCurve& C, uint32_t m, uint64_t seed = 0);

ECFunction ecf_mul(const SmallField& F, const EllipticCurve& C, const ECFunction& f, const ECFunction& g);

}  // namespace ccb
