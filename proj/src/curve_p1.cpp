#include "ccbil/curve_p1.hpp"

#include <stdexcept>

namespace ccb {

P1Divisor dv_add(const P1Divisor& a, const P1Divisor& b) {
    P1Divisor r = a;
    for (auto& [p, m] : b.mult) r.add(p, m);
    return r;
}

P1Divisor dv_neg(const P1Divisor& a) {
    P1Divisor r;
    for (auto& [p, m] : a.mult) r.add(p, -m);
    return r;
}

P1Divisor dv_scale(const P1Divisor& a, int k) {
    P1Divisor r;
    if (k)
        for (auto& [p, m] : a.mult) r.add(p, k * m);
    return r;
}

P1Function p1fun(const SmallField& F, Poly num, Poly den) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    Poly g = p_gcd(F, num, den);
    if (g.deg() > 0) {
        num = p_divmod(F, num, g).first;
        den = p_divmod(F, den, g).first;
    }
    uint32_t lead = den.lead();
    if (lead != 1) {
        uint32_t inv = F.inv(lead);
        num = p_scale(F, num, inv);
        den = p_scale(F, den, inv);
    }
    return {num, den};
}

P1Function p1_mul(const SmallField& F, const P1Function& f, const P1Function& g) {
    return p1fun(F, p_mul(F, f.num, g.num), p_mul(F, f.den, g.den));
}

int p1_valuation(const SmallField& F, const P1Function& f, const P1Point& P) {
    if (f.num.is_zero()) throw std::domain_error("valuation of the zero function");
    if (P.inf) return f.den.deg() - f.num.deg();
    return p_valuation(F, f.num, P.minpoly) - p_valuation(F, f.den, P.minpoly);
}

int l_dim_p1(const P1Divisor& D) { return std::max(D.deg() + 1, 0); }

std::vector<P1Function> rr_basis_p1(const SmallField& F, const P1Divisor& D) {
    // clear denominators: c = prod of pole-part polynomials, Z = required
    // zero part; basis = { Z x^j / c : deg(Z x^j) <= n_inf + deg c }
    Poly c = Poly::one(), Z = Poly::one();
    int n_inf = 0;
    for (auto& [p, m] : D.mult) {
        if (p.inf) {
            n_inf = m;
            continue;
        }
        Poly pw = Poly::one();
        for (int i = 0; i < std::abs(m); ++i) pw = p_mul(F, pw, p.minpoly);
        if (m > 0)
            c = p_mul(F, c, pw);
        else
            Z = p_mul(F, Z, pw);
    }
    int maxdeg = n_inf + c.deg();
    std::vector<P1Function> basis;
    for (int j = 0; Z.deg() + j <= maxdeg; ++j) basis.push_back(p1fun(F, p_shift(Z, j), c));
    return basis;
}

std::vector<uint32_t> eval_thickened(Workspace& ws, const SmallField& F, const P1Function& f, const P1Point& P,
                                     int u, int shift) {
    if (u < 1) throw std::invalid_argument("order must be >= 1");
    if (P.inf) {
        // local parameter t = 1/x: f = t^(deg den - deg num) * ntilde(t)/dtilde(t)
        Poly nt, dt;
        nt.c.assign(f.num.c.rbegin(), f.num.c.rend());
        nt.normalize();
        dt.c.assign(f.den.c.rbegin(), f.den.c.rend());
        dt.normalize();
        int v = f.den.deg() - f.num.deg();
        if (v + shift < 0) throw std::invalid_argument("pole order exceeds shift at infinity");
        Poly tu;  // t^u
        tu.c.assign(static_cast<size_t>(u) + 1, 0);
        tu.c[static_cast<size_t>(u)] = 1;
        Poly series = p_mod(F, p_mul(F, nt, p_invmod(F, dt, tu)), tu);
        series = p_shift(series, v + shift);
        series = p_mod(F, series, tu);
        std::vector<uint32_t> out(static_cast<size_t>(u), 0);
        for (int j = 0; j < u; ++j) out[static_cast<size_t>(j)] = series.coeff(j);
        return out;
    }
    const Poly& Q = P.minpoly;
    // strip Q-powers: f = Q^(a-b) * num' / den'
    Poly num = f.num, den = f.den;
    int a = f.num.is_zero() ? 0 : p_valuation(F, num, Q);
    for (int i = 0; i < a; ++i) num = p_divmod(F, num, Q).first;
    int b = p_valuation(F, den, Q);
    for (int i = 0; i < b; ++i) den = p_divmod(F, den, Q).first;
    int v = a - b + shift;
    if (!f.num.is_zero() && v < 0) throw std::invalid_argument("pole order exceeds shift at the point");
    const HenselIso& iso = hensel_lift(ws, F, Q, u);
    Poly Qu = iso.Qpow;
    Poly val = p_mod(F, p_mul(F, num, p_invmod(F, den, Qu)), Qu);
    for (int i = 0; i < v && !val.is_zero(); ++i) val = p_mod(F, p_mul(F, val, Q), Qu);
    return iso.transport(val);
}

std::vector<P1Point> p1_points_of_degree(const SmallField& F, int d, long count) {
    std::vector<P1Point> out;
    if (d == 1) {
        if (count > static_cast<long>(F.q) + 1) throw std::invalid_argument("P^1 has only q+1 rational points");
        for (long i = 0; i < count; ++i) {
            if (i < F.q) {
                Poly m{{F.neg(static_cast<uint32_t>(i)), 1}};  // x - c, by element code order
                out.push_back(P1Point::finite(m));
            } else {
                out.push_back(P1Point::infinity());
            }
        }
        return out;
    }
    for (auto& m : irreducibles(F, d, count)) out.push_back(P1Point::finite(std::move(m)));
    return out;
}

}  // namespace ccb
