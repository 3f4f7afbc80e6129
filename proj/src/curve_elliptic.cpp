#include "ccbil/curve_elliptic.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccb {

namespace {

uint32_t smallint(const SmallField& F, long k) {
    long r = k % static_cast<long>(F.p);
    if (r < 0) r += F.p;
    return static_cast<uint32_t>(r);
}

uint32_t int_mul(const SmallField& F, long k, uint32_t a) { return F.mul(smallint(F, k), a); }

// y^2 + h y = rhs over E; solutions in deterministic order
std::vector<Elt> solve_quadratic(const ExtField& E, const Elt& h, const Elt& rhs) {
    std::vector<Elt> out;
    if (E.F->p == 2) {
        if (E.is_zero(h)) {
            out.push_back(*E.sqrt(rhs));
            return out;
        }
        Elt c = E.div(rhs, E.mul(h, h));
        auto z = E.artin_schreier_solve(c);
        if (!z) return out;
        Elt y1 = E.mul(h, *z);
        Elt y2 = E.add(y1, h);
        if (y2 < y1) std::swap(y1, y2);
        out.push_back(y1);
        out.push_back(y2);
        return out;
    }
    // odd characteristic: y = (-h +- s)/2 with s^2 = h^2 + 4 rhs
    Elt four = E.from_base(smallint(*E.F, 4));
    Elt disc = E.add(E.mul(h, h), E.mul(four, rhs));
    auto s = E.sqrt(disc);
    if (!s) return out;
    Elt inv2 = E.inv(E.from_base(smallint(*E.F, 2)));
    Elt y1 = E.mul(E.sub(*s, h), inv2);
    Elt y2 = E.mul(E.sub(E.neg(*s), h), inv2);
    if (y1 == y2) {
        out.push_back(y1);
        return out;
    }
    if (y2 < y1) std::swap(y1, y2);
    out.push_back(y1);
    out.push_back(y2);
    return out;
}

bool discriminant_nonzero(const SmallField& F, const std::array<uint32_t, 5>& a) {
    uint32_t a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
    uint32_t b2 = F.add(F.mul(a1, a1), int_mul(F, 4, a2));
    uint32_t b4 = F.add(int_mul(F, 2, a4), F.mul(a1, a3));
    uint32_t b6 = F.add(F.mul(a3, a3), int_mul(F, 4, a6));
    uint32_t b8 = F.add(F.add(F.mul(F.mul(a1, a1), a6), int_mul(F, 4, F.mul(a2, a6))),
                        F.add(F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a1, F.mul(a3, a4))), F.neg(F.mul(a4, a4))));
    uint32_t disc = F.sub(F.add(F.neg(F.mul(F.mul(b2, b2), b8)), int_mul(F, 9, F.mul(b2, F.mul(b4, b6)))),
                          F.add(int_mul(F, 8, F.mul(b4, F.mul(b4, b4))), int_mul(F, 27, F.mul(b6, b6))));
    return disc != 0;
}

int count_rational(const SmallField& F, const std::array<uint32_t, 5>& a) {
    int count = 1;  // infinity
    for (uint32_t x = 0; x < F.q; ++x) {
        uint32_t h = F.add(F.mul(a[0], x), a[2]);
        uint32_t rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a[1], F.mul(x, x))), F.add(F.mul(a[3], x), a[4]));
        if (F.p == 2) {
            if (h == 0)
                count += 1;
            else
                count += (F.trace_abs(F.div(rhs, F.mul(h, h))) == 0) ? 2 : 0;
        } else {
            uint32_t disc = F.add(F.mul(h, h), int_mul(F, 4, rhs));
            count += 1 + F.chi(disc);
        }
    }
    return count;
}

struct ScanCache {
    std::map<int, std::array<uint32_t, 5>> by_trace;
};

const ScanCache& scan_curves(Workspace& ws, uint32_t q) {
    std::string key = "ec_scan/" + std::to_string(q);
    auto it = ws.blobs_.find(key);
    if (it != ws.blobs_.end()) return *static_cast<ScanCache*>(it->second.get());
    const SmallField& F = ws.field(q);
    auto cache = std::make_shared<ScanCache>();
    std::array<uint32_t, 5> a{};
    for (a[0] = 0; a[0] < q; ++a[0])
        for (a[1] = 0; a[1] < q; ++a[1])
            for (a[2] = 0; a[2] < q; ++a[2])
                for (a[3] = 0; a[3] < q; ++a[3])
                    for (a[4] = 0; a[4] < q; ++a[4]) {
                        if (!discriminant_nonzero(F, a)) continue;
                        int t = static_cast<int>(q) + 1 - count_rational(F, a);
                        cache->by_trace.emplace(t, a);  // first tuple wins
                    }
    ws.blobs_[key] = cache;
    return *cache;
}

std::string curve_key(uint32_t q, const std::array<uint32_t, 5>& a) {
    std::string k = "ec_curve/" + std::to_string(q);
    for (uint32_t v : a) k += "/" + std::to_string(v);
    return k;
}

const EllipticCurve* build_curve(Workspace& ws, uint32_t q, const std::array<uint32_t, 5>& a) {
    std::string key = curve_key(q, a);
    auto it = ws.blobs_.find(key);
    if (it != ws.blobs_.end()) return static_cast<EllipticCurve*>(it->second.get());
    const SmallField& F = ws.field(q);
    if (!discriminant_nonzero(F, a)) throw std::invalid_argument("singular Weierstrass equation");
    auto C = std::make_shared<EllipticCurve>();
    C->F = &F;
    C->a = a;
    ExtField E1(F, 1);
    for (uint32_t x = 0; x < q; ++x) {
        Elt h = E1.from_base(F.add(F.mul(a[0], x), a[2]));
        Elt rhs = E1.from_base(
            F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a[1], F.mul(x, x))), F.add(F.mul(a[3], x), a[4])));
        for (auto& y : solve_quadratic(E1, h, rhs)) C->affine.emplace_back(x, y[0]);
    }
    std::sort(C->affine.begin(), C->affine.end());
    C->trace = static_cast<int>(q) + 1 - C->n_rational();
    ws.blobs_[key] = C;
    return C.get();
}

}  // namespace

ECDivisor ecdv_add(const ECDivisor& a, const ECDivisor& b) {
    ECDivisor r = a;
    for (auto& [p, m] : b.mult) r.add(p, m);
    return r;
}

ECDivisor ecdv_neg(const ECDivisor& a) {
    ECDivisor r;
    for (auto& [p, m] : a.mult) r.add(p, -m);
    return r;
}

ECDivisor ecdv_scale(const ECDivisor& a, int k) {
    ECDivisor r;
    if (k)
        for (auto& [p, m] : a.mult) r.add(p, k * m);
    return r;
}

const EllipticCurve* curve_with_trace(Workspace& ws, uint32_t q, int t) {
    const auto& cache = scan_curves(ws, q);
    auto it = cache.by_trace.find(t);
    if (it == cache.by_trace.end()) return nullptr;
    return build_curve(ws, q, it->second);
}

const EllipticCurve* curve_from_coeffs(Workspace& ws, uint32_t q, const std::array<uint32_t, 5>& a) {
    return build_curve(ws, q, a);
}

long point_count_ext(const EllipticCurve& C, int n) {
    // |X(F_{q^n})| = q^n + 1 - s_n, s_0 = 2, s_1 = t, s_k = t s_{k-1} - q s_{k-2}
    long q = C.F->q;
    long s0 = 2, s1 = C.trace;
    if (n == 0) return 0;
    long qn = q;
    for (int i = 1; i < n; ++i) {
        long s2 = C.trace * s1 - q * s0;
        s0 = s1;
        s1 = s2;
        qn *= q;
    }
    return qn + 1 - s1;
}

long count_closed_points(const EllipticCurve& C, int d) {
    auto mobius = [](int n) {
        int m = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        if (n > 1) m = -m;
        return m;
    };
    long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        total += mobius(d / e) * point_count_ext(C, e);
    }
    return total / d;
}

long count_points_enumerated(Workspace& ws, const EllipticCurve& C, int d) {
    ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(d));
    uint64_t qd = 1;
    for (int i = 0; i < d; ++i) {
        qd *= C.F->q;
        if (qd > (1u << 16)) throw std::invalid_argument("enumeration guard exceeded");
    }
    long count = 1;
    for (uint64_t n = 0; n < qd; ++n) {
        Elt x = E.from_index(n);
        Elt h = E.add(E.scale(x, C.a[0]), E.from_base(C.a[2]));
        Elt rhs = E.add(E.add(E.mul(E.mul(x, x), x), E.scale(E.mul(x, x), C.a[1])),
                        E.add(E.scale(x, C.a[3]), E.from_base(C.a[4])));
        count += static_cast<long>(solve_quadratic(E, h, rhs).size());
    }
    return count;
}

bool ec_on_curve(const EllipticCurve& C, const ExtField& E, const ECPoint& P) {
    if (P.inf) return true;
    Elt lhs = E.add(E.mul(P.y, P.y), E.mul(P.y, E.add(E.scale(P.x, C.a[0]), E.from_base(C.a[2]))));
    Elt rhs = E.add(E.add(E.mul(E.mul(P.x, P.x), P.x), E.scale(E.mul(P.x, P.x), C.a[1])),
                    E.add(E.scale(P.x, C.a[3]), E.from_base(C.a[4])));
    return lhs == rhs;
}

ECPoint ec_neg(const EllipticCurve& C, const ExtField& E, const ECPoint& P) {
    if (P.inf) return P;
    if (!ec_on_curve(C, E, P)) throw std::invalid_argument("point not on the curve");
    ECPoint R;
    R.x = P.x;
    R.y = E.neg(E.add(P.y, E.add(E.scale(P.x, C.a[0]), E.from_base(C.a[2]))));
    return R;
}

ECPoint ec_add(const EllipticCurve& C, const ExtField& E, const ECPoint& P, const ECPoint& Q) {
    if (!ec_on_curve(C, E, P) || !ec_on_curve(C, E, Q)) throw std::invalid_argument("point not on the curve");
    if (P.inf) return Q;
    if (Q.inf) return P;
    ECPoint negQ = ec_neg(C, E, Q);
    if (P.x == negQ.x && P.y == negQ.y) return ECPoint::infinity();
    Elt lambda, nu;
    if (!(P.x == Q.x)) {
        Elt dx = E.sub(Q.x, P.x);
        lambda = E.div(E.sub(Q.y, P.y), dx);
        nu = E.div(E.sub(E.mul(P.y, Q.x), E.mul(Q.y, P.x)), dx);
    } else {
        // tangent: lambda = (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
        Elt den = E.add(E.add(P.y, P.y), E.add(E.scale(P.x, C.a[0]), E.from_base(C.a[2])));
        Elt x2 = E.mul(P.x, P.x);
        Elt num = E.sub(E.add(E.add(E.add(x2, x2), x2), E.add(E.scale(E.add(P.x, P.x), C.a[1]), E.from_base(C.a[3]))),
                        E.scale(P.y, C.a[0]));
        lambda = E.div(num, den);
        Elt x3 = E.mul(x2, P.x);
        Elt nun = E.sub(E.add(E.neg(x3), E.add(E.scale(P.x, C.a[3]), E.add(E.from_base(C.a[4]), E.from_base(C.a[4])))),
                        E.scale(P.y, C.a[2]));
        nu = E.div(nun, den);
    }
    ECPoint R;
    R.x = E.sub(E.sub(E.sub(E.add(E.mul(lambda, lambda), E.scale(lambda, C.a[0])), E.from_base(C.a[1])), P.x), Q.x);
    R.y = E.sub(E.neg(E.add(E.mul(lambda, R.x), nu)), E.add(E.scale(R.x, C.a[0]), E.from_base(C.a[2])));
    return R;
}

ECPoint ec_smul(const EllipticCurve& C, const ExtField& E, long k, const ECPoint& P) {
    ECPoint base = P;
    if (k < 0) {
        base = ec_neg(C, E, P);
        k = -k;
    }
    ECPoint acc = ECPoint::infinity();
    while (k) {
        if (k & 1) acc = ec_add(C, E, acc, base);
        base = ec_add(C, E, base, base);
        k >>= 1;
    }
    return acc;
}

ECClosedPoint canonicalize_orbit(Workspace& ws, const EllipticCurve& C, int deg, const Elt& x, const Elt& y) {
    ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(deg));
    ECClosedPoint P;
    P.deg = deg;
    Elt bx = x, by = y, cx = x, cy = y;
    for (int j = 1; j < deg; ++j) {
        cx = E.frob(cx);
        cy = E.frob(cy);
        if (cx < bx || (cx == bx && cy < by)) {
            bx = cx;
            by = cy;
        }
    }
    P.x = bx;
    P.y = by;
    return P;
}

std::vector<ECClosedPoint> rational_closed_points(const EllipticCurve& C) {
    std::vector<ECClosedPoint> out;
    out.push_back(ECClosedPoint::infinity());
    for (auto [x, y] : C.affine) {
        ECClosedPoint P;
        P.deg = 1;
        P.x = {x};
        P.y = {y};
        out.push_back(P);
    }
    return out;
}

std::vector<ECClosedPoint> closed_points(Workspace& ws, const EllipticCurve& C, int d) {
    if (d == 1) return rational_closed_points(C);
    ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(d));
    uint64_t qd = 1;
    for (int i = 0; i < d; ++i) {
        qd *= C.F->q;
        if (qd > (1u << 16)) throw std::invalid_argument("closed point enumeration guard exceeded");
    }
    std::vector<ECClosedPoint> out;
    for (uint64_t n = 0; n < qd; ++n) {
        Elt x = E.from_index(n);
        Elt h = E.add(E.scale(x, C.a[0]), E.from_base(C.a[2]));
        Elt rhs = E.add(E.add(E.mul(E.mul(x, x), x), E.scale(E.mul(x, x), C.a[1])),
                        E.add(E.scale(x, C.a[3]), E.from_base(C.a[4])));
        for (auto& y : solve_quadratic(E, h, rhs)) {
            // orbit size must be exactly d; representative must be canonical
            Elt cx = x, cy = y;
            int orbit = d;
            for (int j = 1; j < d; ++j) {
                cx = E.frob(cx);
                cy = E.frob(cy);
                if (cx == x && cy == y) {
                    orbit = j;
                    break;
                }
            }
            if (orbit != d) continue;
            auto P = canonicalize_orbit(ws, C, d, x, y);
            if (P.x == x && P.y == y) out.push_back(P);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ECClosedPoint closed_neg(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& P) {
    if (P.inf) return P;
    ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(P.deg));
    ECPoint rep;
    rep.x = P.x;
    rep.y = P.y;
    auto n = ec_neg(C, E, rep);
    return canonicalize_orbit(ws, C, P.deg, n.x, n.y);
}

ECClosedPoint sigma(Workspace& ws, const EllipticCurve& C, const ECDivisor& D) {
    ExtField& E1 = ws.ext(C.F->q, 1);
    ECPoint acc = ECPoint::infinity();
    for (auto& [P, m] : D.mult) {
        if (P.inf || m == 0) continue;
        ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(P.deg));
        ECPoint sum = ECPoint::infinity();
        ECPoint conj;
        conj.x = P.x;
        conj.y = P.y;
        for (int j = 0; j < P.deg; ++j) {
            sum = ec_add(C, E, sum, conj);
            conj.x = E.frob(conj.x);
            conj.y = E.frob(conj.y);
        }
        sum = ec_smul(C, E, m, sum);
        if (!sum.inf) {
            if (!E.in_base(sum.x) || !E.in_base(sum.y)) throw std::logic_error("Galois-stable sum not rational");
            ECPoint r;
            r.x = {sum.x[0]};
            r.y = {sum.y[0]};
            acc = ec_add(C, E1, acc, r);
        }
    }
    if (acc.inf) return ECClosedPoint::infinity();
    ECClosedPoint R;
    R.deg = 1;
    R.x = acc.x;
    R.y = acc.y;
    return R;
}

int l_dim(Workspace& ws, const EllipticCurve& C, const ECDivisor& D) {
    int d = D.deg();
    if (d < 0) return 0;
    if (d >= 1) return d;
    return sigma(ws, C, D).inf ? 1 : 0;
}

bool is_principal(Workspace& ws, const EllipticCurve& C, const ECDivisor& D) {
    return D.deg() == 0 && sigma(ws, C, D).inf;
}

bool is_nonspecial_shifted(Workspace& ws, const EllipticCurve& C, const ECDivisor& D, const ECDivisor& lQ) {
    // i(D - lQ) = l(-(D - lQ)) at genus 1
    return l_dim(ws, C, ecdv_neg(ecdv_add(D, ecdv_neg(lQ)))) == 0;
}

// ---- local charts ----

namespace {

struct Chart {
    int prec = 0;
    Series x, y;               // series in the uniformizer
    std::vector<Series> xpow;  // lazily grown powers of x
    std::map<std::vector<uint32_t>, Series> inv_cache;  // denominator inverses by coefficients
    const ExtField* E = nullptr;
};

std::string point_desc(const ECClosedPoint& P) {
    if (P.inf) return "inf";
    std::string s = "d" + std::to_string(P.deg);
    for (uint32_t v : P.x) s += "," + std::to_string(v);
    s += ";";
    for (uint32_t v : P.y) s += "," + std::to_string(v);
    return s;
}

// series for the curve's defining polynomials h(x) = a1 x + a3 and
// g(x) = x^3 + a2 x^2 + a4 x + a6
Series curve_h(const EllipticCurve& C, const ExtField& E, const Series& xs) {
    Series h = s_scale(xs, E.from_base(C.a[0]));
    return s_add(h, s_from_elt(E, E.from_base(C.a[2]), h.precision_end()));
}

Series curve_g(const EllipticCurve& C, const ExtField& E, const Series& xs) {
    Series x2 = s_mul(xs, xs);
    Series x3 = s_mul(x2, xs);
    Series g = s_add(x3, s_scale(x2, E.from_base(C.a[1])));
    g = s_add(g, s_scale(xs, E.from_base(C.a[3])));
    return s_add(g, s_from_elt(E, E.from_base(C.a[4]), g.precision_end()));
}

std::shared_ptr<Chart> build_chart(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& P, int prec) {
    auto chart = std::make_shared<Chart>();
    chart->prec = prec;
    if (P.inf) {
        ExtField& E = ws.ext(C.F->q, 1);
        chart->E = &E;
        // z = x/y, w = 1/y; w = z^3 + a2 z^2 w + a4 z w^2 + a6 w^3 - a1 z w - a3 w^2
        int N = prec + 6;
        Series z(E, 1, N);
        z.set_coeff(1, E.one());
        Series w(E, 3, N);
        w.set_coeff(3, E.one());
        Elt a1 = E.from_base(C.a[0]), a2 = E.from_base(C.a[1]), a3 = E.from_base(C.a[2]), a4 = E.from_base(C.a[3]),
            a6 = E.from_base(C.a[4]);
        for (int iter = 0; iter < N + 4; ++iter) {
            Series z3 = s_mul(z, s_mul(z, z));
            Series w2 = s_mul(w, w);
            Series next = s_truncate(z3, N + 3);
            next = s_add(next, s_scale(s_mul(s_mul(z, z), w), a2));
            next = s_add(next, s_scale(s_mul(z, w2), a4));
            next = s_add(next, s_scale(s_mul(w, w2), a6));
            next = s_add(next, s_scale(s_mul(z, w), E.neg(a1)));
            next = s_add(next, s_scale(w2, E.neg(a3)));
            next = s_truncate(next, N + 3);
            // pad to full precision: coefficients beyond computed end stay as computed
            Series padded(E, 3, N);
            for (int k = 3; k < 3 + N; ++k)
                if (k < next.precision_end()) padded.set_coeff(k, next.coeff(k));
            if (padded.flat == w.flat) {
                w = padded;
                break;
            }
            w = padded;
        }
        Series winv = s_inv(w);                 // 1/w, valuation -3
        chart->y = s_truncate(winv, prec - 3);  // y = 1/w
        chart->x = s_truncate(s_mul(z, winv), prec - 2);
        return chart;
    }
    ExtField& E = ws.ext(C.F->q, static_cast<uint32_t>(P.deg));
    chart->E = &E;
    Elt a1 = E.from_base(C.a[0]), a3 = E.from_base(C.a[2]);
    Elt fy = E.add(E.add(P.y, P.y), E.add(E.mul(a1, P.x), a3));
    int N = prec;
    if (!E.is_zero(fy)) {
        // uniformizer t = x - x0
        Series xs(E, 0, N);
        xs.set_coeff(0, P.x);
        if (N > 1) xs.set_coeff(1, E.one());
        Series ys = s_from_elt(E, P.y, N);
        Series h = curve_h(C, E, xs), g = curve_g(C, E, xs);
        for (int iter = 0; iter < 40; ++iter) {
            // Fval = y^2 + h y - g ; Fy = 2y + h
            Series Fval = s_add(s_mul(ys, ys), s_add(s_mul(h, ys), s_scale(g, E.neg(E.one()))));
            if (Fval.all_zero()) break;
            Series Fy = s_add(s_add(ys, ys), h);
            Series corr = s_mul(Fval, s_inv(Fy));
            Series next = s_add(ys, s_scale(corr, E.neg(E.one())));
            next = s_truncate(next, N);
            if (next.flat == ys.flat && next.lead == ys.lead) break;
            ys = next;
        }
        // consistency: the series must satisfy the curve equation, which also
        // certifies that the chosen uniformizer has valuation exactly 1
        Series resid = s_add(s_mul(ys, ys), s_add(s_mul(h, ys), s_scale(g, E.neg(E.one()))));
        if (!resid.all_zero()) throw std::logic_error("local chart does not satisfy the curve equation");
        chart->x = xs;
        chart->y = ys;
    } else {
        // 2-torsion representative: uniformizer t = y - y0, solve for x
        Series ys(E, 0, N);
        ys.set_coeff(0, P.y);
        if (N > 1) ys.set_coeff(1, E.one());
        Series xs = s_from_elt(E, P.x, N);
        for (int iter = 0; iter < 40; ++iter) {
            Series h = curve_h(C, E, xs), g = curve_g(C, E, xs);
            Series Fval = s_add(s_mul(ys, ys), s_add(s_mul(h, ys), s_scale(g, E.neg(E.one()))));
            if (Fval.all_zero()) break;
            // Fx = a1 y - (3x^2 + 2 a2 x + a4)
            Series x2 = s_mul(xs, xs);
            Series Fx = s_scale(ys, a1);
            Elt three = E.from_base(smallint(*E.F, 3));
            Elt two = E.from_base(smallint(*E.F, 2));
            Fx = s_add(Fx, s_scale(x2, E.neg(three)));
            Fx = s_add(Fx, s_scale(xs, E.neg(E.mul(two, E.from_base(C.a[1])))));
            Fx = s_add(Fx, s_from_elt(E, E.neg(E.from_base(C.a[3])), Fx.precision_end()));
            Series corr = s_mul(Fval, s_inv(Fx));
            Series next = s_add(xs, s_scale(corr, E.neg(E.one())));
            next = s_truncate(next, N);
            if (next.flat == xs.flat && next.lead == xs.lead) break;
            xs = next;
        }
        {
            Series h = curve_h(C, E, xs), g = curve_g(C, E, xs);
            Series resid = s_add(s_mul(ys, ys), s_add(s_mul(h, ys), s_scale(g, E.neg(E.one()))));
            if (!resid.all_zero()) throw std::logic_error("local chart does not satisfy the curve equation");
        }
        chart->x = xs;
        chart->y = ys;
    }
    return chart;
}

Chart& get_chart(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& P, int prec) {
    std::string key = curve_key(C.F->q, C.a) + "/chart/" + point_desc(P);
    auto it = ws.blobs_.find(key);
    if (it != ws.blobs_.end()) {
        auto* ch = static_cast<Chart*>(it->second.get());
        if (ch->prec >= prec) return *ch;
    }
    auto chart = build_chart(ws, C, P, prec + 8);
    ws.blobs_[key] = chart;
    return *chart;
}

const Series& chart_xpow(Chart& ch, int k) {
    if (ch.xpow.empty()) {
        Series one(*ch.E, 0, ch.prec);
        one.set_coeff(0, ch.E->one());
        ch.xpow.push_back(one);
    }
    while (static_cast<int>(ch.xpow.size()) <= k) ch.xpow.push_back(s_mul(ch.xpow.back(), ch.x));
    return ch.xpow[static_cast<size_t>(k)];
}

// (a(x) + b(x) y) / c(x) as a series at P, valid to the chart's precision
Series expand_function(Chart& ch, const ECFunction& f) {
    const ExtField& E = *ch.E;
    int end = ch.x.precision_end() + 3;
    Series num(E, 0, 0);
    num.lead = end;  // empty zero series with late lead
    bool any = false;
    Series acc(E, 0, 0);
    for (size_t j = 0; j < f.a.c.size(); ++j) {
        if (!f.a.c[j]) continue;
        Series term = s_scale(chart_xpow(ch, static_cast<int>(j)), E.from_base(f.a.c[j]));
        acc = any ? s_add(acc, term) : term;
        any = true;
    }
    if (!f.b.is_zero()) {
        Series bb(E, 0, 0);
        bool anyb = false;
        for (size_t j = 0; j < f.b.c.size(); ++j) {
            if (!f.b.c[j]) continue;
            Series term = s_scale(chart_xpow(ch, static_cast<int>(j)), E.from_base(f.b.c[j]));
            bb = anyb ? s_add(bb, term) : term;
            anyb = true;
        }
        Series by = s_mul(bb, ch.y);
        acc = any ? s_add(acc, by) : by;
        any = true;
    }
    if (!any) return Series(E, end, 0);
    if (f.c.deg() == 0 && f.c.coeff(0) == 1) return acc;
    auto hit = ch.inv_cache.find(f.c.c);
    if (hit == ch.inv_cache.end()) {
        Series cc(E, 0, 0);
        bool anyc = false;
        for (size_t j = 0; j < f.c.c.size(); ++j) {
            if (!f.c.c[j]) continue;
            Series term = s_scale(chart_xpow(ch, static_cast<int>(j)), E.from_base(f.c.c[j]));
            cc = anyc ? s_add(cc, term) : term;
            anyc = true;
        }
        hit = ch.inv_cache.emplace(f.c.c, s_inv(cc)).first;
    }
    return s_mul(acc, hit->second);
}

}  // namespace

std::vector<uint32_t> local_expand(Workspace& ws, const EllipticCurve& C, const ECFunction& f,
                                   const ECClosedPoint& P, int u, int shift) {
    if (u < 1) throw std::invalid_argument("order must be >= 1");
    // precision grows adaptively; series bookkeeping makes undershoot safe
    int prec = u + 10;
    for (int attempt = 0; attempt < 14; ++attempt, prec *= 2) {
        Chart& ch = get_chart(ws, C, P, prec);
        Series ser;
        try {
            ser = s_shift(expand_function(ch, f), shift);
        } catch (const std::domain_error&) {
            continue;  // denominator valuation beyond the current precision
        }
        auto val = ser.valuation();
        if (val && *val < 0) throw std::invalid_argument("pole order exceeds shift at the point");
        if (ser.precision_end() < u) continue;
        int d = P.inf ? 1 : P.deg;
        std::vector<uint32_t> out(static_cast<size_t>(d) * u, 0);
        for (int j = 0; j < u; ++j) {
            Elt cj = ser.coeff(j);
            for (int i = 0; i < d; ++i) out[static_cast<size_t>(j * d + i)] = cj[static_cast<size_t>(i)];
        }
        return out;
    }
    throw std::runtime_error("local expansion failed to reach the requested precision");
}

int ec_valuation(Workspace& ws, const EllipticCurve& C, const ECFunction& f, const ECClosedPoint& P) {
    if (f.a.is_zero() && f.b.is_zero()) throw std::domain_error("valuation of the zero function");
    int degs = f.a.deg() + std::max(f.b.deg(), 0) + f.c.deg() + 3;
    int cap = 4 * degs + 64;
    int prec = 16;
    while (prec <= cap) {
        Chart& ch = get_chart(ws, C, P, prec);
        try {
            Series ser = expand_function(ch, f);
            auto val = ser.valuation();
            if (val) return *val;
        } catch (const std::domain_error&) {
        }
        prec *= 2;
    }
    throw std::runtime_error("function appears to vanish identically at the point");
}

std::vector<ECFunction> rr_basis(Workspace& ws, const EllipticCurve& C, const ECDivisor& D) {
    const SmallField& F = *C.F;
    int n_inf = D.at(ECClosedPoint::infinity());
    // denominator c = prod over finite pole points of minpoly(x_P)^{n_P}
    Poly c = Poly::one();
    std::vector<ECClosedPoint> constraint_pts;
    for (auto& [P, m] : D.mult) {
        if (P.inf) continue;
        constraint_pts.push_back(P);
        if (m <= 0) continue;
        // minimal polynomial of x_P over F_q
        ExtField& E = ws.ext(F.q, static_cast<uint32_t>(P.deg));
        std::vector<Elt> xorb;
        Elt cx = P.x;
        for (int j = 0; j < P.deg; ++j) {
            if (std::find(xorb.begin(), xorb.end(), cx) == xorb.end()) xorb.push_back(cx);
            cx = E.frob(cx);
        }
        // product of (X - root) over the distinct orbit of x
        std::vector<Elt> coeffs{E.one()};
        for (auto& root : xorb) {
            std::vector<Elt> next(coeffs.size() + 1, E.zero());
            for (size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] = E.add(next[i + 1], coeffs[i]);
                next[i] = E.sub(next[i], E.mul(coeffs[i], root));
            }
            coeffs = next;
        }
        Poly mp;
        mp.c.resize(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (!E.in_base(coeffs[i])) throw std::logic_error("minimal polynomial not rational");
            mp.c[i] = coeffs[i][0];
        }
        mp.normalize();
        Poly pw = Poly::one();
        for (int i = 0; i < m; ++i) pw = p_mul(F, pw, mp);
        c = p_mul(F, c, pw);
        // c also vanishes at the negated point
        auto np = closed_neg(ws, C, P);
        constraint_pts.push_back(np);
    }
    std::sort(constraint_pts.begin(), constraint_pts.end());
    constraint_pts.erase(std::unique(constraint_pts.begin(), constraint_pts.end()), constraint_pts.end());

    int M = n_inf + 2 * c.deg();
    int A = M >= 0 ? M / 2 : -1;
    int B = M >= 3 ? (M - 3) / 2 : -1;
    int na = A + 1, nb = B + 1;
    int ncand = na + nb;
    if (ncand <= 0) return {};

    // linear constraints: at P require v_P(numerator) >= v_P(c) - n_P
    std::vector<std::pair<ECClosedPoint, int>> reqs;
    for (auto& P : constraint_pts) {
        ECFunction cfun{c, Poly::zero(), Poly::one()};
        int vc = c.deg() == 0 ? 0 : ec_valuation(ws, C, cfun, P);
        int r = vc - D.at(P);
        if (r > 0) reqs.emplace_back(P, r);
    }
    int total_rows = 0;
    for (auto& [P, r] : reqs) total_rows += r * P.deg;
    Mat Cons(total_rows, ncand);
    int row0 = 0;
    for (auto& [P, r] : reqs) {
        int d = P.deg;
        for (int j = 0; j < ncand; ++j) {
            ECFunction mono;
            if (j < na) {
                mono.a = p_shift(Poly::one(), j);
                mono.b = Poly::zero();
            } else {
                mono.a = Poly::zero();
                mono.b = p_shift(Poly::one(), j - na);
            }
            mono.c = Poly::one();
            auto coords = local_expand(ws, C, mono, P, r, 0);
            for (int k = 0; k < r * d; ++k) Cons.at(row0 + k, j) = coords[static_cast<size_t>(k)];
        }
        row0 += r * d;
    }
    Mat K = kernel_basis(F, Cons);
    std::vector<ECFunction> basis;
    for (int col = 0; col < K.nc; ++col) {
        ECFunction f;
        f.a = Poly::zero();
        f.b = Poly::zero();
        f.a.c.assign(static_cast<size_t>(na > 0 ? na : 0), 0);
        f.b.c.assign(static_cast<size_t>(nb > 0 ? nb : 0), 0);
        for (int j = 0; j < na; ++j) f.a.c[static_cast<size_t>(j)] = K.at(j, col);
        for (int j = 0; j < nb; ++j) f.b.c[static_cast<size_t>(j)] = K.at(na + j, col);
        f.a.normalize();
        f.b.normalize();
        f.c = c;
        basis.push_back(std::move(f));
    }
    return basis;
}

ECClosedPoint find_point_of_degree(Workspace& ws, const EllipticCurve& C, uint32_t m, uint64_t seed) {
    const SmallField& F = *C.F;
    uint64_t qm = 1;
    bool small = true;
    for (uint32_t i = 0; i < m; ++i) {
        qm *= F.q;
        if (qm > (1u << 16)) {
            small = false;
            break;
        }
    }
    if (small) {
        if (count_closed_points(C, static_cast<int>(m)) < 1) throw std::runtime_error("no point of that degree");
        if (m == 1) return rational_closed_points(C).front();
        // first orbit of exact size m in x-index order
        ExtField& E = ws.ext(F.q, m);
        for (uint64_t n = 0; n < qm; ++n) {
            Elt x = E.from_index(n);
            Elt h = E.add(E.scale(x, C.a[0]), E.from_base(C.a[2]));
            Elt rhs = E.add(E.add(E.mul(E.mul(x, x), x), E.scale(E.mul(x, x), C.a[1])),
                            E.add(E.scale(x, C.a[3]), E.from_base(C.a[4])));
            for (auto& y : solve_quadratic(E, h, rhs)) {
                Elt cx = x, cy = y;
                uint32_t orbit = m;
                for (uint32_t j = 1; j < m; ++j) {
                    cx = E.frob(cx);
                    cy = E.frob(cy);
                    if (cx == x && cy == y) {
                        orbit = j;
                        break;
                    }
                }
                if (orbit == m) return canonicalize_orbit(ws, C, static_cast<int>(m), x, y);
            }
        }
        throw std::runtime_error("no point of that degree");
    }
    ExtField& E = ws.ext(F.q, m);
    uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&] {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int tries = 0; tries < 100000; ++tries) {
        Elt x(m, 0);
        for (uint32_t i = 0; i < m; ++i) x[i] = static_cast<uint32_t>(next() % F.q);
        Elt h = E.add(E.scale(x, C.a[0]), E.from_base(C.a[2]));
        Elt rhs = E.add(E.add(E.mul(E.mul(x, x), x), E.scale(E.mul(x, x), C.a[1])),
                        E.add(E.scale(x, C.a[3]), E.from_base(C.a[4])));
        auto ys = solve_quadratic(E, h, rhs);
        for (auto& y : ys) {
            // orbit size: smallest e | m with Frob^e fixing the point
            uint32_t orbit = m;
            for (uint32_t e = 1; e < m; ++e) {
                if (m % e) continue;
                if (E.frob_iter(x, e) == x && E.frob_iter(y, e) == y) {
                    orbit = e;
                    break;
                }
            }
            if (orbit == m) return canonicalize_orbit(ws, C, static_cast<int>(m), x, y);
        }
    }
    throw std::runtime_error("point sampling exhausted its retry budget");
}

ECFunction ecf_mul(const SmallField& F, const EllipticCurve& C, const ECFunction& f, const ECFunction& g) {
    // (a1 + b1 y)(a2 + b2 y) with y^2 = g(x) - h(x) y
    Poly hx{{C.a[2], C.a[0]}};
    hx.normalize();
    Poly gx{{C.a[4], C.a[3], C.a[1], 1}};
    gx.normalize();
    Poly bb = p_mul(F, f.b, g.b);
    Poly a = p_add(F, p_mul(F, f.a, g.a), p_mul(F, bb, gx));
    Poly b = p_add(F, p_add(F, p_mul(F, f.a, g.b), p_mul(F, f.b, g.a)), p_neg(F, p_mul(F, bb, hx)));
    ECFunction out;
    out.a = a;
    out.b = b;
    out.c = p_mul(F, f.c, g.c);
    return out;
}

}  // namespace ccb
