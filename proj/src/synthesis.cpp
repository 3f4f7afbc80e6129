#include "ccbil/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccb {

namespace {

// evaluation matrices of one plan: F* into the product algebra at the cells,
// ev* into A_q(m,l) at Q^[l]; trivializations use the shift t^(mult_D(P))
struct EvalData {
    Mat F1, F2, F12;     // dimA x l(D1), l(D2), l(D1+D2)
    Mat ev1, ev2, ev12;  // ml x ...
    int dimA = 0;
};

EvalData eval_data_p1(Workspace& ws, const P1Plan& plan) {
    const SmallField& F = ws.field(plan.q);
    EvalData ed;
    P1Divisor D12 = dv_add(plan.D1, plan.D2);
    auto b1 = rr_basis_p1(F, plan.D1);
    auto b2 = rr_basis_p1(F, plan.D2);
    auto b12 = rr_basis_p1(F, D12);
    int dimA = 0;
    for (auto& [P, u] : plan.cells) dimA += P.deg() * u;
    ed.dimA = dimA;
    int ml = static_cast<int>(plan.m * plan.l);
    auto build_F = [&](const std::vector<P1Function>& basis, const P1Divisor& D) {
        Mat M(dimA, static_cast<int>(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j) {
            int row = 0;
            for (auto& [P, u] : plan.cells) {
                auto coords = eval_thickened(ws, F, basis[j], P, u, D.at(P));
                for (size_t k = 0; k < coords.size(); ++k) M.at(row + static_cast<int>(k), static_cast<int>(j)) = coords[k];
                row += P.deg() * u;
            }
        }
        return M;
    };
    auto build_ev = [&](const std::vector<P1Function>& basis, const P1Divisor& D) {
        Mat M(ml, static_cast<int>(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j) {
            auto coords = eval_thickened(ws, F, basis[j], plan.Q, static_cast<int>(plan.l), D.at(plan.Q));
            for (size_t k = 0; k < coords.size(); ++k) M.at(static_cast<int>(k), static_cast<int>(j)) = coords[k];
        }
        return M;
    };
    ed.F1 = build_F(b1, plan.D1);
    ed.F2 = build_F(b2, plan.D2);
    ed.F12 = build_F(b12, D12);
    ed.ev1 = build_ev(b1, plan.D1);
    ed.ev2 = build_ev(b2, plan.D2);
    ed.ev12 = build_ev(b12, D12);
    return ed;
}

EvalData eval_data_ec(Workspace& ws, const ECPlan& plan) {
    const EllipticCurve& C = *plan.C;
    EvalData ed;
    ECDivisor D12 = ecdv_add(plan.D1, plan.D2);
    auto b1 = rr_basis(ws, C, plan.D1);
    auto b2 = rr_basis(ws, C, plan.D2);
    auto b12 = rr_basis(ws, C, D12);
    int dimA = 0;
    for (auto& [P, u] : plan.cells) dimA += P.deg * u;
    ed.dimA = dimA;
    int ml = static_cast<int>(plan.m * plan.l);
    auto build_F = [&](const std::vector<ECFunction>& basis, const ECDivisor& D) {
        Mat M(dimA, static_cast<int>(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j) {
            int row = 0;
            for (auto& [P, u] : plan.cells) {
                auto coords = local_expand(ws, C, basis[j], P, u, D.at(P));
                for (size_t k = 0; k < coords.size(); ++k) M.at(row + static_cast<int>(k), static_cast<int>(j)) = coords[k];
                row += P.deg * u;
            }
        }
        return M;
    };
    auto build_ev = [&](const std::vector<ECFunction>& basis, const ECDivisor& D) {
        Mat M(ml, static_cast<int>(basis.size()));
        for (size_t j = 0; j < basis.size(); ++j) {
            auto coords = local_expand(ws, C, basis[j], plan.Q, static_cast<int>(plan.l), D.at(plan.Q));
            for (size_t k = 0; k < coords.size(); ++k) M.at(static_cast<int>(k), static_cast<int>(j)) = coords[k];
        }
        return M;
    };
    ed.F1 = build_F(b1, plan.D1);
    ed.F2 = build_F(b2, plan.D2);
    ed.F12 = build_F(b12, D12);
    ed.ev1 = build_ev(b1, plan.D1);
    ed.ev2 = build_ev(b2, plan.D2);
    ed.ev12 = build_ev(b12, D12);
    return ed;
}

// shared retraction/section assembly once the evaluation maps are built
BilinearAlgorithm assemble_core(Workspace& ws, uint32_t q, uint32_t m, uint32_t l,
                                const std::vector<std::pair<int, int>>& cell_shapes, const EvalData& ed,
                                const InnerResolver& inner, bool symmetric) {
    const SmallField& F = ws.field(q);
    int ml = static_cast<int>(m * l);
    if (rank(F, ed.ev1) != ml) throw std::runtime_error("assembly: L(D1) does not surject onto the target");
    if (rank(F, ed.ev2) != ml) throw std::runtime_error("assembly: L(D2) does not surject onto the target");
    if (rank(F, ed.F12) != ed.F12.nc) throw std::runtime_error("assembly: joint evaluation not injective");

    std::vector<BilinearAlgorithm> inners;
    inners.reserve(cell_shapes.size());
    for (auto [d, u] : cell_shapes) inners.push_back(inner(d, u, symmetric));
    BilinearAlgorithm sumalg = inners[0];
    for (size_t i = 1; i < inners.size(); ++i) sumalg = direct_sum(sumalg, inners[i]);
    if (sumalg.dim() != ed.dimA) throw std::runtime_error("assembly: product-space dimension mismatch");

    Mat S1 = right_inverse(F, ed.ev1);
    Mat S2 = right_inverse(F, ed.ev2);
    Mat rho = left_inverse(F, ed.F12);

    BilinearAlgorithm out;
    out.A = make_truncated_algebra(ws, q, m, l);
    out.phi = m_mul(F, sumalg.phi, m_mul(F, ed.F1, S1));
    out.psi = m_mul(F, sumalg.psi, m_mul(F, ed.F2, S2));
    out.w = m_mul(F, ed.ev12, m_mul(F, rho, sumalg.w));
    out.symmetric = symmetric && sumalg.symmetric;
    if (auto bad = verify(out))
        throw std::logic_error("assembled algorithm failed verification at basis pair (" +
                               std::to_string(bad->first) + "," + std::to_string(bad->second) + ")");
    return out;
}

}  // namespace

P1Plan make_p1_plan(Workspace& ws, uint32_t q, uint32_t m, uint32_t l, const std::vector<PlanCell>& cells) {
    const SmallField& F = ws.field(q);
    P1Plan plan;
    plan.q = q;
    plan.m = m;
    plan.l = l;
    plan.Q = P1Point::finite(canonical_irreducible(F, static_cast<int>(m)));
    // assign concrete points: enumeration order per degree, larger u first
    std::map<int, long> need;
    for (auto& c : cells) need[c.d] += c.count;
    std::map<int, std::vector<P1Point>> pool;
    for (auto& [d, n] : need) pool[d] = p1_points_of_degree(F, d, n);
    std::map<int, size_t> used;
    std::vector<PlanCell> order = cells;
    std::sort(order.begin(), order.end(), [](const PlanCell& a, const PlanCell& b) {
        return a.d != b.d ? a.d < b.d : a.u > b.u;
    });
    for (auto& c : order)
        for (int i = 0; i < c.count; ++i) {
            plan.cells.emplace_back(pool[c.d][used[c.d]++], c.u);
            plan.G.add(plan.cells.back().first, c.u);
        }
    int mll = static_cast<int>(m * l);
    plan.D1.add(P1Point::infinity(), mll - 1);
    plan.D2 = plan.D1;
    plan.symmetric = true;
    return plan;
}

CondStatus check_conditions(Workspace& ws, const P1Plan& plan, bool matrix_checks) {
    const SmallField& F = ws.field(plan.q);
    int mll = static_cast<int>(plan.m * plan.l);
    P1Divisor D12 = dv_add(plan.D1, plan.D2);
    bool i_prime = dv_add(D12, dv_neg(plan.G)).deg() < 0;  // genus 0: l(D)=0 iff deg < 0
    P1Divisor lQ;
    lQ.add(plan.Q, static_cast<int>(plan.l));
    bool ii1 = dv_add(plan.D1, dv_neg(lQ)).deg() >= -1;  // i(D)=0 iff deg >= -1 at genus 0
    bool ii2 = dv_add(plan.D2, dv_neg(lQ)).deg() >= -1;
    if (matrix_checks) {
        EvalData ed = eval_data_p1(ws, plan);
        bool inj = rank(F, ed.F12) == ed.F12.nc;
        if (inj != i_prime) throw std::logic_error("(i) and (i') disagree on P^1");
        if (ii1 && rank(F, ed.ev1) != mll) throw std::logic_error("(ii'_1) holds but ev1 not surjective");
        if (ii2 && rank(F, ed.ev2) != mll) throw std::logic_error("(ii'_2) holds but ev2 not surjective");
    }
    if (!i_prime) return CondStatus::FAIL_I;
    if (!ii1) return CondStatus::FAIL_II1;
    if (!ii2) return CondStatus::FAIL_II2;
    return CondStatus::READY;
}

CondStatus check_conditions(Workspace& ws, const ECPlan& plan, bool matrix_checks) {
    const EllipticCurve& C = *plan.C;
    const SmallField& F = *C.F;
    int mll = static_cast<int>(plan.m * plan.l);
    ECDivisor D12 = ecdv_add(plan.D1, plan.D2);
    bool i_prime = l_dim(ws, C, ecdv_add(D12, ecdv_neg(plan.G))) == 0;
    ECDivisor lQ;
    lQ.add(plan.Q, static_cast<int>(plan.l));
    bool ii1 = is_nonspecial_shifted(ws, C, plan.D1, lQ);
    bool ii2 = is_nonspecial_shifted(ws, C, plan.D2, lQ);
    if (matrix_checks) {
        EvalData ed = eval_data_ec(ws, plan);
        bool inj = rank(F, ed.F12) == ed.F12.nc;
        if (inj != i_prime) throw std::logic_error("(i) and (i') disagree on the curve");
        if (ii1 && rank(F, ed.ev1) != mll) throw std::logic_error("(ii'_1) holds but ev1 not surjective");
        if (ii2 && rank(F, ed.ev2) != mll) throw std::logic_error("(ii'_2) holds but ev2 not surjective");
    }
    if (!i_prime) return CondStatus::FAIL_I;
    if (!ii1) return CondStatus::FAIL_II1;
    if (!ii2) return CondStatus::FAIL_II2;
    return CondStatus::READY;
}

BilinearAlgorithm assemble(Workspace& ws, const P1Plan& plan, const InnerResolver& inner) {
    if (check_conditions(ws, plan, false) != CondStatus::READY) throw std::invalid_argument("plan is not READY");
    EvalData ed = eval_data_p1(ws, plan);
    std::vector<std::pair<int, int>> shapes;
    for (auto& [P, u] : plan.cells) shapes.emplace_back(P.deg(), u);
    return assemble_core(ws, plan.q, plan.m, plan.l, shapes, ed, inner, plan.symmetric);
}

BilinearAlgorithm assemble(Workspace& ws, const ECPlan& plan, const InnerResolver& inner) {
    if (check_conditions(ws, plan, false) != CondStatus::READY) throw std::invalid_argument("plan is not READY");
    EvalData ed = eval_data_ec(ws, plan);
    std::vector<std::pair<int, int>> shapes;
    for (auto& [P, u] : plan.cells) shapes.emplace_back(P.deg, u);
    return assemble_core(ws, plan.C->F->q, plan.m, plan.l, shapes, ed, inner, plan.symmetric);
}

namespace {

std::vector<ECClosedPoint> nonzero_rational(const EllipticCurve& C) {
    auto pts = rational_closed_points(C);
    return {pts.begin() + 1, pts.end()};  // drop infinity
}

bool all_two_torsion(Workspace& ws, const EllipticCurve& C) {
    ExtField& E1 = ws.ext(C.F->q, 1);
    for (auto& P : nonzero_rational(C)) {
        ECPoint p;
        p.x = P.x;
        p.y = P.y;
        if (!ec_smul(C, E1, 2, p).inf) return false;
    }
    return true;
}

}  // namespace

std::pair<ECDivisor, ECDivisor> genus1_select(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q,
                                              uint32_t l, const ECDivisor& G, char g1case) {
    int mll = static_cast<int>(l) * Q.deg;
    ECDivisor lQ;
    lQ.add(Q, static_cast<int>(l));
    ECClosedPoint inf = ECClosedPoint::infinity();
    auto zdiv = [&](const ECClosedPoint& R) {
        ECDivisor Z;
        Z.add(R, 1);
        Z.add(inf, -1);
        return Z;
    };
    auto pts = nonzero_rational(C);
    switch (g1case) {
        case 'a': {
            if (G.deg() != 2 * mll) throw std::invalid_argument("case a needs deg G = 2ml");
            if (C.n_rational() < 3) throw std::invalid_argument("case a needs |X(F_q)| >= 3");
            ECDivisor D1 = ecdv_add(lQ, zdiv(pts[0]));
            for (auto& R : pts) {
                ECDivisor D2 = ecdv_add(lQ, zdiv(R));
                if (l_dim(ws, C, ecdv_add(ecdv_add(D1, D2), ecdv_neg(G))) == 0) return {D1, D2};
            }
            throw std::logic_error("case a found no second branch");
        }
        case 'b': {
            if (G.deg() != 2 * mll) throw std::invalid_argument("case b needs deg G = 2ml");
            if (C.n_rational() < 2) throw std::invalid_argument("case b needs |X(F_q)| >= 2");
            bool two_tor = all_two_torsion(ws, C);
            if (two_tor && sigma(ws, C, G).inf)
                throw std::invalid_argument("case b rejected: group all 2-torsion and sigma(G) = infinity");
            for (auto& R : pts) {
                ECDivisor D = ecdv_add(lQ, zdiv(R));
                if (l_dim(ws, C, ecdv_add(ecdv_add(D, D), ecdv_neg(G))) == 0) return {D, D};
            }
            throw std::logic_error("case b found no divisor although its hypothesis holds");
        }
        case 'c': {
            if (G.deg() < 2 * mll + 1) throw std::invalid_argument("case c needs deg G >= 2ml+1");
            if (C.n_rational() < 2) throw std::invalid_argument("case c needs |X(F_q)| >= 2");
            ECDivisor D = ecdv_add(lQ, zdiv(pts[0]));
            return {D, D};
        }
        case 'd': {
            if (G.deg() < 2 * mll + 3) throw std::invalid_argument("case d needs deg G >= 2ml+3");
            ECDivisor D;
            D.add(inf, mll + 1);
            return {D, D};
        }
        default:
            throw std::invalid_argument("unknown genus-1 case");
    }
}

std::pair<ECDivisor, ECDivisor> iterative_search_asym(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q,
                                                      uint32_t l, const ECDivisor& G,
                                                      const std::vector<ECClosedPoint>& S, SearchTrace& trace) {
    const int g = 1;  // genus of the curves this artifact instantiates
    if (static_cast<int>(S.size()) < 2 * g + 1) throw std::invalid_argument("need at least 2g+1 rational points");
    int mll = static_cast<int>(l) * Q.deg;
    if (G.deg() < 2 * mll + g - 1) throw std::invalid_argument("need deg G >= 2ml+g-1");
    ECDivisor lQ;
    lQ.add(Q, static_cast<int>(l));

    auto sigma_of = [&](const ECDivisor& D, const char* what) {
        ++trace.counter;
        trace.log.push_back(std::string("class query (") + what + ")");
        return sigma(ws, C, D);
    };
    // one step: find the first P in S passing the degree-0 conditions; each
    // condition has a single bad class, computed by one query
    auto advance = [&](ECDivisor Y, bool with_G, const ECDivisor& D1) {
        for (int i = -1; i < g - 1; ++i) {
            std::vector<ECClosedPoint> bad;
            {
                ECDivisor A = ecdv_add(Y, ecdv_neg(lQ));  // want l(A + P) = 0
                if (A.deg() + 1 == 0) bad.push_back(sigma_of(ecdv_neg(A), "zero-dimensionality of Y_i + P - lQ"));
            }
            if (with_G) {
                ECDivisor A = ecdv_add(ecdv_add(D1, Y), ecdv_neg(G));
                if (A.deg() + 1 == 0) bad.push_back(sigma_of(ecdv_neg(A), "zero-dimensionality of D1 + Z_i + P - G"));
            }
            const ECClosedPoint* chosen = nullptr;
            for (auto& P : S) {
                bool ok = true;
                for (auto& B : bad) ok &= !(P == B);
                if (ok) {
                    chosen = &P;
                    break;
                }
            }
            if (!chosen) throw std::logic_error("no admissible point: contradicts the failure-count bound");
            Y.add(*chosen, 1);
            trace.log.push_back("step " + std::to_string(i + 1) + ": added a rational point");
        }
        return Y;
    };

    ECDivisor Y;
    Y.add(S[0], mll - 1);
    ECDivisor D1 = advance(Y, false, ECDivisor{});
    ECDivisor Z;
    Z.add(S[0], mll - 1);
    ECDivisor D2 = advance(Z, true, D1);
    return {D1, D2};
}

ECDivisor iterative_search_sym(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q, uint32_t l,
                               const ECDivisor& G, const std::vector<ECClosedPoint>& T, SearchTrace& trace) {
    const int g = 1;
    if (static_cast<int>(T.size()) < 5 * g + 1) throw std::invalid_argument("need at least 5g+1 rational points");
    int mll = static_cast<int>(l) * Q.deg;
    if (G.deg() < 2 * mll + g - 1) throw std::invalid_argument("need deg G >= 2ml+g-1");
    ECDivisor lQ;
    lQ.add(Q, static_cast<int>(l));
    ExtField& E1 = ws.ext(C.F->q, 1);

    ECDivisor Td;
    Td.add(T[0], mll - 1);
    for (int i = -1; i < g - 1; ++i) {
        std::vector<ECClosedPoint> bad;
        {
            ECDivisor A = ecdv_add(Td, ecdv_neg(lQ));
            if (A.deg() + 1 == 0) {
                ++trace.counter;
                trace.log.push_back("class query (zero-dimensionality of T_i + P - lQ)");
                bad.push_back(sigma(ws, C, ecdv_neg(A)));
            }
        }
        {
            ECDivisor A = ecdv_add(ecdv_scale(Td, 2), ecdv_neg(G));  // want l(A + 2P) = 0
            if (A.deg() + 2 == 0) {
                ++trace.counter;
                trace.log.push_back("class query (zero-dimensionality of 2T_i + 2P - G)");
                ECClosedPoint R0 = sigma(ws, C, ecdv_neg(A));
                // bad points are the halves of R0 in the rational group
                for (auto& P : rational_closed_points(C)) {
                    ECPoint p;
                    if (!P.inf) {
                        p.x = P.x;
                        p.y = P.y;
                    } else {
                        p = ECPoint::infinity();
                    }
                    ECPoint dbl = ec_smul(C, E1, 2, p);
                    bool matches = R0.inf ? dbl.inf : (!dbl.inf && dbl.x == R0.x && dbl.y == R0.y);
                    if (matches) bad.push_back(P);
                }
            }
        }
        const ECClosedPoint* chosen = nullptr;
        for (auto& P : T) {
            bool ok = true;
            for (auto& B : bad) ok &= !(P == B);
            if (ok) {
                chosen = &P;
                break;
            }
        }
        if (!chosen) throw std::logic_error("no admissible point: contradicts the failure-count bound");
        Td.add(*chosen, 1);
        trace.log.push_back("step " + std::to_string(i + 1) + ": added a rational point");
    }
    return Td;
}

std::optional<std::pair<ECDivisor, ECDivisor>> exhaustive_class_search(Workspace& ws, const EllipticCurve& C,
                                                                       const ECClosedPoint& Q, uint32_t l,
                                                                       const ECDivisor& G) {
    ECDivisor lQ;
    lQ.add(Q, static_cast<int>(l));
    ECClosedPoint inf = ECClosedPoint::infinity();
    auto pts = nonzero_rational(C);
    for (auto& R1 : pts) {
        ECDivisor D1 = lQ;
        D1.add(R1, 1);
        D1.add(inf, -1);
        if (!is_nonspecial_shifted(ws, C, D1, lQ)) continue;
        for (auto& R2 : pts) {
            ECDivisor D2 = lQ;
            D2.add(R2, 1);
            D2.add(inf, -1);
            if (!is_nonspecial_shifted(ws, C, D2, lQ)) continue;
            if (l_dim(ws, C, ecdv_add(ecdv_add(D1, D2), ecdv_neg(G))) == 0) return std::make_pair(D1, D2);
        }
    }
    return std::nullopt;
}

std::vector<std::pair<ECClosedPoint, int>> assign_ec_points(Workspace& ws, const EllipticCurve& C,
                                                            const std::vector<PlanCell>& cells,
                                                            const ECClosedPoint* avoid) {
    std::map<int, long> need;
    for (auto& c : cells) need[c.d] += c.count;
    std::map<int, std::vector<ECClosedPoint>> pool;
    for (auto& [d, n] : need) {
        auto pts = closed_points(ws, C, d);
        if (avoid) {
            auto it = std::find(pts.begin(), pts.end(), *avoid);
            if (it != pts.end()) pts.erase(it);
        }
        if (static_cast<long>(pts.size()) < n) throw std::runtime_error("not enough points of degree " + std::to_string(d));
        pool[d] = std::move(pts);
    }
    std::vector<PlanCell> order = cells;
    std::sort(order.begin(), order.end(),
              [](const PlanCell& a, const PlanCell& b) { return a.d != b.d ? a.d < b.d : a.u > b.u; });
    std::map<int, size_t> used;
    std::vector<std::pair<ECClosedPoint, int>> out;
    for (auto& c : order)
        for (int i = 0; i < c.count; ++i) out.emplace_back(pool[c.d][used[c.d]++], c.u);
    return out;
}

ECDivisor divisor_from_cells(const std::vector<std::pair<ECClosedPoint, int>>& cells) {
    ECDivisor G;
    for (auto& [P, u] : cells) G.add(P, u);
    return G;
}

P1Divisor divisor_from_cells_p1(const std::vector<std::pair<P1Point, int>>& cells) {
    P1Divisor G;
    for (auto& [P, u] : cells) G.add(P, u);
    return G;
}

std::optional<ECPlan> make_ec_plan(Workspace& ws, const EllipticCurve& C, uint32_t m, uint32_t l,
                                   const std::vector<PlanCell>& cells, G1Mode mode, uint64_t seed,
                                   SearchTrace* trace) {
    ECPlan plan;
    plan.C = &C;
    plan.m = m;
    plan.l = l;
    // existence of Q: exact count where the recurrence stays in range, else
    // the sufficient bound 2g+1 <= q^((m-1)/2)(sqrt(q)-1), ample at genus 1
    if (static_cast<double>(m) * std::log2(static_cast<double>(C.F->q)) <= 48) {
        if (count_closed_points(C, static_cast<int>(m)) < 1) return std::nullopt;
    }
    plan.Q = find_point_of_degree(ws, C, m, seed);
    plan.cells = assign_ec_points(ws, C, cells, &plan.Q);
    plan.G = divisor_from_cells(plan.cells);
    SearchTrace local;
    SearchTrace& tr = trace ? *trace : local;
    switch (mode) {
        case G1Mode::case_a:
        case G1Mode::case_b:
        case G1Mode::case_c:
        case G1Mode::case_d: {
            char c = mode == G1Mode::case_a ? 'a' : mode == G1Mode::case_b ? 'b' : mode == G1Mode::case_c ? 'c' : 'd';
            auto [D1, D2] = genus1_select(ws, C, plan.Q, l, plan.G, c);
            plan.D1 = D1;
            plan.D2 = D2;
            plan.g1case = c;
            plan.symmetric = (D1.mult == D2.mult);
            break;
        }
        case G1Mode::iter_asym: {
            auto S = rational_closed_points(C);
            auto [D1, D2] = iterative_search_asym(ws, C, plan.Q, l, plan.G, S, tr);
            plan.D1 = D1;
            plan.D2 = D2;
            plan.symmetric = (D1.mult == D2.mult);
            break;
        }
        case G1Mode::iter_sym: {
            auto T = rational_closed_points(C);
            ECDivisor D = iterative_search_sym(ws, C, plan.Q, l, plan.G, T, tr);
            plan.D1 = D;
            plan.D2 = D;
            plan.symmetric = true;
            break;
        }
        case G1Mode::class_search: {
            auto found = exhaustive_class_search(ws, C, plan.Q, l, plan.G);
            if (!found) return std::nullopt;
            plan.D1 = found->first;
            plan.D2 = found->second;
            plan.symmetric = (plan.D1.mult == plan.D2.mult);
            break;
        }
    }
    if (check_conditions(ws, plan, false) != CondStatus::READY) return std::nullopt;
    return plan;
}

}  // namespace ccb
