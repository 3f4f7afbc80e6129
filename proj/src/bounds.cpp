#include "ccbil/bounds.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccb {

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::fixture: return "fixture";
        case Strategy::genus0: return "genus0";
        case Strategy::genus1: return "genus1";
        case Strategy::composite_descent: return "composite-descent";
        case Strategy::concatenation: return "concatenation";
        case Strategy::brute_force: return "brute-force";
        case Strategy::naive: return "naive";
    }
    return "?";
}

namespace {

bool fits_small_field(uint32_t q, uint32_t d) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < d; ++i) {
        v *= q;
        if (v > (1u << 16)) return false;
    }
    return true;
}

uint32_t pow_u32(uint32_t q, uint32_t d) {
    uint32_t v = 1;
    for (uint32_t i = 0; i < d; ++i) v *= q;
    return v;
}

}  // namespace

void BoundTable::store(const BoundCertificate& cert) {
    auto it = table_.find(cert.key);
    if (it != table_.end() && it->second.bound < cert.bound)
        throw std::logic_error("bound table update would increase a stored bound");
    table_[cert.key] = cert;
    std::ostringstream os;
    os << cert.key.q << " " << cert.key.m << " " << cert.key.l << " " << (cert.key.sym ? 1 : 0) << " "
       << cert.bound << " " << strategy_name(cert.recipe.s);
    log_.push_back(os.str());
}

std::optional<BoundTable::Genus1Pick> BoundTable::genus1_best(uint32_t q, uint32_t m, uint32_t l, bool sym) {
    if (q > 16) return std::nullopt;  // exhaustive Weierstrass scans stay desk-scale
    int mll = static_cast<int>(m * l);
    CellCost cost = [&](int d, int u) -> std::optional<long> {
        if (d * u >= mll) return std::nullopt;  // recursion must shrink
        return improve(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), sym).bound;
    };
    int tmax = static_cast<int>(2.0 * std::sqrt(static_cast<double>(q)));
    std::optional<Genus1Pick> best;
    for (int t = -tmax; t <= tmax; ++t) {
        const EllipticCurve* C = curve_with_trace(ws_, q, t);
        if (!C) continue;
        if (static_cast<double>(m) * std::log2(static_cast<double>(q)) <= 48 &&
            count_closed_points(*C, static_cast<int>(m)) < 1)
            continue;
        int dmax = 1;
        {
            long capacity = 0;
            while (dmax <= 8) {
                long b = count_closed_points(*C, dmax);
                if (static_cast<uint32_t>(dmax) == m && b > 0) b -= 1;  // reserve Q
                capacity += static_cast<long>(dmax) * b;
                if (capacity >= 2 * mll + 3 + 8) break;
                ++dmax;
            }
            dmax = std::min(dmax, 8);
        }
        std::vector<long> budgets(static_cast<size_t>(dmax) + 1, 0);
        for (int d = 1; d <= dmax; ++d) {
            long b = count_closed_points(*C, d);
            if (static_cast<uint32_t>(d) == m && b > 0) b -= 1;
            budgets[static_cast<size_t>(d)] = b;
        }
        int maxu = std::min(mll - 1 > 0 ? mll - 1 : 1, 8);
        struct Cand {
            G1Mode mode;
            int target;
            bool exact;
        };
        std::vector<Cand> cands;
        if (!sym && C->n_rational() >= 3) cands.push_back({G1Mode::case_a, 2 * mll, true});
        if (C->n_rational() >= 2) cands.push_back({G1Mode::case_b, 2 * mll, true});
        if (C->n_rational() >= 2) cands.push_back({G1Mode::case_c, 2 * mll + 1, false});
        cands.push_back({G1Mode::case_d, 2 * mll + 3, false});
        for (auto& cand : cands) {
            auto plan = plan_cells(budgets, cand.target, cand.exact, maxu, cost);
            if (!plan) continue;
            if (best && plan->cost >= best->cost) continue;
            try {
                auto ec = make_ec_plan(ws_, *C, m, l, plan->cells, cand.mode);
                if (!ec) continue;
                if (sym && !ec->symmetric) continue;
            } catch (const std::exception&) {
                continue;
            }
            best = Genus1Pick{t, cand.mode, plan->cells, plan->cost};
        }
    }
    return best;
}

const BoundCertificate& BoundTable::improve(uint32_t q, uint32_t m, uint32_t l, bool sym) {
    CertKey key{q, m, l, sym};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    int mll = static_cast<int>(m * l);

    BoundCertificate best;
    best.key = key;
    best.bound = static_cast<long>(mll) * (mll + 1) / 2;
    best.recipe.s = Strategy::naive;

    // exact search on tiny algebras
    bool brute_ok = ((mll <= 2) || (mll == 3 && q == 2)) && fits_small_field(q, 2 * m * l);
    if (brute_ok && best.bound > 1) {
        auto A = make_truncated_algebra(ws_, q, m, l);
        auto r = brute_force_rank(A, static_cast<int>(best.bound) - 1, sym);
        if (r.rank && *r.rank < best.bound) {
            best.bound = *r.rank;
            best.recipe = Recipe{};
            best.recipe.s = Strategy::brute_force;
        }
    }

    // genus 0
    if (mll >= 2) {
        CellCost cost = [&](int d, int u) -> std::optional<long> {
            if (d * u >= mll) return std::nullopt;
            return improve(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), sym).bound;
        };
        int target = 2 * mll - 1;
        int dmax = 1;
        {
            long capacity = 0;
            while (dmax <= 8) {
                capacity += static_cast<long>(dmax) *
                            (dmax == 1 ? q + 1 : irreducible_count(ws_.field(q), dmax));
                if (capacity >= target + 8) break;
                ++dmax;
            }
            dmax = std::min(dmax, 8);
        }
        std::vector<long> budgets(static_cast<size_t>(dmax) + 1, 0);
        budgets[1] = q + 1;
        for (int d = 2; d <= dmax; ++d) budgets[static_cast<size_t>(d)] = irreducible_count(ws_.field(q), d);
        int maxu = std::min(mll - 1, 8);
        auto plan = plan_cells(budgets, target, false, maxu, cost);
        if (plan && plan->cost < best.bound) {
            best.bound = plan->cost;
            best.recipe = Recipe{};
            best.recipe.s = Strategy::genus0;
            best.recipe.cells = plan->cells;
        }
    }

    // genus 1
    if (mll >= 2) {
        auto pick = genus1_best(q, m, l, sym);
        if (pick && pick->cost < best.bound) {
            best.bound = pick->cost;
            best.recipe = Recipe{};
            best.recipe.s = Strategy::genus1;
            best.recipe.trace = pick->trace;
            best.recipe.mode = pick->mode;
            best.recipe.cells = pick->cells;
        }
    }

    // composite descent: m = d*e with d, e >= 2
    for (uint32_t d = 2; d * 2 <= m; ++d) {
        if (m % d) continue;
        if (!fits_small_field(q, d)) continue;
        uint32_t e = m / d;
        long b = improve(q, d, 1, sym).bound * improve(pow_u32(q, d), e, l, sym).bound;
        if (b < best.bound) {
            best.bound = b;
            best.recipe = Recipe{};
            best.recipe.s = Strategy::composite_descent;
            best.recipe.split_d = d;
        }
    }

    // concatenation through mu_q(m) * Mhat_{q^m}(l)
    if (l >= 2 && m >= 2 && fits_small_field(q, m)) {
        long b = improve(q, m, 1, sym).bound * improve(pow_u32(q, m), 1, l, sym).bound;
        if (b < best.bound) {
            best.bound = b;
            best.recipe = Recipe{};
            best.recipe.s = Strategy::concatenation;
        }
    }

    store(best);
    return table_.at(key);
}

BilinearAlgorithm BoundTable::rebuild(uint32_t q, uint32_t m, uint32_t l, bool sym) {
    return rebuild(improve(q, m, l, sym));
}

BilinearAlgorithm BoundTable::rebuild(const BoundCertificate& cert) {
    uint32_t q = cert.key.q, m = cert.key.m, l = cert.key.l;
    bool sym = cert.key.sym;
    BilinearAlgorithm alg;
    switch (cert.recipe.s) {
        case Strategy::naive:
            alg = naive_symmetric(make_truncated_algebra(ws_, q, m, l));
            break;
        case Strategy::brute_force: {
            auto r = brute_force_rank(make_truncated_algebra(ws_, q, m, l), static_cast<int>(cert.bound), sym);
            if (!r.witness) throw std::logic_error("brute-force rebuild found no witness");
            alg = *r.witness;
            break;
        }
        case Strategy::genus0: {
            auto plan = make_p1_plan(ws_, q, m, l, cert.recipe.cells);
            if (!sym) plan.symmetric = false;
            alg = assemble(ws_, plan, [&](int d, int u, bool s) {
                return rebuild(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
            });
            break;
        }
        case Strategy::genus1: {
            const EllipticCurve* C = curve_with_trace(ws_, q, cert.recipe.trace);
            if (!C) throw std::logic_error("certificate curve no longer found");
            auto plan = make_ec_plan(ws_, *C, m, l, cert.recipe.cells, cert.recipe.mode);
            if (!plan) throw std::logic_error("certificate plan is no longer READY");
            ECPlan p = *plan;
            if (!sym) p.symmetric = false;
            alg = assemble(ws_, p, [&](int d, int u, bool s) {
                return rebuild(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
            });
            break;
        }
        case Strategy::composite_descent: {
            uint32_t d = cert.recipe.split_d, e = m / cert.recipe.split_d;
            auto outer = rebuild(q, d, 1, sym);
            auto inner = rebuild(pow_u32(q, d), e, l, sym);
            auto cat = concatenate(ws_, outer, inner, ws_.ext(q, d));
            alg = canonicalize_truncated(ws_, cat, q, m, l, static_cast<int>(m));
            break;
        }
        case Strategy::concatenation: {
            auto outer = rebuild(q, m, 1, sym);
            auto inner = rebuild(pow_u32(q, m), 1, l, sym);
            auto cat = concatenate(ws_, outer, inner, ws_.ext(q, m));
            alg = canonicalize_truncated(ws_, cat, q, m, l, static_cast<int>(m));
            break;
        }
        case Strategy::fixture:
            if (q == 2 && m == 3 && l == 1) {
                alg = f8_plane_fixture(ws_);
                break;
            }
            throw std::logic_error("unknown fixture certificate");
    }
    if (verify(alg)) throw std::logic_error("certificate rebuild failed verification");
    if (alg.length() != cert.bound) throw std::logic_error("certificate rebuild length mismatch");
    if (sym && !alg.symmetric) throw std::logic_error("symmetric certificate rebuilt asymmetric");
    return alg;
}

void BoundTable::load_reference_costs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference cost table: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        uint32_t q;
        int d, u;
        long c;
        if (!(is >> q >> d >> u >> c)) throw std::runtime_error("malformed reference cost line: " + line);
        refcosts_[{q, d, u}] = c;
    }
}

std::optional<long> BoundTable::reference_cost(uint32_t q, int d, int u) const {
    auto it = refcosts_.find({q, d, u});
    if (it == refcosts_.end()) return std::nullopt;
    return it->second;
}

std::string BoundTable::export_tsv() const {
    std::ostringstream os;
    os << "q\tm\tl\tsym\tbound\tstrategy\n";
    for (auto& [k, cert] : table_)
        os << k.q << "\t" << k.m << "\t" << k.l << "\t" << (k.sym ? 1 : 0) << "\t" << cert.bound << "\t"
           << strategy_name(cert.recipe.s) << "\n";
    return os.str();
}

BilinearAlgorithm f8_plane_fixture(Workspace& ws) {
    BilinearAlgorithm a;
    a.A = make_field_algebra(ws, 2, 3);
    const uint32_t phi[6][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    const uint32_t w[3][6] = {{1, 1, 1, 0, 0, 1}, {1, 0, 0, 1, 0, 1}, {1, 1, 0, 0, 1, 0}};
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

namespace {

FixtureReport report(std::string name, long target, long achieved, bool verified, std::string notes = "") {
    return FixtureReport{std::move(name), target, achieved, verified, std::move(notes)};
}

std::vector<FixtureReport> fixture_mu2_163(BoundTable& T) {
    Workspace& ws = T.workspace();
    std::vector<FixtureReport> out;
    const EllipticCurve* C = curve_from_coeffs(ws, 2, {0, 0, 1, 1, 1});
    if (!T.has_reference_costs()) throw std::runtime_error("mu2-163 needs the reference inner-cost table");
    CellCost refcost = [&](int d, int u) { return T.reference_cost(2, d, u); };
    std::vector<long> budgets(9, 0);
    for (int d = 1; d <= 8; ++d) budgets[static_cast<size_t>(d)] = count_closed_points(*C, d);
    auto plan = plan_cells(budgets, 2 * 163 + 3, false, 8, refcost);
    bool plan_ok = plan.has_value();
    long planned_cost = plan ? plan->cost : -1;
    int planned_deg = plan ? plan->degree : -1;
    std::vector<PlanCell> expect = {{1, 5, 1}, {2, 1, 2}, {3, 1, 4}, {4, 1, 5}, {5, 1, 8}, {6, 1, 8}, {8, 1, 25}};
    bool multiset_ok = plan && plan->cells.size() == expect.size();
    if (multiset_ok)
        for (size_t i = 0; i < expect.size(); ++i)
            multiset_ok &= plan->cells[i].d == expect[i].d && plan->cells[i].u == expect[i].u &&
                           plan->cells[i].count == expect[i].count;
    out.push_back(report("mu2-163/plan", 910, planned_cost, plan_ok && multiset_ok && planned_deg == 329,
                         "conditional on the external inner-cost table"));
    if (!plan_ok) return out;

    auto ec = make_ec_plan(ws, *C, 163, 1, plan->cells, G1Mode::case_d);
    if (!ec) {
        out.push_back(report("mu2-163/assembled", 910, -1, false, "case d plan not READY"));
        return out;
    }
    ECPlan p = *ec;
    p.symmetric = false;
    auto alg = assemble(ws, p, [&](int d, int u, bool s) {
        return T.rebuild(2, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
    });
    bool ok = !verify(alg);
    out.push_back(report("mu2-163/assembled", 910, alg.length(), ok,
                         "own verified inner witnesses; the 910 total holds for the reference inner costs"));
    return out;
}

std::vector<FixtureReport> fixture_mu3_97(BoundTable& T) {
    Workspace& ws = T.workspace();
    std::vector<FixtureReport> out;
    const EllipticCurve* C = curve_from_coeffs(ws, 3, {0, 1, 0, 2, 1});  // y^2 = x^3 + x^2 + 2x + 1
    CellCost cost = [&](int d, int u) -> std::optional<long> {
        if (d * u >= 97) return std::nullopt;
        return T.improve(3, static_cast<uint32_t>(d), static_cast<uint32_t>(u), false).bound;
    };
    std::vector<long> budgets(9, 0);
    for (int d = 1; d <= 8; ++d) budgets[static_cast<size_t>(d)] = count_closed_points(*C, d);
    auto plan = plan_cells(budgets, 2 * 97, true, 8, cost);
    if (!plan) {
        out.push_back(report("mu3-97", 426, -1, false, "no exact-degree plan found"));
        return out;
    }
    auto ec = make_ec_plan(ws, *C, 97, 1, plan->cells, G1Mode::case_a);
    if (!ec) {
        out.push_back(report("mu3-97", 426, -1, false, "case a selection failed"));
        return out;
    }
    auto alg = assemble(ws, *ec, [&](int d, int u, bool s) {
        return T.rebuild(3, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
    });
    out.push_back(report("mu3-97", 426, alg.length(), !verify(alg),
                         "own divisor G of degree 194; not a reproduction of the reference G"));
    return out;
}

// planned cells for one pinned curve: minimum-cost exact-degree-2ml divisor
std::optional<PlanResult> plan_on_curve(BoundTable& T, const EllipticCurve& C, uint32_t m, uint32_t l, int target,
                                        bool exact) {
    uint32_t q = C.F->q;
    int mll = static_cast<int>(m * l);
    CellCost cost = [&](int d, int u) -> std::optional<long> {
        if (d * u >= mll) return std::nullopt;
        return T.improve(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), false).bound;
    };
    int dmax = 1;
    long capacity = 0;
    while (dmax <= 8) {
        long b = count_closed_points(C, dmax);
        if (static_cast<uint32_t>(dmax) == m && b > 0) b -= 1;
        capacity += static_cast<long>(dmax) * b;
        if (capacity >= target + 8) break;
        ++dmax;
    }
    dmax = std::min(dmax, 8);
    std::vector<long> budgets(static_cast<size_t>(dmax) + 1, 0);
    for (int d = 1; d <= dmax; ++d) {
        long b = count_closed_points(C, d);
        if (static_cast<uint32_t>(d) == m && b > 0) b -= 1;
        budgets[static_cast<size_t>(d)] = b;
    }
    return plan_cells(budgets, target, exact, std::min(mll - 1, 8), cost);
}

std::vector<FixtureReport> fixture_mu_q_4_2(BoundTable& T) {
    Workspace& ws = T.workspace();
    std::vector<FixtureReport> out;
    struct Row {
        uint32_t q;
        long len;
        int trace;
        std::vector<PlanCell> multiset;
    };
    // the reference configurations: trace choices and divisor multisets
    std::vector<Row> rows = {
        {2, 26, -1, {{1, 3, 4}, {2, 1, 2}}},
        {3, 23, -2, {{1, 1, 2}, {1, 2, 4}, {2, 1, 3}}},
        {4, 20, -3, {{1, 1, 8}, {2, 1, 4}}},
        {5, 19, -4, {{1, 1, 10}, {2, 1, 3}}},
        {7, 18, -5, {{1, 1, 12}, {2, 1, 2}}},
        {8, 17, -5, {{1, 1, 14}, {2, 1, 1}}},
        {9, 16, -6, {{1, 1, 16}}},
        {11, 16, -4, {{1, 1, 16}}},
        {13, 16, -2, {{1, 1, 16}}},
    };
    for (auto& row : rows) {
        const EllipticCurve* C = curve_with_trace(ws, row.q, row.trace);
        if (!C) {
            out.push_back(report("mu-q-4-2/q=" + std::to_string(row.q), row.len, -1, false, "no curve of that trace"));
            continue;
        }
        auto plan = plan_on_curve(T, *C, 4, 2, 16, true);
        if (!plan) {
            out.push_back(report("mu-q-4-2/q=" + std::to_string(row.q), row.len, -1, false, "no exact-degree plan"));
            continue;
        }
        bool multiset_ok = plan->cells.size() == row.multiset.size();
        if (multiset_ok)
            for (size_t i = 0; i < row.multiset.size(); ++i)
                multiset_ok &= plan->cells[i].d == row.multiset[i].d && plan->cells[i].u == row.multiset[i].u &&
                               plan->cells[i].count == row.multiset[i].count;
        auto ec = make_ec_plan(ws, *C, 4, 2, plan->cells, G1Mode::case_a);
        bool verified = false;
        long achieved = -1;
        if (ec) {
            ECPlan p = *ec;
            p.symmetric = false;
            auto alg = assemble(ws, p, [&](int d, int u, bool s) {
                return T.rebuild(row.q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
            });
            achieved = alg.length();
            verified = !verify(alg);
        }
        out.push_back(report("mu-q-4-2/q=" + std::to_string(row.q), row.len, achieved,
                             verified && multiset_ok && achieved == row.len,
                             multiset_ok ? "multiset matches" : "multiset differs"));
    }
    // the ex22 companions: eight rational points for q = 4 and 5
    for (auto [q, t] : std::vector<std::pair<uint32_t, int>>{{4, -3}, {5, -2}}) {
        const EllipticCurve* C = curve_with_trace(ws, q, t);
        bool ok = false;
        long achieved = -1;
        if (C) {
            auto plan = plan_on_curve(T, *C, 2, 2, 8, true);
            if (plan) {
                auto ec = make_ec_plan(ws, *C, 2, 2, plan->cells, G1Mode::case_a);
                if (ec) {
                    ECPlan p = *ec;
                    p.symmetric = false;
                    auto alg = assemble(ws, p, [&](int d, int u, bool s) {
                        return T.rebuild(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
                    });
                    achieved = alg.length();
                    ok = !verify(alg) && achieved == 8;
                }
            }
        }
        out.push_back(report("mu-q-2-2-genus1/q=" + std::to_string(q), 8, achieved, ok));
    }
    return out;
}

}  // namespace

std::vector<FixtureReport> reproduce_fixture(BoundTable& T, const std::string& name) {
    Workspace& ws = T.workspace();
    if (name == "f8-plane") {
        auto alg = f8_plane_fixture(ws);
        return {report("f8-plane", 6, alg.length(), !verify(alg) && alg.symmetric)};
    }
    if (name == "remark-asym-gap") {
        auto& F = ws.field(2);
        std::vector<uint32_t> dense(8, 0);
        dense[(0 * 2 + 1) * 2 + 0] = 1;
        dense[(1 * 2 + 0) * 2 + 0] = 1;
        auto A = make_algebra_from_dense(F, 2, dense);
        auto r = brute_force_rank(A, 6, false);
        auto rs = brute_force_rank(A, 6, true);
        std::vector<FixtureReport> out;
        out.push_back(report("remark-asym-gap/rank", 2, r.rank.value_or(-1), r.rank && *r.rank == 2));
        out.push_back(report("remark-asym-gap/symmetric-rank", 3, rs.rank.value_or(-1), rs.rank && *rs.rank == 3));
        return out;
    }
    if (name == "mu-q-2-2") {
        std::vector<FixtureReport> out;
        const std::pair<uint32_t, long> rows[] = {{4, 8}, {5, 8}, {7, 7}, {8, 7}, {9, 7}};
        for (auto [q, want] : rows) {
            auto& cert = T.improve(q, 2, 2, false);
            auto alg = T.rebuild(cert);
            out.push_back(report("mu-q-2-2/q=" + std::to_string(q), want, cert.bound,
                                 cert.bound == want && alg.length() == want));
        }
        return out;
    }
    if (name == "mu-q-4-2") return fixture_mu_q_4_2(T);
    if (name == "mu2-163") return fixture_mu2_163(T);
    if (name == "mu3-97") return fixture_mu3_97(T);
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace ccb
