#pragma once

#include "ccbil/bilinear.hpp"
#include "ccbil/curve_elliptic.hpp"
#include "ccbil/curve_p1.hpp"
#include "ccbil/planner.hpp"

namespace ccb {

enum class CondStatus { READY, FAIL_I, FAIL_II1, FAIL_II2 };

// resolves an inner multiplication algorithm for A_q(d,u)
using InnerResolver = std::function<BilinearAlgorithm(int d, int u, bool symmetric)>;

// interpolation data on P^1: target A_q(m,l) seen at Q^[l], evaluation cells
// u_i P_i forming G, auxiliary divisors D1, D2
struct P1Plan {
    uint32_t q = 0, m = 0, l = 0;
    P1Point Q;
    std::vector<std::pair<P1Point, int>> cells;  // (point, multiplicity), assembly order
    P1Divisor G, D1, D2;
    bool symmetric = false;
};

struct ECPlan {
    const EllipticCurve* C = nullptr;
    uint32_t m = 0, l = 0;
    ECClosedPoint Q;
    std::vector<std::pair<ECClosedPoint, int>> cells;
    ECDivisor G, D1, D2;
    bool symmetric = false;
    char g1case = '-';
};

// genus-0 plan: G from the given cells, D1 = D2 = (ml-1) * infinity, Q the
// canonical degree-m point
P1Plan make_p1_plan(Workspace& ws, uint32_t q, uint32_t m, uint32_t l, const std::vector<PlanCell>& cells);

// checks (i') l(D1+D2-G)=0 and (ii') i(Dk-lQ)=0; with matrix_checks also
// builds the evaluation maps and asserts (i)<=>(i') and (ii')=>(ii)
CondStatus check_conditions(Workspace& ws, const P1Plan& plan, bool matrix_checks = true);
CondStatus check_conditions(Workspace& ws, const ECPlan& plan, bool matrix_checks = true);

// retraction/section assembly of the verified algorithm; throws if the plan
// is not READY or the result fails verification
BilinearAlgorithm assemble(Workspace& ws, const P1Plan& plan, const InnerResolver& inner);
BilinearAlgorithm assemble(Workspace& ws, const ECPlan& plan, const InnerResolver& inner);

// log of the divisor search: chosen increments and class-group queries
struct SearchTrace {
    std::vector<std::string> log;
    int counter = 0;  // Riemann-Roch / class-group queries
};

// divisor selection for the genus-1 cases; throws when the case preconditions
// fail, with the violated condition in the message
std::pair<ECDivisor, ECDivisor> genus1_select(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q,
                                              uint32_t l, const ECDivisor& G, char g1case);

// iterative constructions: pointset S (>= 2g+1) resp. T (>= 5g+1) of rational
// points; deg G >= 2ml + g - 1
std::pair<ECDivisor, ECDivisor> iterative_search_asym(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q,
                                                      uint32_t l, const ECDivisor& G,
                                                      const std::vector<ECClosedPoint>& S, SearchTrace& trace);
ECDivisor iterative_search_sym(Workspace& ws, const EllipticCurve& C, const ECClosedPoint& Q, uint32_t l,
                               const ECDivisor& G, const std::vector<ECClosedPoint>& T, SearchTrace& trace);

// scan of degree-0 classes (classes <-> rational points at genus 1);
// nullopt when every class fails, as on trivial class groups
std::optional<std::pair<ECDivisor, ECDivisor>> exhaustive_class_search(Workspace& ws, const EllipticCurve& C,
                                                                       const ECClosedPoint& Q, uint32_t l,
                                                                       const ECDivisor& G);

// assign actual points to planned cells (canonical enumeration order, higher
// multiplicities first within a degree) and build G
std::vector<std::pair<ECClosedPoint, int>> assign_ec_points(Workspace& ws, const EllipticCurve& C,
                                                            const std::vector<PlanCell>& cells,
                                                            const ECClosedPoint* avoid = nullptr);
ECDivisor divisor_from_cells(const std::vector<std::pair<ECClosedPoint, int>>& cells);
P1Divisor divisor_from_cells_p1(const std::vector<std::pair<P1Point, int>>& cells);

// full genus-1 plan: pick Q, assign points, select divisors by case (or by
// the named search), check conditions
enum class G1Mode { case_a, case_b, case_c, case_d, iter_asym, iter_sym, class_search };
std::optional<ECPlan> make_ec_plan(Workspace& ws, const EllipticCurve& C, uint32_t m, uint32_t l,
                                   const std::vector<PlanCell>& cells, G1Mode mode, uint64_t seed = 0,
                                   SearchTrace* trace = nullptr);

}  // namespace ccb
