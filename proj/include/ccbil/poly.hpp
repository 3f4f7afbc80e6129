#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "ccbil/smallfield.hpp"

namespace ccb {

// dense polynomial over a SmallField, coefficients ascending, normalized
struct Poly {
    std::vector<uint32_t> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    uint32_t lead() const { return c.back(); }
    uint32_t coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : 0; }

    static Poly zero() { return {}; }
    static Poly one() { return Poly{{1}}; }
    static Poly x() { return Poly{{0, 1}}; }
    static Poly constant(uint32_t a) { return a ? Poly{{a}} : Poly{}; }
    void normalize();
};

bool operator==(const Poly& a, const Poly& b);

Poly p_add(const SmallField& F, const Poly& a, const Poly& b);
Poly p_sub(const SmallField& F, const Poly& a, const Poly& b);
Poly p_neg(const SmallField& F, const Poly& a);
Poly p_mul(const SmallField& F, const Poly& a, const Poly& b);
Poly p_scale(const SmallField& F, const Poly& a, uint32_t s);
Poly p_shift(const Poly& a, int k);  // multiply by x^k, k >= 0
std::pair<Poly, Poly> p_divmod(const SmallField& F, const Poly& a, const Poly& b);
Poly p_mod(const SmallField& F, const Poly& a, const Poly& b);
Poly p_gcd(const SmallField& F, Poly a, Poly b);  // monic gcd
Poly p_monic(const SmallField& F, const Poly& a);
Poly p_powmod(const SmallField& F, Poly base, uint64_t e, const Poly& mod);
Poly p_derivative(const SmallField& F, const Poly& a);
uint32_t p_eval(const SmallField& F, const Poly& a, uint32_t x);
// number of times b divides a
int p_valuation(const SmallField& F, Poly a, const Poly& b);

bool p_is_irreducible(const SmallField& F, const Poly& f);

// monic irreducibles of degree d in deterministic order (coefficient tuple
// (c_{d-1},...,c_0) lexicographically ascending); throws if count exceeds the
// Gauss necklace count
std::vector<Poly> irreducibles(const SmallField& F, int d, long count);
// necklace count (1/d) sum_{e|d} mu(e) q^(d/e)
long irreducible_count(const SmallField& F, int d);
// the canonical (first) irreducible of degree d
Poly canonical_irreducible(const SmallField& F, int d);

// extended gcd: returns (g, u, v) with u*a + v*b = g, g monic
std::tuple<Poly, Poly, Poly> p_xgcd(const SmallField& F, const Poly& a, const Poly& b);
// inverse of a modulo m; throws if gcd(a, m) != 1
Poly p_invmod(const SmallField& F, const Poly& a, const Poly& m);

}  // namespace ccb
