#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccbil/poly.hpp"
#include "ccbil/smallfield.hpp"

namespace ccb {

using Elt = std::vector<uint32_t>;  // coefficients over the base SmallField, fixed length m

// F_{q^m} as F_q[y]/(modulus), modulus the canonical (lex-smallest) monic
// irreducible of degree m over F_q unless another one is supplied.
class ExtField {
public:
    ExtField(const SmallField& base, uint32_t m);
    ExtField(const SmallField& base, Poly modulus);

    const SmallField* F;
    uint32_t m;
    Poly modulus;

    Elt zero() const { return Elt(m, 0); }
    Elt one() const;
    Elt gen() const;  // the class of y
    Elt from_base(uint32_t a) const;
    bool is_zero(const Elt& a) const;
    bool in_base(const Elt& a) const;  // lies in F_q (= scalar multiple of 1)

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt scale(const Elt& a, uint32_t s) const;
    Elt inv(const Elt& a) const;
    Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
    Elt pow(const Elt& a, uint64_t e) const;
    Elt frob(const Elt& a) const { return pow(a, F->q); }       // x -> x^q
    Elt frob_iter(const Elt& a, uint32_t e) const;               // x -> x^(q^e)

    // index <-> element for enumeration; valid while q^m fits in 64 bits
    Elt from_index(uint64_t n) const;
    uint64_t to_index(const Elt& a) const;

    // absolute trace to the prime field (code in [0,p))
    uint32_t trace_abs(const Elt& a) const;

    // square root in odd characteristic (Tonelli-Shanks); nullopt if non-square
    std::optional<Elt> sqrt(const Elt& a) const;
    // solve yy^2 + yy = a in characteristic 2; nullopt if absolute trace is 1
    std::optional<Elt> artin_schreier_solve(const Elt& a) const;

    // evaluate a polynomial with base-field coefficients at an element
    Elt eval_poly(const Poly& f, const Elt& x) const;
};

// first root of f (a polynomial over E.F, irreducible of degree dividing m)
// found by deterministic scan of E; requires q^m within the scan guard
std::optional<Elt> find_root_by_scan(const ExtField& E, const Poly& f, uint64_t guard = (1u << 20));

}  // namespace ccb
