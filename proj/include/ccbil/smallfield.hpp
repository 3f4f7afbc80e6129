#pragma once

#include <cstdint>
#include <vector>

namespace ccb {

// F_q with q = p^r, q <= 2^16. Elements are encoded as integers in [0, q):
// the base-p digits of the code are the coordinates on the power basis of
// F_p[z]/(modulus), modulus being the canonical irreducible of degree r.
// Multiplication goes through discrete-log tables, addition is digit-wise.
class SmallField {
public:
    SmallField(uint32_t p, uint32_t r);

    uint32_t p, r, q;
    std::vector<uint32_t> modulus;   // r+1 coefficients over F_p, ascending, monic
    uint32_t generator;              // a multiplicative generator

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t from_int(uint64_t n) const;     // n mod p, embedded as a prime-field element
    uint32_t frob(uint32_t a) const { return pow(a, p); }

    // quadratic character for odd q: 1 square, q-1... returns +1 / 0 / -1 as int
    int chi(uint32_t a) const;
    // absolute trace to F_p, returned as an integer in [0, p)
    uint32_t trace_abs(uint32_t a) const;

    bool operator==(const SmallField& o) const { return p == o.p && r == o.r; }

private:
    std::vector<uint32_t> exp_, log_;
    std::vector<uint32_t> trace_;
};

// q must be a prime power; returns (p, r)
std::pair<uint32_t, uint32_t> factor_prime_power(uint32_t q);

}  // namespace ccb
