#pragma once

#include "ccbil/extfield.hpp"

namespace ccb {

// truncated Laurent series over an extension field: sum_{k>=lead} c_k t^k
// with len coefficients stored flat (len * K.m words)
struct Series {
    const ExtField* K = nullptr;
    int lead = 0;
    int len = 0;
    std::vector<uint32_t> flat;

    Series() = default;
    Series(const ExtField& k, int lead_, int len_) : K(&k), lead(lead_), len(len_), flat(static_cast<size_t>(len_) * k.m, 0) {}

    Elt coeff(int k) const;            // coefficient of t^k
    void set_coeff(int k, const Elt& v);
    bool all_zero() const;
    // smallest k with nonzero coefficient; nullopt when identically zero (to
    // the stored precision)
    std::optional<int> valuation() const;
    int precision_end() const { return lead + len; }  // coefficients known for k < this
};

Series s_from_elt(const ExtField& K, const Elt& v, int prec_end);
Series s_add(const Series& a, const Series& b);
Series s_mul(const Series& a, const Series& b);
Series s_scale(const Series& a, const Elt& v);
Series s_shift(const Series& a, int k);  // multiply by t^k (any sign)
// multiplicative inverse; requires nonzero lowest coefficient at valuation()
Series s_inv(const Series& a);
Series s_truncate(const Series& a, int prec_end);

}  // namespace ccb
