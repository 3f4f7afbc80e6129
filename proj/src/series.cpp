#include "ccbil/series.hpp"

#include <stdexcept>

namespace ccb {

Elt Series::coeff(int k) const {
    Elt v(K->m, 0);
    if (k < lead || k >= lead + len) return v;
    size_t off = static_cast<size_t>(k - lead) * K->m;
    for (uint32_t i = 0; i < K->m; ++i) v[i] = flat[off + i];
    return v;
}

void Series::set_coeff(int k, const Elt& v) {
    if (k < lead || k >= lead + len) throw std::out_of_range("series coefficient out of stored range");
    size_t off = static_cast<size_t>(k - lead) * K->m;
    for (uint32_t i = 0; i < K->m; ++i) flat[off + i] = v[i];
}

bool Series::all_zero() const {
    for (uint32_t x : flat)
        if (x) return false;
    return true;
}

std::optional<int> Series::valuation() const {
    for (int k = 0; k < len; ++k) {
        size_t off = static_cast<size_t>(k) * K->m;
        for (uint32_t i = 0; i < K->m; ++i)
            if (flat[off + i]) return lead + k;
    }
    return std::nullopt;
}

Series s_from_elt(const ExtField& K, const Elt& v, int prec_end) {
    Series s(K, 0, prec_end);
    if (prec_end > 0) s.set_coeff(0, v);
    return s;
}

Series s_add(const Series& a, const Series& b) {
    const ExtField& K = *a.K;
    int lead = std::min(a.lead, b.lead);
    int end = std::min(a.precision_end(), b.precision_end());
    // a purely-zero series may carry an artificially early lead; keep the min
    if (end <= lead) return Series(K, lead, 0);
    Series r(K, lead, end - lead);
    for (int k = lead; k < end; ++k) r.set_coeff(k, K.add(a.coeff(k), b.coeff(k)));
    return r;
}

Series s_mul(const Series& a, const Series& b) {
    const ExtField& K = *a.K;
    int lead = a.lead + b.lead;
    int end = std::min(a.precision_end() + b.lead, b.precision_end() + a.lead);
    if (end <= lead || a.len == 0 || b.len == 0) return Series(K, lead, 0);
    Series r(K, lead, end - lead);
    uint32_t m = K.m;
    if (m == 1) {
        const SmallField& F = *K.F;
        for (int i = 0; i < a.len; ++i) {
            uint32_t av = a.flat[static_cast<size_t>(i)];
            if (!av) continue;
            int jmax = std::min(b.len, end - (a.lead + i) - b.lead);
            for (int j = 0; j < jmax; ++j) {
                uint32_t bv = b.flat[static_cast<size_t>(j)];
                if (!bv) continue;
                size_t off = static_cast<size_t>(i + j);
                r.flat[off] = F.add(r.flat[off], F.mul(av, bv));
            }
        }
        return r;
    }
    for (int i = 0; i < a.len; ++i) {
        Elt av = a.coeff(a.lead + i);
        if (K.is_zero(av)) continue;
        for (int j = 0; j < b.len && (a.lead + i) + (b.lead + j) < end; ++j) {
            Elt bv = b.coeff(b.lead + j);
            if (K.is_zero(bv)) continue;
            Elt prod = K.mul(av, bv);
            int k = (a.lead + i) + (b.lead + j);
            size_t off = static_cast<size_t>(k - lead) * m;
            for (uint32_t t = 0; t < m; ++t) r.flat[off + t] = K.F->add(r.flat[off + t], prod[t]);
        }
    }
    return r;
}

Series s_scale(const Series& a, const Elt& v) {
    Series r = a;
    const ExtField& K = *a.K;
    for (int k = 0; k < a.len; ++k) r.set_coeff(a.lead + k, K.mul(a.coeff(a.lead + k), v));
    return r;
}

Series s_shift(const Series& a, int k) {
    Series r = a;
    r.lead += k;
    return r;
}

Series s_inv(const Series& a) {
    const ExtField& K = *a.K;
    auto val = a.valuation();
    if (!val) throw std::domain_error("inverse of zero series");
    int v = *val;
    // normalize to a unit u with u(0) != 0; invert by Newton within precision
    int n = a.precision_end() - v;  // usable coefficients of the unit part
    Series u(K, 0, n);
    for (int k = 0; k < n; ++k) u.set_coeff(k, a.coeff(v + k));
    Series inv(K, 0, n);
    Elt c0inv = K.inv(u.coeff(0));
    inv.set_coeff(0, c0inv);
    for (int k = 1; k < n; ++k) {
        // c_k of inverse: -(c0inv) * sum_{j=1..k} u_j * inv_{k-j}
        Elt acc = K.zero();
        for (int j = 1; j <= k; ++j) acc = K.add(acc, K.mul(u.coeff(j), inv.coeff(k - j)));
        inv.set_coeff(k, K.neg(K.mul(c0inv, acc)));
    }
    inv.lead = -v;
    return inv;
}

Series s_truncate(const Series& a, int prec_end) {
    if (prec_end >= a.precision_end()) return a;
    int len = std::max(prec_end - a.lead, 0);
    Series r(*a.K, a.lead, len);
    for (int k = 0; k < len; ++k) r.set_coeff(a.lead + k, a.coeff(a.lead + k));
    return r;
}

}  // namespace ccb
