#include "ccbil/extfield.hpp"

#include <stdexcept>

#include "ccbil/linalg.hpp"

namespace ccb {

namespace {

Poly to_poly(const Elt& a) {
    Poly p;
    p.c = a;
    p.normalize();
    return p;
}

Elt from_poly(const Poly& p, uint32_t m) {
    Elt e(m, 0);
    for (size_t i = 0; i < p.c.size(); ++i) e[i] = p.c[i];
    return e;
}

// minimal big-unsigned helper for exponents like (q^m - 1) / 2
struct BigUint {
    std::vector<uint64_t> w;  // little-endian 32-bit limbs stored in u64

    static BigUint from_u64(uint64_t v) {
        BigUint b;
        while (v) {
            b.w.push_back(v & 0xffffffffu);
            v >>= 32;
        }
        return b;
    }
    bool is_zero() const { return w.empty(); }
    void trim() {
        while (!w.empty() && w.back() == 0) w.pop_back();
    }
    void mul_u32(uint32_t k) {
        uint64_t carry = 0;
        for (auto& x : w) {
            uint64_t t = x * k + carry;
            x = t & 0xffffffffu;
            carry = t >> 32;
        }
        while (carry) {
            w.push_back(carry & 0xffffffffu);
            carry >>= 32;
        }
    }
    void add_u32(uint32_t k) {
        uint64_t carry = k;
        for (auto& x : w) {
            uint64_t t = x + carry;
            x = t & 0xffffffffu;
            carry = t >> 32;
            if (!carry) break;
        }
        if (carry) w.push_back(carry);
    }
    uint32_t div_u32(uint32_t k) {  // in place, returns remainder
        uint64_t rem = 0;
        for (size_t i = w.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | w[i];
            w[i] = cur / k;
            rem = cur % k;
        }
        trim();
        return static_cast<uint32_t>(rem);
    }
    std::vector<bool> bits_msb_first() const {
        std::vector<bool> out;
        if (w.empty()) return out;
        for (size_t i = w.size(); i-- > 0;)
            for (int b = 31; b >= 0; --b) {
                bool bit = (w[i] >> b) & 1;
                if (!out.empty() || bit) out.push_back(bit);
            }
        return out;
    }
};

BigUint q_power(uint32_t q, uint32_t m) {
    BigUint b = BigUint::from_u64(1);
    for (uint32_t i = 0; i < m; ++i) b.mul_u32(q);
    return b;
}

}  // namespace

ExtField::ExtField(const SmallField& base, uint32_t m_) : F(&base), m(m_) {
    modulus = canonical_irreducible(base, static_cast<int>(m_));
}

ExtField::ExtField(const SmallField& base, Poly mod) : F(&base), m(static_cast<uint32_t>(mod.deg())), modulus(std::move(mod)) {
    if (!p_is_irreducible(base, modulus)) throw std::invalid_argument("modulus is not irreducible");
}

Elt ExtField::one() const {
    Elt e(m, 0);
    e[0] = 1;
    return e;
}

Elt ExtField::gen() const {
    Elt e(m, 0);
    if (m == 1) {
        // F_q itself: the generator of the multiplicative group
        e[0] = F->generator;
    } else {
        e[1] = 1;
    }
    return e;
}

Elt ExtField::from_base(uint32_t a) const {
    Elt e(m, 0);
    e[0] = a;
    return e;
}

bool ExtField::is_zero(const Elt& a) const {
    for (uint32_t x : a)
        if (x) return false;
    return true;
}

bool ExtField::in_base(const Elt& a) const {
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i]) return false;
    return true;
}

Elt ExtField::add(const Elt& a, const Elt& b) const {
    Elt r(m);
    for (uint32_t i = 0; i < m; ++i) r[i] = F->add(a[i], b[i]);
    return r;
}

Elt ExtField::sub(const Elt& a, const Elt& b) const {
    Elt r(m);
    for (uint32_t i = 0; i < m; ++i) r[i] = F->sub(a[i], b[i]);
    return r;
}

Elt ExtField::neg(const Elt& a) const {
    Elt r(m);
    for (uint32_t i = 0; i < m; ++i) r[i] = F->neg(a[i]);
    return r;
}

Elt ExtField::mul(const Elt& a, const Elt& b) const {
    if (m == 1) return Elt{F->mul(a[0], b[0])};
    std::vector<uint32_t> t(2 * m - 1, 0);
    for (uint32_t i = 0; i < m; ++i) {
        if (!a[i]) continue;
        for (uint32_t j = 0; j < m; ++j)
            if (b[j]) t[i + j] = F->add(t[i + j], F->mul(a[i], b[j]));
    }
    // reduce by the monic modulus
    for (size_t i = t.size(); i-- > m;) {
        uint32_t c = t[i];
        if (!c) continue;
        t[i] = 0;
        for (uint32_t j = 0; j < m; ++j)
            t[i - m + j] = F->sub(t[i - m + j], F->mul(c, modulus.c[j]));
    }
    t.resize(m);
    return t;
}

Elt ExtField::scale(const Elt& a, uint32_t s) const {
    Elt r(m);
    for (uint32_t i = 0; i < m; ++i) r[i] = F->mul(a[i], s);
    return r;
}

Elt ExtField::inv(const Elt& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (m == 1) return Elt{F->inv(a[0])};
    return from_poly(p_invmod(*F, to_poly(a), modulus), m);
}

Elt ExtField::pow(const Elt& a, uint64_t e) const {
    Elt res = one(), base = a;
    while (e) {
        if (e & 1) res = mul(res, base);
        base = mul(base, base);
        e >>= 1;
    }
    return res;
}

Elt ExtField::frob_iter(const Elt& a, uint32_t e) const {
    Elt r = a;
    for (uint32_t i = 0; i < e; ++i) r = frob(r);
    return r;
}

Elt ExtField::from_index(uint64_t n) const {
    Elt e(m, 0);
    for (uint32_t i = 0; i < m; ++i) {
        e[i] = static_cast<uint32_t>(n % F->q);
        n /= F->q;
    }
    return e;
}

uint64_t ExtField::to_index(const Elt& a) const {
    uint64_t n = 0;
    for (size_t i = a.size(); i-- > 0;) n = n * F->q + a[i];
    return n;
}

uint32_t ExtField::trace_abs(const Elt& a) const {
    uint32_t k = F->r * m;
    Elt acc = zero(), conj = a;
    for (uint32_t i = 0; i < k; ++i) {
        acc = add(acc, conj);
        conj = pow(conj, F->p);
    }
    if (!in_base(acc)) throw std::logic_error("trace not in prime field");
    return acc[0] % F->p;
}

std::optional<Elt> ExtField::sqrt(const Elt& a) const {
    if (F->p == 2) {
        // squaring is bijective: square k-1 more times
        uint32_t k = F->r * m;
        Elt r = a;
        for (uint32_t i = 0; i + 1 < k; ++i) r = mul(r, r);
        return r;
    }
    if (is_zero(a)) return zero();
    BigUint order = q_power(F->q, m);  // q^m
    BigUint qm1 = order;
    for (size_t i = 0; i < qm1.w.size(); ++i) {
        if (qm1.w[i] > 0) {
            qm1.w[i] -= 1;
            break;
        }
        qm1.w[i] = 0xffffffffu;
    }
    qm1.trim();
    BigUint half_exp = qm1;
    half_exp.div_u32(2);
    auto pow_big = [&](const Elt& base, const BigUint& ex) {
        Elt res = one();
        for (bool bit : ex.bits_msb_first()) {
            res = mul(res, res);
            if (bit) res = mul(res, base);
        }
        return res;
    };
    Elt euler = pow_big(a, half_exp);
    if (!(euler == one())) return std::nullopt;

    // q^m mod 4 == 3: direct exponent (q^m+1)/4
    uint32_t qm_mod4 = 1;
    for (uint32_t i = 0; i < m; ++i) qm_mod4 = (qm_mod4 * (F->q % 4)) % 4;
    if (qm_mod4 == 3) {
        BigUint e2 = order;
        e2.add_u32(1);
        e2.div_u32(4);
        return pow_big(a, e2);
    }

    // Tonelli-Shanks: write q^m - 1 = s * 2^t
    BigUint s = qm1;
    uint32_t t = 0;
    while (!s.is_zero() && (s.w[0] & 1) == 0) {
        s.div_u32(2);
        ++t;
    }
    // deterministic non-residue
    Elt nr = zero();
    for (uint64_t n = 2;; ++n) {
        Elt c = from_index(n);
        if (is_zero(c)) continue;
        if (!(pow_big(c, half_exp) == one())) {
            nr = c;
            break;
        }
        if (n > (1u << 22)) throw std::runtime_error("no quadratic non-residue found");
    }
    Elt z = pow_big(nr, s);
    Elt x = pow_big(a, [&] {
        BigUint sp1 = s;
        sp1.add_u32(1);
        sp1.div_u32(2);
        return sp1;
    }());
    Elt b = pow_big(a, s);
    uint32_t mbits = t;
    while (!(b == one())) {
        // find least i with b^(2^i) = 1
        uint32_t i = 0;
        Elt bb = b;
        while (!(bb == one())) {
            bb = mul(bb, bb);
            ++i;
            if (i > mbits) return std::nullopt;
        }
        Elt zz = z;
        for (uint32_t j = 0; j + i + 1 < mbits; ++j) zz = mul(zz, zz);
        x = mul(x, zz);
        z = mul(zz, zz);
        b = mul(b, z);
        mbits = i;
    }
    return x;
}

std::optional<Elt> ExtField::artin_schreier_solve(const Elt& a) const {
    if (F->p != 2) throw std::invalid_argument("artin_schreier_solve requires characteristic 2");
    if (trace_abs(a) != 0) return std::nullopt;
    uint32_t k = F->r * m;
    if (k % 2 == 1) {
        // half trace: y = sum_{i=0}^{(k-1)/2} a^(2^(2i))
        Elt y = zero(), t = a;
        for (uint32_t i = 0; i <= (k - 1) / 2; ++i) {
            y = add(y, t);
            t = mul(t, t);
            t = mul(t, t);
        }
        return y;
    }
    // even k: solve the F_2-linear system (S + I) y = a, S the squaring map
    uint32_t n = k;
    // build columns of S+I on the F_2 basis z^j * y^i coordinates
    std::vector<std::vector<uint32_t>> cols(n);
    auto flatten = [&](const Elt& e) {
        std::vector<uint32_t> v(n, 0);
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t code = e[i];
            for (uint32_t j = 0; j < F->r; ++j) {
                v[i * F->r + j] = code % F->p;
                code /= F->p;
            }
        }
        return v;
    };
    auto unflatten = [&](const std::vector<uint32_t>& v) {
        Elt e(m, 0);
        for (uint32_t i = 0; i < m; ++i) {
            uint32_t code = 0;
            for (uint32_t j = F->r; j-- > 0;) code = code * F->p + v[i * F->r + j];
            e[i] = code;
        }
        return e;
    };
    Mat A(n, n);
    for (uint32_t cidx = 0; cidx < n; ++cidx) {
        std::vector<uint32_t> unit(n, 0);
        unit[cidx] = 1;
        Elt basis = unflatten(unit);
        Elt img = add(mul(basis, basis), basis);
        auto col = flatten(img);
        for (uint32_t ridx = 0; ridx < n; ++ridx) A.at(ridx, cidx) = col[ridx];
    }
    SmallField F2(2, 1);
    auto rhs = flatten(a);
    auto sol = solve_linear(F2, A, rhs);
    if (!sol) return std::nullopt;
    return unflatten(*sol);
}

Elt ExtField::eval_poly(const Poly& f, const Elt& x) const {
    Elt v = zero();
    for (size_t i = f.c.size(); i-- > 0;) v = add(mul(v, x), from_base(f.c[i]));
    return v;
}

std::optional<Elt> find_root_by_scan(const ExtField& E, const Poly& f, uint64_t guard) {
    uint64_t qm = 1;
    for (uint32_t i = 0; i < E.m; ++i) {
        qm *= E.F->q;
        if (qm > guard) throw std::invalid_argument("field too large for root scan");
    }
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    for (uint64_t n = 0; n < qm; ++n) {
        Elt x = E.from_index(n);
        if (E.is_zero(E.eval_poly(f, x))) return x;
    }
    return std::nullopt;
}

}  // namespace ccb
