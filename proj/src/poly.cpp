#include "ccbil/poly.hpp"

#include <stdexcept>

namespace ccb {

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

Poly p_add(const SmallField& F, const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
    r.normalize();
    return r;
}

Poly p_neg(const SmallField& F, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = F.neg(x);
    return r;
}

Poly p_sub(const SmallField& F, const Poly& a, const Poly& b) { return p_add(F, a, p_neg(F, b)); }

Poly p_mul(const SmallField& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    r.normalize();
    return r;
}

Poly p_scale(const SmallField& F, const Poly& a, uint32_t s) {
    if (!s) return {};
    Poly r = a;
    for (auto& x : r.c) x = F.mul(x, s);
    return r;
}

Poly p_shift(const Poly& a, int k) {
    if (a.is_zero()) return {};
    Poly r;
    r.c.assign(a.c.size() + static_cast<size_t>(k), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i + static_cast<size_t>(k)] = a.c[i];
    return r;
}

std::pair<Poly, Poly> p_divmod(const SmallField& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = a, quo;
    if (a.deg() >= b.deg()) quo.c.assign(static_cast<size_t>(a.deg() - b.deg() + 1), 0);
    uint32_t binv = F.inv(b.lead());
    while (!rem.is_zero() && rem.deg() >= b.deg()) {
        int k = rem.deg() - b.deg();
        uint32_t f = F.mul(rem.lead(), binv);
        quo.c[static_cast<size_t>(k)] = f;
        for (int i = 0; i <= b.deg(); ++i)
            rem.c[static_cast<size_t>(i + k)] = F.sub(rem.c[static_cast<size_t>(i + k)], F.mul(f, b.c[static_cast<size_t>(i)]));
        rem.normalize();
    }
    quo.normalize();
    return {quo, rem};
}

Poly p_mod(const SmallField& F, const Poly& a, const Poly& b) { return p_divmod(F, a, b).second; }

Poly p_monic(const SmallField& F, const Poly& a) {
    if (a.is_zero()) return a;
    return p_scale(F, a, F.inv(a.lead()));
}

Poly p_gcd(const SmallField& F, Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = p_mod(F, a, b);
        a = b;
        b = r;
    }
    return p_monic(F, a);
}

Poly p_powmod(const SmallField& F, Poly base, uint64_t e, const Poly& mod) {
    Poly res = Poly::one();
    base = p_mod(F, base, mod);
    while (e) {
        if (e & 1) res = p_mod(F, p_mul(F, res, base), mod);
        base = p_mod(F, p_mul(F, base, base), mod);
        e >>= 1;
    }
    return res;
}

Poly p_derivative(const SmallField& F, const Poly& a) {
    Poly r;
    if (a.deg() < 1) return r;
    r.c.assign(a.c.size() - 1, 0);
    for (int i = 1; i <= a.deg(); ++i) {
        // integer scalar i mod p is the prime-field element with code i % p
        r.c[static_cast<size_t>(i - 1)] = F.mul(a.c[static_cast<size_t>(i)], static_cast<uint32_t>(i) % F.p);
    }
    r.normalize();
    return r;
}

uint32_t p_eval(const SmallField& F, const Poly& a, uint32_t x) {
    uint32_t v = 0;
    for (size_t i = a.c.size(); i-- > 0;) v = F.add(F.mul(v, x), a.c[i]);
    return v;
}

int p_valuation(const SmallField& F, Poly a, const Poly& b) {
    if (a.is_zero()) throw std::domain_error("valuation of zero polynomial");
    int v = 0;
    for (;;) {
        auto [q, r] = p_divmod(F, a, b);
        if (!r.is_zero()) return v;
        a = q;
        ++v;
    }
}

bool p_is_irreducible(const SmallField& F, const Poly& f) {
    int d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    Poly x = Poly::x();
    std::vector<Poly> chain(static_cast<size_t>(d) + 1);
    chain[0] = p_mod(F, x, f);
    for (int i = 1; i <= d; ++i) chain[static_cast<size_t>(i)] = p_powmod(F, chain[static_cast<size_t>(i - 1)], F.q, f);
    if (!(chain[static_cast<size_t>(d)] == chain[0])) return false;
    int n = d;
    std::vector<int> primes;
    for (int e = 2; e * e <= n; ++e)
        while (n % e == 0) {
            if (primes.empty() || primes.back() != e) primes.push_back(e);
            n /= e;
        }
    if (n > 1) primes.push_back(n);
    for (int e : primes) {
        Poly diff = p_sub(F, chain[static_cast<size_t>(d / e)], chain[0]);
        if (!(p_gcd(F, diff, f) == Poly::one())) return false;
    }
    return true;
}

long irreducible_count(const SmallField& F, int d) {
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
    const long cap = (1L << 58);
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long qe = 1;
        for (int i = 0; i < d / e; ++i) {
            if (qe > cap / F.q) return cap;  // saturate: more than any realistic count request
            qe *= F.q;
        }
        total += mobius(e) * qe;
    }
    return total / d;
}

std::vector<Poly> irreducibles(const SmallField& F, int d, long count) {
    if (count > irreducible_count(F, d))
        throw std::invalid_argument("count exceeds the number of monic irreducibles of this degree");
    std::vector<Poly> out;
    uint64_t qd = 1;
    for (int i = 0; i < d; ++i) {
        if (qd > UINT64_MAX / F.q) {
            qd = UINT64_MAX;  // enumeration will stop at count long before this
            break;
        }
        qd *= F.q;
    }
    for (uint64_t n = 0; n < qd && static_cast<long>(out.size()) < count; ++n) {
        Poly f;
        f.c.assign(static_cast<size_t>(d) + 1, 0);
        f.c[static_cast<size_t>(d)] = 1;
        uint64_t nn = n;
        for (int k = 0; k < d; ++k) {
            f.c[static_cast<size_t>(k)] = static_cast<uint32_t>(nn % F.q);
            nn /= F.q;
        }
        if (p_is_irreducible(F, f)) out.push_back(f);
    }
    return out;
}

Poly canonical_irreducible(const SmallField& F, int d) { return irreducibles(F, d, 1)[0]; }

std::tuple<Poly, Poly, Poly> p_xgcd(const SmallField& F, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(), s1 = Poly::zero();
    Poly t0 = Poly::zero(), t1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r] = p_divmod(F, r0, r1);
        r0 = r1;
        r1 = r;
        Poly s2 = p_sub(F, s0, p_mul(F, q, s1));
        s0 = s1;
        s1 = s2;
        Poly t2 = p_sub(F, t0, p_mul(F, q, t1));
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    uint32_t linv = F.inv(r0.lead());
    return {p_scale(F, r0, linv), p_scale(F, s0, linv), p_scale(F, t0, linv)};
}

Poly p_invmod(const SmallField& F, const Poly& a, const Poly& m) {
    auto [g, u, v] = p_xgcd(F, p_mod(F, a, m), m);
    (void)v;
    if (!(g == Poly::one())) throw std::domain_error("element not invertible modulo m");
    return p_mod(F, u, m);
}

}  // namespace ccb
