#include "ccbil/smallfield.hpp"

#include <stdexcept>

namespace ccb {

namespace {

// setup-time arithmetic on F_p polynomials as digit vectors
using PP = std::vector<uint32_t>;

PP pp_mulmod(const PP& a, const PP& b, const PP& mod, uint32_t p) {
    std::vector<uint32_t> t(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    size_t r = mod.size() - 1;
    for (size_t i = t.size(); i-- > r;) {
        uint32_t c = t[i];
        if (!c) continue;
        t[i] = 0;
        for (size_t j = 0; j < r; ++j) t[i - r + j] = (t[i - r + j] + c * (p - mod[j] % p)) % p;
    }
    t.resize(r);
    return t;
}

PP pp_powmod(PP base, uint32_t e, const PP& mod, uint32_t p) {
    size_t r = mod.size() - 1;
    PP res(r, 0);
    res[0] = 1;
    while (e) {
        if (e & 1) res = pp_mulmod(res, base, mod, p);
        base = pp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return res;
}

uint32_t pp_encode(const PP& a, uint32_t p) {
    uint32_t v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
    return v;
}

std::vector<uint32_t> prime_divisors(uint32_t n) {
    std::vector<uint32_t> primes;
    for (uint32_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            if (primes.empty() || primes.back() != d) primes.push_back(d);
            n /= d;
        }
    if (n > 1) primes.push_back(n);
    return primes;
}

bool pp_is_irreducible(const PP& f, uint32_t p) {
    uint32_t r = static_cast<uint32_t>(f.size()) - 1;
    if (r == 1) return true;
    PP x(r, 0);
    x[1] = 1;
    // Rabin: x^(p^r) == x mod f, and x^(p^(r/d)) != x for prime d | r
    std::vector<PP> chain(r + 1);
    chain[0] = x;
    for (uint32_t i = 1; i <= r; ++i) chain[i] = pp_powmod(chain[i - 1], p, f, p);
    if (chain[r] != x) return false;
    for (uint32_t d : prime_divisors(r))
        if (chain[r / d] == x) return false;
    return true;
}

}  // namespace

std::pair<uint32_t, uint32_t> factor_prime_power(uint32_t q) {
    if (q < 2) throw std::invalid_argument("q must be >= 2");
    uint32_t p = 0;
    for (uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (!p) p = q;
    uint32_t r = 0, n = q;
    while (n > 1) {
        if (n % p) throw std::invalid_argument("q is not a prime power");
        n /= p;
        ++r;
    }
    return {p, r};
}

SmallField::SmallField(uint32_t p_, uint32_t r_) : p(p_), r(r_), q(1) {
    for (uint32_t i = 0; i < r; ++i) {
        if (q > (1u << 16) / p) throw std::invalid_argument("field too large for SmallField");
        q *= p;
    }

    // canonical modulus: monic irreducible of degree r with lexicographically
    // smallest coefficient tuple (c_{r-1}, ..., c_0)
    if (r == 1) {
        modulus = {0, 1};
    } else {
        bool found = false;
        for (uint32_t n = 0; n < q && !found; ++n) {
            PP f(r + 1, 0);
            f[r] = 1;
            uint32_t nn = n;
            for (uint32_t k = 0; k < r; ++k) {
                f[k] = nn % p;  // digit k of n -> c_k, so c_{r-1} is most significant
                nn /= p;
            }
            if (pp_is_irreducible(f, p)) {
                modulus = f;
                found = true;
            }
        }
        if (!found) throw std::runtime_error("no irreducible modulus found");
    }

    // generator and log/exp tables
    auto is_generator = [&](uint32_t g) {
        PP gp(r, 0);
        for (uint32_t k = 0, v = g; k < r; ++k, v /= p) gp[k] = v % p;
        for (uint32_t e : prime_divisors(q - 1))
            if (pp_encode(pp_powmod(gp, (q - 1) / e, modulus, p), p) == 1) return false;
        return true;
    };
    generator = 0;
    for (uint32_t g = 2; g < q && !generator; ++g)
        if (is_generator(g)) generator = g;
    if (!generator) {
        if (q == 2) generator = 1;
        else throw std::runtime_error("no generator found");
    }

    exp_.assign(2 * (q - 1), 0);
    log_.assign(q, 0);
    PP gp(r, 0);
    for (uint32_t k = 0, v = generator; k < r; ++k, v /= p) gp[k] = v % p;
    PP cur(r, 0);
    cur[0] = 1;
    for (uint32_t i = 0; i < q - 1; ++i) {
        uint32_t code = pp_encode(cur, p);
        exp_[i] = code;
        exp_[i + q - 1] = code;
        log_[code] = i;
        cur = pp_mulmod(cur, gp, modulus, p);
    }

    trace_.assign(q, 0);
    for (uint32_t a = 0; a < q; ++a) {
        uint32_t acc = 0, conj = a;
        for (uint32_t i = 0; i < r; ++i) {
            acc = add(acc, conj);
            conj = pow(conj, p);
        }
        trace_[a] = acc % p;  // element of the prime field, code == digit
    }
}

uint32_t SmallField::add(uint32_t a, uint32_t b) const {
    if (p == 2) return a ^ b;
    uint32_t res = 0, mulp = 1;
    for (uint32_t i = 0; i < r; ++i) {
        res += ((a % p + b % p) % p) * mulp;
        a /= p;
        b /= p;
        mulp *= p;
    }
    return res;
}

uint32_t SmallField::neg(uint32_t a) const {
    if (p == 2) return a;
    uint32_t res = 0, mulp = 1;
    for (uint32_t i = 0; i < r; ++i) {
        res += ((p - a % p) % p) * mulp;
        a /= p;
        mulp *= p;
    }
    return res;
}

uint32_t SmallField::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t SmallField::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (a == 1) return 1;
    return exp_[(q - 1) - log_[a]];
}

uint32_t SmallField::pow(uint32_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    uint64_t l = (static_cast<uint64_t>(log_[a]) * (e % (q - 1))) % (q - 1);
    return exp_[l];
}

uint32_t SmallField::from_int(uint64_t n) const { return static_cast<uint32_t>(n % p); }

int SmallField::chi(uint32_t a) const {
    if (a == 0) return 0;
    if (p == 2) return 1;
    return (log_[a] % 2 == 0) ? 1 : -1;
}

uint32_t SmallField::trace_abs(uint32_t a) const { return trace_[a]; }

}  // namespace ccb
