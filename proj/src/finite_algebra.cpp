#include "ccbil/finite_algebra.hpp"

#include <stdexcept>

namespace ccb {

SmallField& Workspace::field(uint32_t q) {
    auto it = fields_.find(q);
    if (it != fields_.end()) return *it->second;
    auto [p, r] = factor_prime_power(q);
    auto f = std::make_unique<SmallField>(p, r);
    auto* ptr = f.get();
    fields_.emplace(q, std::move(f));
    return *ptr;
}

ExtField& Workspace::ext(uint32_t q, uint32_t m) {
    auto key = std::make_pair(q, m);
    auto it = exts_.find(key);
    if (it != exts_.end()) return *it->second;
    auto e = std::make_unique<ExtField>(field(q), m);
    auto* ptr = e.get();
    exts_.emplace(key, std::move(e));
    return *ptr;
}

Elt FieldEmbedding::map(const Elt& a) const {
    Elt out = dst->zero();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i]) out = dst->add(out, dst->scale(gen_powers[i], a[i]));
    return out;
}

FieldEmbedding make_embedding(Workspace& ws, const ExtField& src, const ExtField& dst) {
    (void)ws;
    if (src.F != dst.F && !(*src.F == *dst.F)) throw std::invalid_argument("embeddings need a common base field");
    if (dst.m % src.m != 0) throw std::invalid_argument("source degree must divide target degree");
    auto root = find_root_by_scan(dst, src.modulus);
    if (!root) throw std::runtime_error("no root of source modulus in target field");
    FieldEmbedding emb;
    emb.src = &src;
    emb.dst = &dst;
    emb.gen_powers.resize(src.m);
    Elt cur = dst.one();
    for (uint32_t i = 0; i < src.m; ++i) {
        emb.gen_powers[i] = cur;
        cur = dst.mul(cur, *root);
    }
    return emb;
}

std::vector<uint32_t> truncated_mul(const ExtField& E, int l, const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b) {
    int d = static_cast<int>(E.m);
    auto coeff = [&](const std::vector<uint32_t>& v, int j) {
        Elt e(E.m, 0);
        for (int i = 0; i < d; ++i) e[static_cast<size_t>(i)] = v[static_cast<size_t>(j * d + i)];
        return e;
    };
    std::vector<uint32_t> out(static_cast<size_t>(d) * static_cast<size_t>(l), 0);
    for (int j1 = 0; j1 < l; ++j1)
        for (int j2 = 0; j1 + j2 < l; ++j2) {
            Elt prod = E.mul(coeff(a, j1), coeff(b, j2));
            int j = j1 + j2;
            for (int i = 0; i < d; ++i) {
                size_t idx = static_cast<size_t>(j * d + i);
                out[idx] = E.F->add(out[idx], prod[static_cast<size_t>(i)]);
            }
        }
    return out;
}

namespace {

Poly poly_mulmod(const SmallField& F, const Poly& a, const Poly& b, const Poly& mod) {
    return p_mod(F, p_mul(F, a, b), mod);
}

}  // namespace

std::vector<uint32_t> HenselIso::transport(const Poly& v) const {
    std::vector<uint32_t> x(static_cast<size_t>(d * l), 0);
    for (int k = 0; k < d * l; ++k) x[static_cast<size_t>(k)] = v.coeff(k);
    return m_apply(*F, theta_inv, x);
}

Poly HenselIso::embed(const std::vector<uint32_t>& coords) const {
    auto x = m_apply(*F, theta, coords);
    Poly v;
    v.c = x;
    v.normalize();
    return v;
}

bool HenselIso::residue_is_root(const Poly& minpoly) const {
    Poly acc;
    for (size_t i = minpoly.c.size(); i-- > 0;) {
        acc = poly_mulmod(*F, acc, alpha_tilde, Qpow);
        acc = p_add(*F, acc, Poly::constant(minpoly.c[i]));
    }
    return acc.is_zero();
}

bool HenselIso::check_multiplicative_pair(uint64_t i, uint64_t j) const {
    // decode indices into A_q(d,l) coordinate vectors
    int n = d * l;
    std::vector<uint32_t> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        a[static_cast<size_t>(k)] = static_cast<uint32_t>(i % F->q);
        i /= F->q;
        b[static_cast<size_t>(k)] = static_cast<uint32_t>(j % F->q);
        j /= F->q;
    }
    ExtField E(*F, static_cast<uint32_t>(d));
    auto ab = truncated_mul(E, l, a, b);
    Poly pa = embed(a), pb = embed(b);
    Poly pab = poly_mulmod(*F, pa, pb, Qpow);
    return embed(ab) == pab;
}

const HenselIso& hensel_lift(Workspace& ws, const SmallField& F, const Poly& Q, int l) {
    if (l < 1) throw std::invalid_argument("order must be >= 1");
    if (!p_is_irreducible(F, Q)) throw std::invalid_argument("Q must be irreducible");
    std::string key = "hensel/" + std::to_string(F.q) + "/" + std::to_string(l) + "/";
    for (uint32_t c : Q.c) key += std::to_string(c) + ",";
    auto it = ws.blobs_.find(key);
    if (it != ws.blobs_.end()) return *static_cast<HenselIso*>(it->second.get());

    auto iso = std::make_shared<HenselIso>();
    iso->F = &F;
    iso->Q = Q;
    iso->d = Q.deg();
    iso->l = l;
    iso->Qpow = Poly::one();
    for (int i = 0; i < l; ++i) iso->Qpow = p_mul(F, iso->Qpow, Q);

    // root of the canonical modulus M_d of F_{q^d} inside F_q[x]/(Q): the
    // residue field of Q is F_{q^d}, so M_d splits; when Q is the canonical
    // modulus itself the class of x is already a root
    ExtField& E = ws.ext(F.q, static_cast<uint32_t>(Q.deg()));
    ExtField resfield(F, Q);  // F_q[x]/(Q) with Q itself as modulus
    std::optional<Elt> root0;
    if (Q == E.modulus) {
        Elt x = resfield.zero();
        if (resfield.m == 1)
            x[0] = F.neg(Q.coeff(0));  // Q = x - c
        else
            x[1] = 1;
        root0 = x;
    } else {
        root0 = find_root_by_scan(resfield, E.modulus);
    }
    if (!root0) throw std::runtime_error("minimal polynomial has no root in residue field");

    // Newton iteration in F_q[x]/(Q^k), doubling k
    Poly alpha;
    alpha.c = *root0;
    alpha.normalize();
    const Poly& M = E.modulus;
    Poly Mder = p_derivative(F, M);
    int prec = 1;
    Poly mod = Q;
    while (prec < l) {
        prec = std::min(2 * prec, l);
        mod = Poly::one();
        for (int i = 0; i < prec; ++i) mod = p_mul(F, mod, Q);
        // alpha <- alpha - M(alpha)/M'(alpha) mod Q^prec
        Poly val, der;
        for (size_t i = M.c.size(); i-- > 0;) {
            val = p_mod(F, p_mul(F, val, alpha), mod);
            val = p_add(F, val, Poly::constant(M.c[i]));
        }
        for (size_t i = Mder.c.size(); i-- > 0;) {
            der = p_mod(F, p_mul(F, der, alpha), mod);
            der = p_add(F, der, Poly::constant(Mder.c[i]));
        }
        if (p_gcd(F, der, mod).deg() != 0) throw std::logic_error("derivative not invertible in Hensel lift");
        Poly corr = p_mod(F, p_mul(F, val, p_invmod(F, der, mod)), mod);
        alpha = p_mod(F, p_sub(F, alpha, corr), mod);
    }
    iso->alpha_tilde = p_mod(F, alpha, iso->Qpow);
    if (!iso->residue_is_root(M)) throw std::logic_error("Hensel lift failed to produce a root");

    // theta: basis alpha^i t^j -> alpha_tilde^i * Q^j mod Q^l
    int n = iso->d * l;
    iso->theta = Mat(n, n);
    Poly qj = Poly::one();
    for (int j = 0; j < l; ++j) {
        Poly aij = qj;
        for (int i = 0; i < iso->d; ++i) {
            int col = j * iso->d + i;
            for (int k = 0; k < n; ++k) iso->theta.at(k, col) = aij.coeff(k);
            aij = poly_mulmod(F, aij, iso->alpha_tilde, iso->Qpow);
        }
        qj = p_mod(F, p_mul(F, qj, Q), iso->Qpow);
    }
    iso->theta_inv = right_inverse(F, iso->theta);  // square and bijective
    ws.blobs_[key] = iso;
    return *iso;
}

}  // namespace ccb
