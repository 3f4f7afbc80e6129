#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ccbil/extfield.hpp"
#include "ccbil/linalg.hpp"
#include "ccbil/poly.hpp"
#include "ccbil/smallfield.hpp"

namespace ccb {

// shared caches: canonical fields, extensions, lifted isomorphisms, curve
// scans. All cached values are immutable once constructed.
struct Workspace {
    SmallField& field(uint32_t q);
    ExtField& ext(uint32_t q, uint32_t m);

    std::map<uint32_t, std::unique_ptr<SmallField>> fields_;
    std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<ExtField>> exts_;
    std::map<std::string, std::shared_ptr<void>> blobs_;  // per-module caches
};

// F_{q^d} -> F_{q^(de)} determined by sending the source generator to a root
// of the source modulus, deterministic by element scan order
struct FieldEmbedding {
    const ExtField* src;
    const ExtField* dst;
    std::vector<Elt> gen_powers;  // images of 1, g, g^2, ..., g^(d-1)

    Elt map(const Elt& a) const;
};

FieldEmbedding make_embedding(Workspace& ws, const ExtField& src, const ExtField& dst);

// the isomorphism A_q(d,l) = F_{q^d}[t]/(t^l) ~ F_q[x]/(Q(x)^l) of Cohen's
// lemma, realized by Hensel-lifting a root of the canonical degree-d modulus
// into F_q[x]/(Q^l) and sending t to Q(x)
struct HenselIso {
    const SmallField* F;
    Poly Q;
    int d, l;
    Poly Qpow;         // Q^l
    Poly alpha_tilde;  // lifted root, reduced mod Q^l
    Mat theta;         // A_q(d,l) -> F_q[x]/(Q^l) on bases (alpha^i t^j) -> (x^k)
    Mat theta_inv;

    // coordinates in A_q(d,l), basis index j*d+i for alpha^i t^j
    std::vector<uint32_t> transport(const Poly& v) const;
    Poly embed(const std::vector<uint32_t>& coords) const;

    bool residue_is_root(const Poly& minpoly) const;
    // multiplicativity of the iso on the pair of elements with enumeration
    // indices i, j (base-q digit coordinates)
    bool check_multiplicative_pair(uint64_t i, uint64_t j) const;
};

const HenselIso& hensel_lift(Workspace& ws, const SmallField& F, const Poly& Q, int l);

// multiplication in A_q(d,l) on coordinate vectors (basis alpha^i t^j, index
// j*d+i), through the extension field E = F_{q^d}
std::vector<uint32_t> truncated_mul(const ExtField& E, int l, const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b);

}  // namespace ccb
