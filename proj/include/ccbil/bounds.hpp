#pragma once

#include <map>
#include <string>

#include "ccbil/rank_search.hpp"
#include "ccbil/synthesis.hpp"

namespace ccb {

enum class Strategy { fixture, genus0, genus1, composite_descent, concatenation, brute_force, naive };

const char* strategy_name(Strategy s);

struct CertKey {
    uint32_t q, m, l;
    bool sym;
    bool operator<(const CertKey& o) const {
        return std::tie(q, m, l, sym) < std::tie(o.q, o.m, o.l, o.sym);
    }
};

// machine-checkable recipe: rebuilding is deterministic and must reproduce a
// verified algorithm of exactly the stored length
struct Recipe {
    Strategy s = Strategy::naive;
    std::vector<PlanCell> cells;  // genus0 / genus1
    int trace = 0;                // genus1
    G1Mode mode = G1Mode::case_d;
    uint32_t split_d = 0;  // composite descent: m = split_d * e
};

struct BoundCertificate {
    CertKey key;
    long bound = 0;
    Recipe recipe;
};

class BoundTable {
public:
    explicit BoundTable(Workspace& ws) : ws_(ws) {}

    const BoundCertificate& improve(uint32_t q, uint32_t m, uint32_t l, bool sym = false);
    // deterministic witness reconstruction; verified, length == bound
    BilinearAlgorithm rebuild(const BoundCertificate& cert);
    BilinearAlgorithm rebuild(uint32_t q, uint32_t m, uint32_t l, bool sym = false);

    // best genus-1-only bound, used by the example sweeps; nullopt when no
    // admissible curve/case exists
    struct Genus1Pick {
        int trace;
        G1Mode mode;
        std::vector<PlanCell> cells;
        long cost;
    };
    std::optional<Genus1Pick> genus1_best(uint32_t q, uint32_t m, uint32_t l, bool sym);

    // external reference inner costs (the mu2-163 configuration)
    void load_reference_costs(const std::string& path);
    std::optional<long> reference_cost(uint32_t q, int d, int u) const;
    bool has_reference_costs() const { return !refcosts_.empty(); }

    std::string export_tsv() const;

    const std::map<CertKey, BoundCertificate>& table() const { return table_; }
    const std::vector<std::string>& log() const { return log_; }
    Workspace& workspace() { return ws_; }

private:
    Workspace& ws_;
    std::map<CertKey, BoundCertificate> table_;
    std::vector<std::string> log_;
    std::map<std::tuple<uint32_t, int, int>, long> refcosts_;

    void store(const BoundCertificate& cert);
};

// the explicit plane-interpolation decomposition of F_8 over F_2
BilinearAlgorithm f8_plane_fixture(Workspace& ws);

struct FixtureReport {
    std::string name;
    long target = 0;    // the reference value being reproduced
    long achieved = 0;  // what the artifact built
    bool verified = false;
    std::string notes;
};

// named reproductions: f8-plane, mu2-163, mu3-97, mu-q-2-2, mu-q-4-2,
// remark-asym-gap
std::vector<FixtureReport> reproduce_fixture(BoundTable& table, const std::string& name);

}  // namespace ccb
