#include "ccbil/rank_search.hpp"

#include <stdexcept>

namespace ccb {

namespace {

// projective representatives: nonzero vectors with first nonzero entry 1
std::vector<std::vector<uint32_t>> projective_points(const SmallField& F, int d) {
    std::vector<std::vector<uint32_t>> out;
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= F.q;
    for (uint64_t n = 1; n < total; ++n) {
        std::vector<uint32_t> v(static_cast<size_t>(d));
        uint64_t nn = n;
        for (int i = 0; i < d; ++i) {
            v[static_cast<size_t>(i)] = static_cast<uint32_t>(nn % F.q);
            nn /= F.q;
        }
        int lead = -1;
        for (int i = 0; i < d; ++i)
            if (v[static_cast<size_t>(i)]) {
                lead = i;
                break;
            }
        if (v[static_cast<size_t>(lead)] == 1) out.push_back(v);
    }
    return out;
}

// incremental F_q row space with reduction, used both for the span of chosen
// phi (x) psi vectors and for bounding how many more terms are needed
struct Span {
    const SmallField* F;
    int n;
    std::vector<std::vector<uint32_t>> rows;  // reduced, each with leading 1
    std::vector<int> lead;

    Span(const SmallField& f, int n_) : F(&f), n(n_) {}

    // reduce v against rows; returns the reduced vector
    std::vector<uint32_t> reduce(std::vector<uint32_t> v) const {
        for (size_t i = 0; i < rows.size(); ++i) {
            uint32_t c = v[static_cast<size_t>(lead[i])];
            if (!c) continue;
            for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = F->sub(v[static_cast<size_t>(j)], F->mul(c, rows[i][static_cast<size_t>(j)]));
        }
        return v;
    }
    bool insert(std::vector<uint32_t> v) {  // returns true if rank grew
        v = reduce(std::move(v));
        int l = -1;
        for (int j = 0; j < n; ++j)
            if (v[static_cast<size_t>(j)]) {
                l = j;
                break;
            }
        if (l < 0) return false;
        uint32_t inv = F->inv(v[static_cast<size_t>(l)]);
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = F->mul(v[static_cast<size_t>(j)], inv);
        rows.push_back(std::move(v));
        lead.push_back(l);
        return true;
    }
};

struct Searcher {
    const StructureAlgebra* A;
    const SmallField* F;
    int d;
    std::vector<std::vector<uint32_t>> pairs;  // phi (x) psi, flattened d*d
    std::vector<std::pair<int, int>> pair_idx;
    std::vector<std::vector<uint32_t>> slices;  // the d tensor slices, flattened d*d
    std::vector<int> chosen;
    int target = 0;
    bool found = false;

    int extra_needed(const Span& span) const {
        Span s2 = span;
        int extra = 0;
        for (auto& sl : slices)
            if (s2.insert(sl)) ++extra;
        return extra;
    }

    void dfs(int start, Span& span) {
        if (found) return;
        int rem = target - static_cast<int>(chosen.size());
        int need = extra_needed(span);
        if (need == 0) {
            found = true;
            return;
        }
        if (need > rem) return;
        for (int i = start; i < static_cast<int>(pairs.size()) && !found; ++i) {
            Span saved = span;
            bool grew = span.insert(pairs[static_cast<size_t>(i)]);
            if (grew) {
                chosen.push_back(i);
                dfs(i + 1, span);
                if (found) return;
                chosen.pop_back();
            }
            span = std::move(saved);
        }
    }
};

}  // namespace

RankSearchResult brute_force_rank(AlgebraPtr A, int cap, bool symmetric) {
    const SmallField& F = *A->F;
    int d = A->dim;
    {
        uint64_t g = 1;
        for (int i = 0; i < 2 * d; ++i) {
            g *= F.q;
            if (g > (1u << 16)) throw std::invalid_argument("search space guard q^(2d) <= 2^16 exceeded");
        }
    }
    Searcher S;
    S.A = A.get();
    S.F = &F;
    S.d = d;
    auto pts = projective_points(F, d);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (symmetric) {
            std::vector<uint32_t> v(static_cast<size_t>(d) * d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) v[static_cast<size_t>(a) * d + b] = F.mul(pts[i][static_cast<size_t>(a)], pts[i][static_cast<size_t>(b)]);
            S.pairs.push_back(std::move(v));
            S.pair_idx.emplace_back(static_cast<int>(i), static_cast<int>(i));
        } else {
            for (size_t j = 0; j < pts.size(); ++j) {
                std::vector<uint32_t> v(static_cast<size_t>(d) * d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) v[static_cast<size_t>(a) * d + b] = F.mul(pts[i][static_cast<size_t>(a)], pts[j][static_cast<size_t>(b)]);
                S.pairs.push_back(std::move(v));
                S.pair_idx.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    S.slices.resize(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        auto& sl = S.slices[static_cast<size_t>(k)];
        sl.assign(static_cast<size_t>(d) * d, 0);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (auto [kk, v] : A->row(a, b))
                    if (kk == k) sl[static_cast<size_t>(a) * d + b] = v;
    }

    RankSearchResult res;
    for (int n = 0; n <= cap; ++n) {
        S.target = n;
        S.found = false;
        S.chosen.clear();
        Span span(F, d * d);
        S.dfs(0, span);
        if (!S.found) {
            res.exhausted_up_to = n;
            continue;
        }
        res.rank = n;
        // solve for the w vectors: sum_i M[(ab),i] w_{i,k} = c_{abk}
        Mat M(d * d, n);
        for (int i = 0; i < n; ++i)
            for (int ab = 0; ab < d * d; ++ab) M.at(ab, i) = S.pairs[static_cast<size_t>(S.chosen[static_cast<size_t>(i)])][static_cast<size_t>(ab)];
        BilinearAlgorithm alg;
        alg.A = A;
        alg.phi = Mat(n, d);
        alg.psi = Mat(n, d);
        alg.w = Mat(d, n);
        for (int i = 0; i < n; ++i) {
            auto [pi, qi] = S.pair_idx[static_cast<size_t>(S.chosen[static_cast<size_t>(i)])];
            auto pts_p = pts[static_cast<size_t>(pi)];
            auto pts_q = pts[static_cast<size_t>(qi)];
            for (int j = 0; j < d; ++j) {
                alg.phi.at(i, j) = pts_p[static_cast<size_t>(j)];
                alg.psi.at(i, j) = pts_q[static_cast<size_t>(j)];
            }
        }
        for (int k = 0; k < d; ++k) {
            auto sol = solve_linear(F, M, S.slices[static_cast<size_t>(k)]);
            if (!sol) throw std::logic_error("span certified but w-system unsolvable");
            for (int i = 0; i < n; ++i) alg.w.at(k, i) = (*sol)[static_cast<size_t>(i)];
        }
        alg.symmetric = symmetric;
        if (verify(alg)) throw std::logic_error("rank search produced a non-verifying witness");
        res.witness = std::move(alg);
        break;
    }
    return res;
}

}  // namespace ccb
