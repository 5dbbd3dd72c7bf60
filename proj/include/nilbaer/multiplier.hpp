#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <iterator>
#include <string>
#include <vector>

#include "nilbaer/commutator.hpp"
#include "nilbaer/errors.hpp"
#include "nilbaer/hall_basis.hpp"

namespace nilbaer {

// Parameters of the outer-commutator multiplier of a free n-th nilpotent
// group on m generators: the word [gamma_{c1+1}, gamma_{c2+1}] with
// c1 >= c2 (H1) and 2c2 - c1 > 2n - 2 (H2).
struct MultiplierParams {
    int generators = 1; // m
    int n = 1;          // nilpotency class of the base group
    int c1 = 1;
    int c2 = 1;
};

inline void validate(const MultiplierParams& p) {
    if (p.generators < 1)
        throw invalid_input("params: generators must be >= 1, got " + std::to_string(p.generators));
    if (p.n < 1)
        throw invalid_input("params: n must be >= 1, got " + std::to_string(p.n));
    if (p.c1 < 1 || p.c2 < 1)
        throw invalid_input("params: c1 and c2 must be >= 1, got c1=" + std::to_string(p.c1) +
                            " c2=" + std::to_string(p.c2));
}

enum class OverlapCase { disjoint, overlapping };

struct HypothesisReport {
    bool h1 = false; // c1 >= c2
    bool h2 = false; // 2c2 - c1 > 2n - 2
    OverlapCase overlap = OverlapCase::disjoint;
    std::vector<std::string> violations;
    // inequalities implied by h1 and h2 that the rank results rely on;
    // recorded only when both hold
    std::vector<std::string> derived;

    bool ok() const { return h1 && h2; }
};

// The weight windows of A and C are disjoint exactly when c2 + n < c1 + 1;
// the two cardinality formulas split on this.
inline bool disjoint_case(const MultiplierParams& p) { return p.c2 + p.n < p.c1 + 1; }

inline HypothesisReport check_hypotheses(const MultiplierParams& p) {
    validate(p);
    HypothesisReport r;
    r.h1 = p.c1 >= p.c2;
    r.h2 = 2 * p.c2 - p.c1 > 2 * p.n - 2;
    r.overlap = disjoint_case(p) ? OverlapCase::disjoint : OverlapCase::overlapping;
    if (!r.h1)
        r.violations.push_back("c1 >= c2 violated: " + std::to_string(p.c1) + " < " +
                               std::to_string(p.c2));
    if (!r.h2)
        r.violations.push_back("2c2-c1 > 2n-2 violated: " + std::to_string(2 * p.c2 - p.c1) +
                               " <= " + std::to_string(2 * p.n - 2));
    if (r.ok()) {
        r.derived.push_back("c1+c2+1 >= n: " + std::to_string(p.c1 + p.c2 + 1) + " >= " +
                            std::to_string(p.n));
        r.derived.push_back("c2 >= n-1: " + std::to_string(p.c2) + " >= " +
                            std::to_string(p.n - 1));
        r.derived.push_back("2c2-c1 >= n-1: " + std::to_string(2 * p.c2 - p.c1) + " >= " +
                            std::to_string(p.n - 1));
        r.derived.push_back("2c1-c2 > 2n-2: " + std::to_string(2 * p.c1 - p.c2) + " > " +
                            std::to_string(2 * p.n - 2));
    }
    return r;
}

namespace detail {

inline void require_h1(const MultiplierParams& p) {
    validate(p);
    if (p.c1 < p.c2)
        throw hypothesis_violation("c1 >= c2 violated: " + std::to_string(p.c1) + " < " +
                                   std::to_string(p.c2));
}

inline std::string joined_violations(const HypothesisReport& r) {
    std::string msg;
    for (const auto& v : r.violations) {
        if (!msg.empty())
            msg += "; ";
        msg += v;
    }
    return msg;
}

} // namespace detail

inline void require_hypotheses(const MultiplierParams& p) {
    const HypothesisReport r = check_hypotheses(p);
    if (!r.ok())
        throw hypothesis_violation(detail::joined_violations(r));
}

// ---------------------------------------------------------------------------
// The pair families A, B, C and their set algebra.
// ---------------------------------------------------------------------------

enum class SetKind { A, B, C, AIntersectC, AMinusC };

inline const char* to_string(SetKind k) {
    switch (k) {
    case SetKind::A: return "A";
    case SetKind::B: return "B";
    case SetKind::C: return "C";
    case SetKind::AIntersectC: return "A_cap_C";
    case SetKind::AMinusC: return "A_minus_C";
    }
    return "?";
}

// A pair (beta, alpha) of basic commutators with beta > alpha, standing for
// the commutator [beta, alpha].
struct CommutatorPair {
    CommutatorRef beta = nullptr;
    CommutatorRef alpha = nullptr;

    friend bool operator==(const CommutatorPair&, const CommutatorPair&) = default;
};

inline int pair_weight(const CommutatorPair& p) { return p.beta->weight() + p.alpha->weight(); }

// Pairs sort exactly like the commutators [beta, alpha] they stand for:
// total weight, then beta, then alpha.
inline std::strong_ordering compare(const CommutatorPair& x, const CommutatorPair& y) {
    if (pair_weight(x) != pair_weight(y))
        return pair_weight(x) <=> pair_weight(y);
    const auto by_beta = compare(x.beta, y.beta);
    return by_beta != 0 ? by_beta : compare(x.alpha, y.alpha);
}

struct PairLess {
    bool operator()(const CommutatorPair& x, const CommutatorPair& y) const {
        return compare(x, y) < 0;
    }
};

inline CommutatorRef as_commutator(const CommutatorPair& p) {
    return Commutator::make(p.beta, p.alpha);
}

inline std::string to_string(const CommutatorPair& p) {
    return "[" + to_string(p.beta) + "," + to_string(p.alpha) + "]";
}

// Basicness of [beta, alpha] without building the tree; beta and alpha are
// basis elements here, so only the order and tail conditions remain.
inline bool pair_is_basic(const CommutatorPair& p) {
    return p.beta->basic() && p.alpha->basic() && compare(p.alpha, p.beta) < 0 &&
           (p.beta->is_generator() || compare(p.beta->right(), p.alpha) <= 0);
}

struct PairSet {
    SetKind kind = SetKind::A;
    MultiplierParams params;
    std::vector<CommutatorPair> pairs; // sorted under PairLess, duplicate-free

    std::size_t size() const { return pairs.size(); }
};

inline std::vector<CommutatorPair> pair_intersection(const std::vector<CommutatorPair>& x,
                                                     const std::vector<CommutatorPair>& y) {
    std::vector<CommutatorPair> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out),
                          PairLess{});
    return out;
}

inline std::vector<CommutatorPair> pair_difference(const std::vector<CommutatorPair>& x,
                                                   const std::vector<CommutatorPair>& y) {
    std::vector<CommutatorPair> out;
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out),
                        PairLess{});
    return out;
}

inline std::vector<CommutatorPair> pair_union(const std::vector<CommutatorPair>& x,
                                              const std::vector<CommutatorPair>& y) {
    std::vector<CommutatorPair> out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out), PairLess{});
    return out;
}

namespace detail {

// Weight windows of the three defining families:
//   A: c1+1 <= wt(beta) <= c1+n,  c2+1 <= wt(alpha) <= c2+n
//   B: wt(beta) >= c1+n+1, wt(alpha) >= c2+1, wt(beta)+wt(alpha) <= 2n+c1+c2+1
//   C: as B with c1 and c2 exchanged
struct WeightWindow {
    int beta_min = 0;
    int beta_max = -1;
    int alpha_min = 0;
    int alpha_max = -1;
    int weight_cap = -1; // bound on wt(beta) + wt(alpha); -1 = none
};

inline WeightWindow window(const MultiplierParams& p, SetKind kind) {
    const int cap = 2 * p.n + p.c1 + p.c2 + 1;
    switch (kind) {
    case SetKind::A:
        return {p.c1 + 1, p.c1 + p.n, p.c2 + 1, p.c2 + p.n, -1};
    case SetKind::B:
        return {p.c1 + p.n + 1, cap - (p.c2 + 1), p.c2 + 1, cap - (p.c1 + p.n + 1), cap};
    case SetKind::C:
        return {p.c2 + p.n + 1, cap - (p.c1 + 1), p.c1 + 1, cap - (p.c2 + p.n + 1), cap};
    default:
        throw std::logic_error("window: only A, B, C have defining windows");
    }
}

// Exact size of the enumeration a window produces, via the Witt formula;
// used to enforce caps before enumerating.
inline mpz_class window_size(const MultiplierParams& p, SetKind kind) {
    const WeightWindow w = window(p, kind);
    const int m = p.generators;
    mpz_class total = 0;
    for (int wb = w.beta_min; wb <= w.beta_max; ++wb) {
        int amax = w.alpha_max;
        if (w.weight_cap > 0)
            amax = std::min(amax, w.weight_cap - wb);
        for (int wa = w.alpha_min; wa <= std::min(amax, wb); ++wa) {
            if (wa < wb)
                total += witt(wb, m) * witt(wa, m);
            else
                total += witt(2, witt(wb, m)); // beta > alpha within one slice
        }
    }
    return total;
}

} // namespace detail

// Exhaustive, sorted enumeration of a pair family. Well-defined for any
// valid params; H1/H2 only gate the rank-level claims, not the sets.
inline PairSet enumerate_set(const MultiplierParams& p, SetKind kind, BasisGenerator& basis) {
    validate(p);
    if (basis.num_generators() != p.generators)
        throw invalid_input("enumerate_set: basis generator count mismatch");
    if (kind == SetKind::AIntersectC || kind == SetKind::AMinusC) {
        const PairSet a = enumerate_set(p, SetKind::A, basis);
        const PairSet c = enumerate_set(p, SetKind::C, basis);
        return PairSet{kind, p,
                       kind == SetKind::AIntersectC ? pair_intersection(a.pairs, c.pairs)
                                                    : pair_difference(a.pairs, c.pairs)};
    }
    const detail::WeightWindow w = detail::window(p, kind);
    PairSet out{kind, p, {}};
    for (int wb = w.beta_min; wb <= w.beta_max; ++wb) {
        const auto betas = basis.slice(wb);
        if (betas.empty())
            continue;
        int amax = w.alpha_max;
        if (w.weight_cap > 0)
            amax = std::min(amax, w.weight_cap - wb);
        for (int wa = w.alpha_min; wa <= std::min(amax, wb); ++wa) {
            const auto alphas = basis.slice(wa);
            if (wa < wb) {
                for (const CommutatorRef b : betas)
                    for (const CommutatorRef a : alphas)
                        out.pairs.push_back({b, a});
            } else {
                for (const CommutatorRef b : betas) {
                    const auto stop =
                        std::lower_bound(alphas.begin(), alphas.end(), b, CommutatorLess{});
                    for (auto it = alphas.begin(); it != stop; ++it)
                        out.pairs.push_back({b, *it});
                }
            }
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end(), PairLess{});
    return out;
}

inline PairSet enumerate_set(const MultiplierParams& p, SetKind kind) {
    BasisGenerator basis(p.generators);
    return enumerate_set(p, kind, basis);
}

// ---------------------------------------------------------------------------
// Closed-form cardinalities. Empty sums are 0; chi_2 of a derived count N
// is witt(2, N) = N(N-1)/2.
// ---------------------------------------------------------------------------

inline mpz_class card_A(const MultiplierParams& p) {
    detail::require_h1(p);
    const int m = p.generators;
    const mpz_class betas = witt_range_sum(m, p.c1 + 1, p.c1 + p.n);
    if (disjoint_case(p))
        return betas * witt_range_sum(m, p.c2 + 1, p.c2 + p.n);
    const mpz_class middle = witt_range_sum(m, p.c1 + 1, p.c2 + p.n);
    return betas * witt_range_sum(m, p.c2 + 1, p.c1) +
           witt_range_sum(m, p.c2 + p.n + 1, p.c1 + p.n) * middle + witt(2, middle);
}

inline mpz_class card_A_cap_C(const MultiplierParams& p) {
    detail::require_h1(p);
    if (disjoint_case(p))
        return 0;
    const int m = p.generators;
    return witt_range_sum(m, p.c2 + p.n + 1, p.c1 + p.n) *
           witt_range_sum(m, p.c1 + 1, p.c2 + p.n);
}

inline mpz_class card_A_minus_C(const MultiplierParams& p) {
    return card_A(p) - card_A_cap_C(p);
}

// ---------------------------------------------------------------------------
// Rank-level results, gated on H1 and H2.
// ---------------------------------------------------------------------------

// The free-abelian basis of the multiplier: the set difference A - C as
// explicit pairs. Under H1 and H2 every pair, read as [beta, alpha], is a
// basic commutator.
inline PairSet basis_D(const MultiplierParams& p, BasisGenerator& basis) {
    require_hypotheses(p);
    return enumerate_set(p, SetKind::AMinusC, basis);
}

inline PairSet basis_D(const MultiplierParams& p) {
    BasisGenerator basis(p.generators);
    return basis_D(p, basis);
}

// Free rank of the multiplier, by the closed forms (an independent route
// from card_A_minus_C, which subtracts the two set formulas).
inline mpz_class multiplier_rank(const MultiplierParams& p) {
    require_hypotheses(p);
    const int m = p.generators;
    const mpz_class betas = witt_range_sum(m, p.c1 + 1, p.c1 + p.n);
    if (disjoint_case(p))
        return betas * witt_range_sum(m, p.c2 + 1, p.c2 + p.n);
    return betas * witt_range_sum(m, p.c2 + 1, p.c1) +
           witt(2, witt_range_sum(m, p.c1 + 1, p.c2 + p.n));
}

// ---------------------------------------------------------------------------
// Polynilpotent multiplier rank of a free n-th nilpotent group.
// ---------------------------------------------------------------------------

struct PolyParams {
    int generators = 1;       // m
    int n = 1;                // nilpotency class of the base group
    std::vector<int> class_row; // (c1, ..., ct), nonempty
};

inline void validate(const PolyParams& p) {
    if (p.generators < 1)
        throw invalid_input("poly: generators must be >= 1, got " + std::to_string(p.generators));
    if (p.n < 1)
        throw invalid_input("poly: n must be >= 1, got " + std::to_string(p.n));
    if (p.class_row.empty())
        throw invalid_input("poly: class row must be nonempty");
    for (const int c : p.class_row)
        if (c < 1)
            throw invalid_input("poly: classes must be >= 1, got " + std::to_string(c));
}

// r1 = sum_{i=c1+1}^{c1+n} witt(i, m); r_j = witt(c_j + 1, r_{j-1}).
// Requires c1 >= n.
inline mpz_class polynilpotent_rank(const PolyParams& p) {
    validate(p);
    if (p.class_row.front() < p.n)
        throw hypothesis_violation("c1 >= n violated: " + std::to_string(p.class_row.front()) +
                                   " < " + std::to_string(p.n));
    mpz_class r = witt_range_sum(p.generators, p.class_row.front() + 1, p.class_row.front() + p.n);
    for (std::size_t j = 1; j < p.class_row.size(); ++j)
        r = witt(p.class_row[j] + 1, r);
    return r;
}

// ---------------------------------------------------------------------------
// c-nilpotent multiplier of a finitely generated abelian group
// Z^m + Z_{n1} + ... + Z_{nk} with n_{i+1} | n_i.
// ---------------------------------------------------------------------------

struct AbelianGroupSpec {
    long free_rank = 0;
    std::vector<long> torsion; // n1, n2, ..., each >= 2, descending divisibility chain
};

inline void validate(const AbelianGroupSpec& g) {
    if (g.free_rank < 0)
        throw invalid_input("abelian: free rank must be >= 0, got " + std::to_string(g.free_rank));
    for (const long n : g.torsion)
        if (n < 2)
            throw invalid_input("abelian: torsion moduli must be >= 2, got " + std::to_string(n));
    for (std::size_t i = 1; i < g.torsion.size(); ++i)
        if (g.torsion[i - 1] % g.torsion[i] != 0)
            throw invalid_input("abelian: divisibility chain broken: " +
                                std::to_string(g.torsion[i]) + " does not divide " +
                                std::to_string(g.torsion[i - 1]));
}

struct CyclicFactor {
    long modulus = 0;
    mpz_class multiplicity;
};

struct AbelianDecomposition {
    mpz_class free_rank;
    std::vector<CyclicFactor> cyclic_factors; // one per input torsion factor, in order
};

// With b_i = witt(c+1, i): free rank b_m, and Z_{n_j} with multiplicity
// b_{m+j} - b_{m+j-1} for each torsion factor. The multiplicities are
// nonnegative because witt(c+1, i) is monotone in i.
inline AbelianDecomposition abelian_multiplier(const AbelianGroupSpec& g, int c) {
    validate(g);
    if (c < 1)
        throw invalid_input("abelian: class must be >= 1, got " + std::to_string(c));
    AbelianDecomposition out;
    mpz_class prev = witt(c + 1, g.free_rank);
    out.free_rank = prev;
    for (std::size_t j = 0; j < g.torsion.size(); ++j) {
        mpz_class cur = witt(c + 1, g.free_rank + static_cast<long>(j) + 1);
        out.cyclic_factors.push_back({g.torsion[j], cur - prev});
        prev = std::move(cur);
    }
    return out;
}

} // namespace nilbaer
