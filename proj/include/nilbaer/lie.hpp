#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "nilbaer/commutator.hpp"
#include "nilbaer/errors.hpp"

namespace nilbaer {

// An element of the free Lie ring on x1..x_alphabet over the integers,
// stored as a finite map from basic commutators (the Hall basis) to nonzero
// exact coefficients.
class LieElement {
public:
    using Terms = std::map<CommutatorRef, mpz_class, CommutatorLess>;

    explicit LieElement(int alphabet) : alphabet_(alphabet) {
        if (alphabet_ < 1)
            throw invalid_input("lie: alphabet size must be >= 1, got " + std::to_string(alphabet_));
    }

    int alphabet() const { return alphabet_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    mpz_class coefficient(CommutatorRef c) const {
        const auto it = terms_.find(c);
        return it == terms_.end() ? mpz_class(0) : it->second;
    }

    void add_term(CommutatorRef c, const mpz_class& k) {
        if (k == 0)
            return;
        auto [it, fresh] = terms_.emplace(c, k);
        if (!fresh) {
            it->second += k;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    friend bool operator==(const LieElement& a, const LieElement& b) {
        return a.alphabet_ == b.alphabet_ && a.terms_ == b.terms_;
    }

private:
    int alphabet_;
    Terms terms_;
};

inline void require_same_alphabet(const LieElement& u, const LieElement& v) {
    if (u.alphabet() != v.alphabet())
        throw invalid_input("lie: alphabet mismatch (" + std::to_string(u.alphabet()) + " vs " +
                            std::to_string(v.alphabet()) + ")");
}

inline LieElement inject(int alphabet, CommutatorRef c) {
    if (!c->basic())
        throw invalid_input("inject: " + to_string(c) + " is not a basic commutator");
    LieElement e(alphabet);
    if (max_generator_index(c) > alphabet)
        throw invalid_input("inject: " + to_string(c) + " uses generators beyond x" +
                            std::to_string(alphabet));
    e.add_term(c, 1);
    return e;
}

inline LieElement add(const LieElement& u, const LieElement& v) {
    require_same_alphabet(u, v);
    LieElement out = u;
    for (const auto& [c, k] : v.terms())
        out.add_term(c, k);
    return out;
}

inline LieElement scale(const mpz_class& k, const LieElement& u) {
    LieElement out(u.alphabet());
    if (k == 0)
        return out;
    for (const auto& [c, kc] : u.terms())
        out.add_term(c, k * kc);
    return out;
}

namespace detail {
inline LieElement bracket_basic(int alphabet, CommutatorRef h1, CommutatorRef h2);
}

// Bilinear bracket, with every pairwise product of basis elements rewritten
// back into the Hall basis.
inline LieElement bracket(const LieElement& u, const LieElement& v) {
    require_same_alphabet(u, v);
    LieElement out(u.alphabet());
    for (const auto& [h1, k1] : u.terms())
        for (const auto& [h2, k2] : v.terms()) {
            const LieElement w = detail::bracket_basic(u.alphabet(), h1, h2);
            const mpz_class k12 = k1 * k2;
            for (const auto& [c, k] : w.terms())
                out.add_term(c, k12 * k);
        }
    return out;
}

namespace detail {

// [h1,h2] for basic h1, h2, rewritten into the Hall basis:
//   [h,h] = 0
//   h1 < h2                -> -[h2,h1]
//   [h1,h2] already basic  -> itself
//   h1 = [p,q] with q > h2 -> [[p,h2],q] + [p,[q,h2]]        (Jacobi)
// The inner brackets have smaller total weight, and at fixed total weight
// every new top-level pair has a strictly larger right argument, so the
// recursion terminates.
inline LieElement bracket_basic(int alphabet, CommutatorRef h1, CommutatorRef h2) {
    LieElement out(alphabet);
    if (h1 == h2)
        return out;
    if (compare(h1, h2) < 0)
        return scale(-1, bracket_basic(alphabet, h2, h1));
    if (h1->is_generator() || compare(h1->right(), h2) <= 0) {
        const CommutatorRef h = Commutator::make(h1, h2);
        assert(h->basic());
        out.add_term(h, 1);
        return out;
    }
    const CommutatorRef p = h1->left();
    const CommutatorRef q = h1->right();
    return add(bracket(bracket_basic(alphabet, p, h2), inject(alphabet, q)),
               bracket(inject(alphabet, p), bracket_basic(alphabet, q, h2)));
}

// content (gcd of coefficients) division keeps eliminated rows small
inline void divide_by_content(LieElement::Terms& row) {
    mpz_class g = 0;
    for (const auto& [c, k] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_mpz_t());
        if (g == 1)
            return;
    }
    if (g <= 1)
        return;
    for (auto& [c, k] : row)
        mpz_divexact(k.get_mpz_t(), k.get_mpz_t(), g.get_mpz_t());
}

} // namespace detail

// Rank of the integer coefficient vectors over the rationals, decided by
// exact fraction-free elimination on the sparse rows (cross-multiply against
// the pivot row, never divide except by the integer content).
inline std::size_t rank(const std::vector<LieElement>& elements) {
    if (elements.empty())
        return 0;
    for (const auto& e : elements)
        require_same_alphabet(elements.front(), e);
    std::map<CommutatorRef, LieElement::Terms, CommutatorLess> pivots;
    std::size_t r = 0;
    for (const auto& e : elements) {
        LieElement::Terms row = e.terms();
        while (!row.empty()) {
            const auto pivot = pivots.find(row.begin()->first);
            if (pivot == pivots.end())
                break;
            const mpz_class row_lead = row.begin()->second;
            const mpz_class pivot_lead = pivot->second.begin()->second;
            LieElement::Terms next;
            auto emit = [&next](CommutatorRef c, mpz_class k) {
                if (k != 0)
                    next.emplace(c, std::move(k));
            };
            auto ri = row.begin();
            auto pi = pivot->second.begin();
            while (ri != row.end() || pi != pivot->second.end()) {
                if (pi == pivot->second.end() ||
                    (ri != row.end() && compare(ri->first, pi->first) < 0)) {
                    emit(ri->first, pivot_lead * ri->second);
                    ++ri;
                } else if (ri == row.end() || compare(pi->first, ri->first) < 0) {
                    emit(pi->first, -row_lead * pi->second);
                    ++pi;
                } else {
                    emit(ri->first, pivot_lead * ri->second - row_lead * pi->second);
                    ++ri;
                    ++pi;
                }
            }
            detail::divide_by_content(next);
            row = std::move(next);
        }
        if (!row.empty()) {
            ++r;
            pivots.emplace(row.begin()->first, std::move(row));
        }
    }
    return r;
}

inline bool independent(const std::vector<LieElement>& elements) {
    return rank(elements) == elements.size();
}

} // namespace nilbaer
