#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <span>
#include <vector>

#include "nilbaer/commutator.hpp"
#include "nilbaer/errors.hpp"

namespace nilbaer {

// mu(k): 0 if a squared prime divides k, else (-1)^(number of prime factors).
inline int mobius(long k) {
    if (k < 1)
        throw invalid_input("mobius: argument must be >= 1, got " + std::to_string(k));
    int prime_factors = 0;
    for (long p = 2; p * p <= k; ++p) {
        if (k % p != 0)
            continue;
        k /= p;
        if (k % p == 0)
            return 0;
        ++prime_factors;
    }
    if (k > 1)
        ++prime_factors;
    return prime_factors % 2 == 0 ? 1 : -1;
}

// Witt formula: the number of basic commutators of weight n on d generators,
// (1/n) * sum over k | n of mu(k) * d^(n/k). Exact: the divisor sum is always
// a multiple of n.
inline mpz_class witt(int n, const mpz_class& d) {
    if (n < 1)
        throw invalid_input("witt: weight must be >= 1, got " + std::to_string(n));
    if (d < 0)
        throw invalid_input("witt: generator count must be >= 0");
    mpz_class sum = 0;
    for (int k = 1; k <= n; ++k) {
        if (n % k != 0)
            continue;
        const int mu = mobius(k);
        if (mu == 0)
            continue;
        mpz_class power;
        mpz_pow_ui(power.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(n / k));
        if (mu > 0)
            sum += power;
        else
            sum -= power;
    }
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), static_cast<unsigned long>(n)))
        throw std::logic_error("witt: divisor sum not divisible by weight");
    mpz_class out;
    mpz_divexact_ui(out.get_mpz_t(), sum.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

inline mpz_class witt(int n, long d) { return witt(n, mpz_class(d)); }

// sum of witt(i, m) for lo <= i <= hi; empty ranges give 0.
inline mpz_class witt_range_sum(int m, int lo, int hi) {
    mpz_class sum = 0;
    for (int i = lo; i <= hi; ++i)
        sum += witt(i, m);
    return sum;
}

struct BasisSlice {
    int num_generators = 0;
    int min_weight = 0;
    int max_weight = 0;
    std::vector<CommutatorRef> elements; // ascending under compare, duplicate-free
};

// Enumerates basic commutators on x1..xm by dynamic programming over weight:
// the weight-w slice is built from lower slices as the pairs [b,a] with
// wt(b)+wt(a) = w, a < b, and (b a leaf, or right(b) <= a). Slices are
// memoized per instance and come out sorted, so no post-sorting is needed.
class BasisGenerator {
public:
    explicit BasisGenerator(int num_generators) : m_(num_generators) {
        if (m_ < 1)
            throw invalid_input("basis: generator count must be >= 1, got " + std::to_string(m_));
        by_weight_.emplace_back(); // weight 0 unused
    }

    int num_generators() const { return m_; }

    std::span<const CommutatorRef> slice(int weight) {
        if (weight < 1)
            throw invalid_input("basis: weight must be >= 1, got " + std::to_string(weight));
        ensure(weight);
        return by_weight_[static_cast<std::size_t>(weight)];
    }

    BasisSlice range(int min_weight, int max_weight) {
        if (min_weight < 1)
            throw invalid_input("basis: min weight must be >= 1, got " + std::to_string(min_weight));
        if (min_weight > max_weight)
            throw invalid_input("basis: min weight " + std::to_string(min_weight) +
                                " exceeds max weight " + std::to_string(max_weight));
        BasisSlice out{m_, min_weight, max_weight, {}};
        for (int w = min_weight; w <= max_weight; ++w) {
            const auto s = slice(w);
            out.elements.insert(out.elements.end(), s.begin(), s.end());
        }
        return out;
    }

private:
    void ensure(int weight) {
        while (static_cast<int>(by_weight_.size()) <= weight) {
            const int w = static_cast<int>(by_weight_.size());
            std::vector<CommutatorRef> out;
            if (w == 1) {
                out.reserve(static_cast<std::size_t>(m_));
                for (int i = 1; i <= m_; ++i)
                    out.push_back(Commutator::make_generator(i));
            } else {
                // a < b forces wt(a) <= wt(b); iterating wt(b) ascending with
                // sorted slices emits the weight-w slice already in order.
                for (int wb = (w + 1) / 2; wb <= w - 1; ++wb) {
                    const int wa = w - wb;
                    const auto& bs = by_weight_[static_cast<std::size_t>(wb)];
                    const auto& as = by_weight_[static_cast<std::size_t>(wa)];
                    for (CommutatorRef b : bs) {
                        auto first = as.begin();
                        if (!b->is_generator()) {
                            const CommutatorRef tail = b->right();
                            if (tail->weight() > wa)
                                continue;
                            if (tail->weight() == wa)
                                first = std::lower_bound(as.begin(), as.end(), tail, CommutatorLess{});
                        }
                        auto last = as.end();
                        if (wa == wb)
                            last = std::lower_bound(first, as.end(), b, CommutatorLess{});
                        for (auto it = first; it != last; ++it)
                            out.push_back(Commutator::make(b, *it));
                    }
                }
            }
            by_weight_.push_back(std::move(out));
        }
    }

    int m_;
    std::vector<std::vector<CommutatorRef>> by_weight_;
};

// One-shot convenience; reuse a BasisGenerator when calling repeatedly.
inline BasisSlice generate_basis(int num_generators, int min_weight, int max_weight) {
    BasisGenerator gen(num_generators);
    return gen.range(min_weight, max_weight);
}

} // namespace nilbaer
