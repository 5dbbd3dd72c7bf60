#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nilbaer/errors.hpp"
#include "nilbaer/hall_basis.hpp"
#include "nilbaer/lie.hpp"
#include "nilbaer/multiplier.hpp"

namespace nilbaer::verify {

struct Options {
    int max_gens = 3;
    int max_n = 2;
    int max_class = 5;
    int max_weight = 10;
    int random_triples = 500;
    unsigned long seed = 0x5eed5eedUL;
    // Refuse to run if the grid would enumerate more pairs than this.
    long pair_cap = 20'000'000;
    // Empty = all suites.
    std::vector<std::string> suites;
    // Testing only: corrupt exactly one comparison of the named suite so the
    // failure-reporting path can be exercised end to end.
    std::string mutate;
};

struct Failure {
    std::string suite;
    std::string point;
    std::string expected;
    std::string actual;
};

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
};

struct Report {
    std::vector<SuiteResult> suites;
    std::vector<Failure> failures; // detailed, capped; counts above are exact

    bool ok() const {
        for (const auto& s : suites)
            if (s.failures > 0)
                return false;
        return true;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"witt",         "cardinality", "basicness",
                                                "disjointness", "lie",         "rank",
                                                "abelian",      "poly"};
    return names;
}

namespace detail {

constexpr std::size_t max_recorded_failures = 50;

class Runner {
public:
    explicit Runner(const Options& opts) : opts_(opts) {
        for (const auto& s : opts_.suites)
            if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
                throw invalid_input("verify: unknown suite '" + s + "'");
        if (!opts_.mutate.empty() &&
            std::find(suite_names().begin(), suite_names().end(), opts_.mutate) ==
                suite_names().end())
            throw invalid_input("verify: unknown suite '" + opts_.mutate + "' for --mutate");
    }

    bool wants(const std::string& suite) const {
        return opts_.suites.empty() ||
               std::find(opts_.suites.begin(), opts_.suites.end(), suite) != opts_.suites.end();
    }

    SuiteResult& suite(const std::string& name) {
        for (auto& s : report_.suites)
            if (s.name == name)
                return s;
        report_.suites.push_back({name, 0, 0});
        return report_.suites.back();
    }

    void check_eq(const std::string& suite_name, const std::string& point,
                  const mpz_class& expected, mpz_class actual) {
        if (!mutated_ && suite_name == opts_.mutate) {
            actual += 1;
            mutated_ = true;
        }
        record(suite_name, point, expected == actual, expected.get_str(), actual.get_str());
    }

    void check_true(const std::string& suite_name, const std::string& point, bool ok,
                    const std::string& expected, const std::string& actual) {
        if (!mutated_ && suite_name == opts_.mutate) {
            ok = false;
            mutated_ = true;
        }
        record(suite_name, point, ok, expected, actual);
    }

    const Options& options() const { return opts_; }
    Report& report() { return report_; }

    BasisGenerator& basis(int m) {
        const auto it = bases_.find(m);
        if (it != bases_.end())
            return it->second;
        return bases_.try_emplace(m, m).first->second;
    }

private:
    void record(const std::string& suite_name, const std::string& point, bool ok,
                const std::string& expected, const std::string& actual) {
        SuiteResult& s = suite(suite_name);
        ++s.checks;
        if (ok)
            return;
        ++s.failures;
        if (report_.failures.size() < max_recorded_failures)
            report_.failures.push_back({suite_name, point, expected, actual});
    }

    Options opts_;
    Report report_;
    std::map<int, BasisGenerator> bases_;
    bool mutated_ = false;
};

inline std::string point_name(const MultiplierParams& p) {
    return "m=" + std::to_string(p.generators) + " n=" + std::to_string(p.n) +
           " c1=" + std::to_string(p.c1) + " c2=" + std::to_string(p.c2);
}

template <typename F>
inline void for_grid(const Options& o, bool require_h1_only, F&& body) {
    for (int m = 1; m <= o.max_gens; ++m)
        for (int n = 1; n <= o.max_n; ++n)
            for (int c1 = 1; c1 <= o.max_class; ++c1)
                for (int c2 = 1; c2 <= c1; ++c2) {
                    const MultiplierParams p{m, n, c1, c2};
                    if (!require_h1_only && !check_hypotheses(p).ok())
                        continue;
                    body(p);
                }
}

inline void enforce_pair_cap(const Options& o) {
    mpz_class total = 0;
    for_grid(o, true, [&](const MultiplierParams& p) {
        total += nilbaer::detail::window_size(p, SetKind::A) +
                 nilbaer::detail::window_size(p, SetKind::B) +
                 nilbaer::detail::window_size(p, SetKind::C);
    });
    if (total > o.pair_cap)
        throw invalid_input("verify: grid would enumerate about " + total.get_str() +
                            " pairs, above the cap of " + std::to_string(o.pair_cap) +
                            "; lower --max-class/--max-n/--max-gens or raise --cap");
}

inline void run_witt(Runner& r) {
    const Options& o = r.options();
    for (int m = 1; m <= o.max_gens; ++m) {
        BasisGenerator& basis = r.basis(m);
        for (int w = 1; w <= o.max_weight; ++w)
            r.check_eq("witt", "m=" + std::to_string(m) + " w=" + std::to_string(w),
                       witt(w, m), mpz_class(static_cast<long>(basis.slice(w).size())));
    }
}

inline void run_cardinality(Runner& r) {
    for_grid(r.options(), true, [&](const MultiplierParams& p) {
        BasisGenerator& basis = r.basis(p.generators);
        const std::string at = point_name(p);
        const PairSet a = enumerate_set(p, SetKind::A, basis);
        const PairSet c = enumerate_set(p, SetKind::C, basis);
        const auto inter = pair_intersection(a.pairs, c.pairs);
        const auto diff = pair_difference(a.pairs, c.pairs);
        r.check_eq("cardinality", at + " |A|", card_A(p),
                   mpz_class(static_cast<long>(a.size())));
        r.check_eq("cardinality", at + " |A cap C|", card_A_cap_C(p),
                   mpz_class(static_cast<long>(inter.size())));
        r.check_eq("cardinality", at + " |A - C|", card_A_minus_C(p),
                   mpz_class(static_cast<long>(diff.size())));
        if (!disjoint_case(p)) {
            // the three-part split of A behind the overlapping-case formula
            long in_a1 = 0, in_a2 = 0, in_a3 = 0;
            for (const auto& pr : a.pairs) {
                if (pr.alpha->weight() <= p.c1)
                    ++in_a1;
                else if (pr.beta->weight() <= p.c2 + p.n)
                    ++in_a2;
                else
                    ++in_a3;
            }
            const int m = p.generators;
            const mpz_class middle = witt_range_sum(m, p.c1 + 1, p.c2 + p.n);
            r.check_eq("cardinality", at + " |A1|",
                       witt_range_sum(m, p.c1 + 1, p.c1 + p.n) *
                           witt_range_sum(m, p.c2 + 1, p.c1),
                       mpz_class(in_a1));
            r.check_eq("cardinality", at + " |A2|", witt(2, middle), mpz_class(in_a2));
            r.check_eq("cardinality", at + " |A3|",
                       witt_range_sum(m, p.c2 + p.n + 1, p.c1 + p.n) * middle,
                       mpz_class(in_a3));
        }
    });
}

inline void run_basicness(Runner& r) {
    for_grid(r.options(), false, [&](const MultiplierParams& p) {
        BasisGenerator& basis = r.basis(p.generators);
        const std::string at = point_name(p);
        for (const SetKind kind : {SetKind::A, SetKind::B, SetKind::C}) {
            const PairSet s = enumerate_set(p, kind, basis);
            const CommutatorPair* bad = nullptr;
            for (const auto& pr : s.pairs)
                if (!pair_is_basic(pr)) {
                    bad = &pr;
                    break;
                }
            r.check_true("basicness",
                         at + " set " + std::string(to_string(kind)) + " (" +
                             std::to_string(s.size()) + " pairs)",
                         bad == nullptr, "every pair basic",
                         bad ? "non-basic " + to_string(*bad) : "every pair basic");
        }
    });
}

inline void run_disjointness(Runner& r) {
    for_grid(r.options(), false, [&](const MultiplierParams& p) {
        BasisGenerator& basis = r.basis(p.generators);
        const PairSet a = enumerate_set(p, SetKind::A, basis);
        const PairSet b = enumerate_set(p, SetKind::B, basis);
        const PairSet c = enumerate_set(p, SetKind::C, basis);
        const auto d = pair_difference(a.pairs, c.pairs);
        const auto overlap = pair_intersection(pair_union(b.pairs, c.pairs), d);
        r.check_true("disjointness", point_name(p), overlap.empty(),
                     "(B u C) and (A - C) disjoint",
                     overlap.empty() ? "disjoint" : "shared " + to_string(overlap.front()));
    });
}

inline LieElement random_homogeneous(std::mt19937_64& rng, BasisGenerator& basis, int weight) {
    const auto slice = basis.slice(weight);
    LieElement out(basis.num_generators());
    std::uniform_int_distribution<std::size_t> pick(0, slice.size() - 1);
    std::uniform_int_distribution<int> coeff(1, 3);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> terms(1, 3);
    const int k = terms(rng);
    for (int i = 0; i < k; ++i)
        out.add_term(slice[pick(rng)], coeff(rng) * (sign(rng) ? 1 : -1));
    return out;
}

inline void run_lie(Runner& r) {
    const Options& o = r.options();
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> alphabet(2, std::max(2, o.max_gens));

    for (int t = 0; t < o.random_triples; ++t) {
        const int m = alphabet(rng);
        BasisGenerator& basis = r.basis(m);
        std::uniform_int_distribution<int> wu(1, 6);
        const int p = wu(rng);
        std::uniform_int_distribution<int> wv(1, 7 - p);
        const int q = wv(rng);
        std::uniform_int_distribution<int> ww(1, 8 - p - q);
        const int w = ww(rng);
        const LieElement u = random_homogeneous(rng, basis, p);
        const LieElement v = random_homogeneous(rng, basis, q);
        const LieElement z = random_homogeneous(rng, basis, w);
        const std::string at = "triple #" + std::to_string(t) + " m=" + std::to_string(m) +
                               " weights " + std::to_string(p) + "," + std::to_string(q) + "," +
                               std::to_string(w);

        const LieElement uv = bracket(u, v);
        r.check_true("lie", at + " antisymmetry", uv == scale(-1, bracket(v, u)),
                     "[u,v] = -[v,u]", "mismatch");
        const LieElement jac = add(add(bracket(u, bracket(v, z)), bracket(v, bracket(z, u))),
                                   bracket(z, bracket(u, v)));
        r.check_true("lie", at + " jacobi", jac.is_zero(), "0",
                     jac.is_zero() ? "0" : "nonzero");
        bool graded = true;
        for (const auto& [key, coeff] : uv.terms())
            graded = graded && key->weight() == p + q;
        r.check_true("lie", at + " grading", graded, "all weight " + std::to_string(p + q),
                     graded ? "homogeneous" : "mixed weights");
    }

    // brackets of basic pairs are fixpoints of the rewriting
    for (int m = 1; m <= o.max_gens; ++m) {
        BasisGenerator& basis = r.basis(m);
        for (int w = 2; w <= std::min(6, o.max_weight); ++w)
            for (const CommutatorRef h : basis.slice(w))
                r.check_true("lie",
                             "m=" + std::to_string(m) + " fixpoint " + to_string(h),
                             bracket(inject(m, h->left()), inject(m, h->right())) == inject(m, h),
                             "inject(" + to_string(h) + ")", "rewritten differently");
    }

    // degree-w brackets of complementary basis slices span exactly the
    // weight-w component (rank = witt)
    {
        BasisGenerator& basis = r.basis(2);
        for (int w = 2; w <= std::min(5, o.max_weight); ++w) {
            std::vector<LieElement> rows;
            for (int a = 1; a < w; ++a)
                for (const CommutatorRef u : basis.slice(a))
                    for (const CommutatorRef v : basis.slice(w - a)) {
                        LieElement e = bracket(inject(2, u), inject(2, v));
                        if (!e.is_zero())
                            rows.push_back(std::move(e));
                    }
            r.check_eq("lie", "m=2 span of degree-" + std::to_string(w) + " brackets",
                       witt(w, 2), mpz_class(static_cast<long>(rank(rows))));
        }
    }
}

inline void run_rank(Runner& r) {
    for_grid(r.options(), false, [&](const MultiplierParams& p) {
        BasisGenerator& basis = r.basis(p.generators);
        const std::string at = point_name(p);
        const PairSet d = basis_D(p, basis);
        const mpz_class k = multiplier_rank(p);
        r.check_eq("rank", at + " |D| vs closed form", k,
                   mpz_class(static_cast<long>(d.size())));
        r.check_eq("rank", at + " closed form vs |A|-|A cap C|", card_A_minus_C(p), k);
        std::vector<LieElement> injected;
        injected.reserve(d.size());
        for (const auto& pr : d.pairs)
            injected.push_back(inject(p.generators, as_commutator(pr)));
        r.check_true("rank", at + " basis injections independent", independent(injected),
                     "independent", "dependent");
    });
}

// Independent route for the abelian suite: the multiplier of a direct sum of
// cyclic groups collects one tensor product per unordered pair of factors.
struct TensorPairShape {
    mpz_class free_rank;
    std::map<long, mpz_class> torsion; // modulus -> multiplicity, zeros dropped
};

inline TensorPairShape schur_by_tensor_pairs(long free_rank, const std::vector<long>& torsion) {
    TensorPairShape out;
    out.free_rank = mpz_class(free_rank) * (free_rank - 1) / 2;
    for (std::size_t j = 0; j < torsion.size(); ++j) {
        if (free_rank > 0)
            out.torsion[torsion[j]] += free_rank;
        for (std::size_t i = 0; i < j; ++i)
            out.torsion[std::gcd(torsion[i], torsion[j])] += 1;
    }
    std::erase_if(out.torsion, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline std::map<long, mpz_class> collected_torsion(const AbelianDecomposition& d) {
    std::map<long, mpz_class> out;
    for (const auto& f : d.cyclic_factors)
        out[f.modulus] += f.multiplicity;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

template <typename F>
inline void for_torsion_chains(long max_len, long max_modulus, F&& body) {
    std::vector<long> chain;
    auto rec = [&](auto&& self, long bound) -> void {
        body(chain);
        if (static_cast<long>(chain.size()) == max_len)
            return;
        for (long n = 2; n <= bound; ++n) {
            if (!chain.empty() && chain.back() % n != 0)
                continue;
            chain.push_back(n);
            self(self, n);
            chain.pop_back();
        }
    };
    rec(rec, max_modulus);
}

inline void run_abelian(Runner& r) {
    for (long f = 0; f <= 3; ++f)
        for_torsion_chains(3, 12, [&](const std::vector<long>& chain) {
            std::string at = "Z^" + std::to_string(f);
            for (const long n : chain)
                at += "+Z_" + std::to_string(n);
            const AbelianDecomposition got = abelian_multiplier({f, chain}, 1);
            const TensorPairShape want = schur_by_tensor_pairs(f, chain);
            r.check_eq("abelian", at + " free rank", want.free_rank, got.free_rank);
            const auto got_torsion = collected_torsion(got);
            std::string want_str, got_str;
            for (const auto& [mod, mult] : want.torsion)
                want_str += "Z_" + std::to_string(mod) + "^" + mult.get_str() + " ";
            for (const auto& [mod, mult] : got_torsion)
                got_str += "Z_" + std::to_string(mod) + "^" + mult.get_str() + " ";
            r.check_true("abelian", at + " torsion", got_torsion == want.torsion,
                         want_str.empty() ? "trivial" : want_str,
                         got_str.empty() ? "trivial" : got_str);
        });
}

inline void run_poly(Runner& r) {
    const Options& o = r.options();
    const int max_class = std::min(4, o.max_class);
    std::vector<std::vector<int>> rows;
    std::vector<int> row;
    auto build = [&](auto&& self) -> void {
        if (!row.empty())
            rows.push_back(row);
        if (static_cast<int>(row.size()) == 3)
            return;
        for (int c = 1; c <= max_class; ++c) {
            row.push_back(c);
            self(self);
            row.pop_back();
        }
    };
    build(build);

    for (int m = 1; m <= o.max_gens; ++m)
        for (int n = 1; n <= o.max_n; ++n)
            for (const auto& classes : rows) {
                if (classes.front() < n)
                    continue;
                std::string at = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " row=(";
                for (std::size_t i = 0; i < classes.size(); ++i)
                    at += (i ? "," : "") + std::to_string(classes[i]);
                at += ")";
                const mpz_class full = polynilpotent_rank({m, n, classes});
                if (classes.size() == 1) {
                    mpz_class direct = 0;
                    for (int i = classes[0] + 1; i <= classes[0] + n; ++i)
                        direct += witt(i, m);
                    r.check_eq("poly", at + " base case", direct, full);
                } else {
                    std::vector<int> prefix(classes.begin(), classes.end() - 1);
                    r.check_eq("poly", at + " recursion",
                               witt(classes.back() + 1, polynilpotent_rank({m, n, prefix})),
                               full);
                }
            }

    if (o.max_gens >= 2 && o.max_n >= 2 && max_class >= 2)
        r.check_eq("poly", "spot m=2 n=2 row=(2,1)", mpz_class(10),
                   polynilpotent_rank({2, 2, {2, 1}}));
}

} // namespace detail

inline Report run(const Options& opts) {
    detail::Runner runner(opts);
    const bool enumerates = runner.wants("cardinality") || runner.wants("basicness") ||
                            runner.wants("disjointness") || runner.wants("rank");
    if (enumerates)
        detail::enforce_pair_cap(opts);
    if (runner.wants("witt"))
        detail::run_witt(runner);
    if (runner.wants("cardinality"))
        detail::run_cardinality(runner);
    if (runner.wants("basicness"))
        detail::run_basicness(runner);
    if (runner.wants("disjointness"))
        detail::run_disjointness(runner);
    if (runner.wants("lie"))
        detail::run_lie(runner);
    if (runner.wants("rank"))
        detail::run_rank(runner);
    if (runner.wants("abelian"))
        detail::run_abelian(runner);
    if (runner.wants("poly"))
        detail::run_poly(runner);
    return runner.report();
}

} // namespace nilbaer::verify
