#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilbaer/errors.hpp"

namespace nilbaer {

class Commutator;

// Commutators are interned: one immutable node per distinct tree, living for
// the whole process. Pointer equality is structural equality, which is the
// identity used by every set operation in the library.
using CommutatorRef = const Commutator*;

namespace detail {
struct NodePairHash {
    std::size_t operator()(const std::pair<CommutatorRef, CommutatorRef>& p) const {
        const auto a = std::hash<const void*>{}(p.first);
        const auto b = std::hash<const void*>{}(p.second);
        return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }
};
} // namespace detail

// A formal commutator over the ordered alphabet x1 < x2 < ...: either a
// generator leaf or a pair [left, right]. Weight (leaf count) and the
// basic-commutator predicate are computed once at construction.
class Commutator {
public:
    bool is_generator() const { return left_ == nullptr; }

    int generator_index() const {
        assert(is_generator());
        return index_;
    }

    CommutatorRef left() const {
        assert(!is_generator());
        return left_;
    }

    CommutatorRef right() const {
        assert(!is_generator());
        return right_;
    }

    int weight() const { return weight_; }

    // Cached: leaves are basic; [b,a] is basic iff b, a are basic, a < b,
    // and b is a leaf or the right part of b is <= a.
    bool basic() const { return basic_; }

    static CommutatorRef make_generator(int index);
    static CommutatorRef make(CommutatorRef left, CommutatorRef right);

private:
    explicit Commutator(int index) : weight_(1), index_(index), basic_(true) {}

    Commutator(CommutatorRef l, CommutatorRef r, bool basic)
        : weight_(l->weight_ + r->weight_), index_(0), left_(l), right_(r), basic_(basic) {}

    struct Interner;
    static Interner& interner();

    int weight_;
    int index_;
    CommutatorRef left_ = nullptr;
    CommutatorRef right_ = nullptr;
    bool basic_;
};

// Strict total order: weight first; equal-weight leaves by generator index;
// equal-weight pairs lexicographically by (left, right). A leaf and a pair
// can never tie on weight (1 vs >= 2), so that case is asserted away.
inline std::strong_ordering compare(CommutatorRef a, CommutatorRef b) {
    if (a == b)
        return std::strong_ordering::equal;
    if (a->weight() != b->weight())
        return a->weight() <=> b->weight();
    if (a->is_generator()) {
        assert(b->is_generator());
        return a->generator_index() <=> b->generator_index();
    }
    assert(!b->is_generator());
    const auto by_left = compare(a->left(), b->left());
    return by_left != 0 ? by_left : compare(a->right(), b->right());
}

struct CommutatorLess {
    bool operator()(CommutatorRef a, CommutatorRef b) const { return compare(a, b) < 0; }
};

inline int weight(CommutatorRef c) { return c->weight(); }

inline bool is_basic(CommutatorRef c) { return c->basic(); }

inline int max_generator_index(CommutatorRef c) {
    if (c->is_generator())
        return c->generator_index();
    return std::max(max_generator_index(c->left()), max_generator_index(c->right()));
}

namespace detail {
inline void render(CommutatorRef c, std::string& out) {
    if (c->is_generator()) {
        out += 'x';
        out += std::to_string(c->generator_index());
        return;
    }
    out += '[';
    render(c->left(), out);
    out += ',';
    render(c->right(), out);
    out += ']';
}
} // namespace detail

// Canonical text rendering: generators as x<i>, pairs as [<left>,<right>],
// no whitespace. Used verbatim in all CLI/JSON output.
inline std::string to_string(CommutatorRef c) {
    std::string out;
    detail::render(c, out);
    return out;
}

struct Commutator::Interner {
    std::mutex mu;
    std::vector<std::unique_ptr<Commutator>> nodes;
    std::unordered_map<int, CommutatorRef> generators;
    std::unordered_map<std::pair<CommutatorRef, CommutatorRef>, CommutatorRef, detail::NodePairHash> pairs;
};

inline Commutator::Interner& Commutator::interner() {
    static Interner instance;
    return instance;
}

inline CommutatorRef Commutator::make_generator(int index) {
    if (index < 1)
        throw invalid_input("generator index must be >= 1, got " + std::to_string(index));
    Interner& in = interner();
    std::lock_guard<std::mutex> lock(in.mu);
    auto [it, fresh] = in.generators.try_emplace(index, nullptr);
    if (fresh) {
        in.nodes.emplace_back(new Commutator(index));
        it->second = in.nodes.back().get();
    }
    return it->second;
}

inline CommutatorRef Commutator::make(CommutatorRef left, CommutatorRef right) {
    assert(left && right);
    const bool basic = left->basic() && right->basic() && compare(right, left) < 0 &&
                       (left->is_generator() || compare(left->right(), right) <= 0);
    Interner& in = interner();
    std::lock_guard<std::mutex> lock(in.mu);
    auto [it, fresh] = in.pairs.try_emplace({left, right}, nullptr);
    if (fresh) {
        in.nodes.emplace_back(new Commutator(left, right, basic));
        it->second = in.nodes.back().get();
    }
    return it->second;
}

} // namespace nilbaer
