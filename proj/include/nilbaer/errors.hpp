#pragma once

#include <stdexcept>
#include <string>

namespace nilbaer {

// Argument outside a function's domain: zero weights, broken divisibility
// chains, alphabet mismatches, non-basic injections.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// A theorem-level hypothesis fails; the message names the violated
// inequality with both sides evaluated.
class hypothesis_violation : public std::domain_error {
public:
    explicit hypothesis_violation(const std::string& what) : std::domain_error(what) {}
};

} // namespace nilbaer
