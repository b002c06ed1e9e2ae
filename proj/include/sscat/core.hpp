#ifndef SSCAT_CORE_HPP
#define SSCAT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sscat {

using Idx = std::size_t;
inline constexpr Idx npos = std::numeric_limits<Idx>::max();

// Default cap on candidate tuples visited by any exhaustive search.
inline constexpr std::uint64_t kDefaultMaxEnum = 1'000'000;

// Exceeding the enumeration bound is a distinct outcome, never a silent
// truncation and never a negative verdict.
class EnumerationLimitError : public std::runtime_error {
public:
    explicit EnumerationLimitError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// Raised when an operation's precondition fails (unknown identifier,
// truncation too small, input outside the decidable regime, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

// Counts candidate tuples across one logical operation.
class Budget {
public:
    explicit Budget(std::uint64_t max_enum = kDefaultMaxEnum) : max_(max_enum) {}

    void spend(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > max_) {
            throw EnumerationLimitError(
                "enumeration bound exceeded: " + std::to_string(used_) + " > " +
                std::to_string(max_) + " candidate tuples");
        }
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return max_; }

private:
    std::uint64_t used_ = 0;
    std::uint64_t max_;
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

    // Representatives normalized to the smallest index in each class.
    std::vector<std::size_t> classes() {
        std::vector<std::size_t> rep(parent_.size(), npos);
        std::vector<std::size_t> out(parent_.size());
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (rep[r] == npos) rep[r] = i;
            out[i] = rep[r];
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace sscat

#endif  // SSCAT_CORE_HPP
