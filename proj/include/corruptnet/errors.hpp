#pragma once

#include <stdexcept>
#include <string>

namespace corruptnet {

// Bad arguments, malformed input, or a call outside an operation's
// documented domain. Maps to CLI exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// The instance violates an assumption the algorithm's guarantee depends on
// (e.g. no truthful majority, or the graph is not an expander). These are
// distinct from usage errors: the call was well-formed, the instance is the
// problem. Maps to CLI exit code 2.
class InstanceError : public std::runtime_error {
public:
    enum class Kind { NoLargeComponent, AmbiguousInstance, ImpossibleInstance };

    InstanceError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

    static InstanceError no_large_component(const std::string& what) {
        return {Kind::NoLargeComponent, what};
    }
    static InstanceError ambiguous(const std::string& what) {
        return {Kind::AmbiguousInstance, what};
    }
    static InstanceError impossible(const std::string& what) {
        return {Kind::ImpossibleInstance, what};
    }

private:
    Kind kind_;
};

// An exhaustive search hit its configured work budget before reaching an
// answer. Never silently converted into a verdict. Maps to CLI exit code 3.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace corruptnet
