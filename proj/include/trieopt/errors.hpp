#ifndef TRIEOPT_ERRORS_HPP
#define TRIEOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace trieopt {

/// Input that parsed but violates a structural contract (non-tree edges,
/// negative rates, missing endpoints, ...). CLI maps this to exit code 2.
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed file or unusable parameter value. CLI maps this to exit code 1.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A condition the library itself guarantees was broken, e.g. a reconfiguration
/// step that would disconnect the network. Indicates a bug in the caller-supplied
/// plan or in the planner; never silently repaired.
class InternalInvariantError : public std::logic_error {
public:
    explicit InternalInvariantError(const std::string& what) : std::logic_error(what) {}
};

} // namespace trieopt

#endif
