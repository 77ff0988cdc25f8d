#pragma once

#include <stdexcept>

namespace ccl {

/// A configured size guard (worlds, bases, models, vertex products) was hit.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was applied to a theory outside its domain, e.g. a
/// single-space method on a theory with several choice spaces.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A choice space admits no mass function agreeing with mu: either no
/// coherent selection exists or the coherent ones cannot carry the
/// marginals.
class EmptyCredalSetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ccl
