#pragma once

#include <stdexcept>
#include <string>

namespace blocksdp {

/// Bad arguments: width mismatch, out-of-range sizes, malformed files.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on an input outside its contract (for example
/// asking for the induction inequality on a matrix that is not an atom).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A computational check contradicted a lemma it was meant to certify.
class FalsificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPatternMatches : public FalsificationError {
public:
    using FalsificationError::FalsificationError;
};

}  // namespace blocksdp
