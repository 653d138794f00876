#pragma once

#include <stdexcept>
#include <string>

namespace unistab {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A contract violation in user-supplied data (bad tables, shape mismatch,
// failed axiom, out-of-range index).
class ValidationError : public Error {
public:
    using Error::Error;
};

// The operation is not defined for this variant (e.g. rank over Z,
// enumeration of an infinite ring).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// The request is well-formed but exceeds a hard size cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

// An internal consistency property failed (d*d != 0, functoriality broken).
class IntegrityError : public Error {
public:
    using Error::Error;
};

} // namespace unistab
