#pragma once

#include <stdexcept>
#include <string>

namespace posvote {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (profile files, 3DM files, rule specs).
class ParseError : public Error {
public:
    using Error::Error;
};

// A precondition violation: bad arguments, a rule outside the operation's
// domain, an inconsistent construction request.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A search or enumeration exceeded its node/extension budget.  This is an
// "unknown", not a "no": callers must not fold it into a negative answer.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace posvote
