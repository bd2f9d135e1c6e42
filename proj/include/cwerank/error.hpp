#pragma once

#include <stdexcept>
#include <string>

namespace cwerank {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document (feed, dataset line, taxonomy file).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input is well-formed but violates a data invariant (duplicate ids,
/// dangling references, cycles).
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A scoring or analysis step cannot be evaluated on the given input
/// (zero ranges, undefined double log, zero variance).
class ComputationError : public Error {
public:
    using Error::Error;
};

} // namespace cwerank
