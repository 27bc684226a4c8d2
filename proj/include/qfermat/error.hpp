#pragma once

#include <stdexcept>
#include <string>

namespace qfermat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Valuation of zero requested.
class InfiniteValuation : public Error {
public:
    using Error::Error;
};

class MissingCoefficient : public Error {
public:
    using Error::Error;
};

class BadReduction : public Error {
public:
    using Error::Error;
};

/// A computed quantity contradicts the trace/point-count normalization.
class CalibrationViolation : public Error {
public:
    using Error::Error;
};

/// Newform data could not be obtained (offline, network failure, no cache).
class DataUnavailable : public Error {
public:
    using Error::Error;
};

class MissingFile : public DataUnavailable {
public:
    using DataUnavailable::DataUnavailable;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// The elimination method does not apply to the requested q.
class MethodInapplicable : public Error {
public:
    using Error::Error;
};

}  // namespace qfermat
