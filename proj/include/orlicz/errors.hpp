#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Raised when a parsed potential fails the positivity or convexity audit.
/// `witness` holds the offending abscissa.
class NotYoung : public Error {
public:
    NotYoung(const std::string& what, double witness) : Error(what), witness(witness) {}
    double witness;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double previous, double last)
        : Error(what), previous(previous), last(last) {}
    double previous;
    double last;
};

class BracketFailure : public Error {
public:
    using Error::Error;
};

class NoCramer : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class AllRejected : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ValidityFloor : public Error {
public:
    using Error::Error;
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

class Psi2Violated : public Error {
public:
    using Error::Error;
};

}  // namespace orlicz
