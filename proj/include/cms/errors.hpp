#pragma once

#include <stdexcept>
#include <string>

namespace cms {

enum class ErrorKind {
    infeasible,      // no schedule can satisfy the demands
    guard_exceeded,  // a size/budget guard refused to run
    kind_mismatch,   // algorithm applied to the wrong instance kind
    io,              // file or parse failure
    invalid,         // malformed input data
    internal,        // invariant breach inside a solver
};

class CmsError : public std::runtime_error {
public:
    CmsError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw CmsError(kind, what); }

}  // namespace cms
