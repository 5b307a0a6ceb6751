#pragma once

#include <stdexcept>
#include <string>

namespace sjd {

enum class ErrorCode {
    InvalidArgument = 1,
    Domain = 2,
    Singular = 3,
    Schema = 4,
    Io = 6,
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& w) : Error(ErrorCode::InvalidArgument, w) {}
};

// A point failed its domain certificate (Im Ω ≻ 0 or I − WW̄ ≻ 0).
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};

struct SingularMatrix : Error {
    SingularMatrix(const std::string& w, double cond)
        : Error(ErrorCode::Singular, w), condition(cond) {}
    double condition;
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& w) : Error(ErrorCode::Schema, w) {}
};

}  // namespace sjd
