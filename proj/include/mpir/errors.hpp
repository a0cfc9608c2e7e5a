#pragma once

#include <stdexcept>
#include <string>

namespace mpir {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroInverse : Error {
    ZeroInverse() : Error("multiplicative inverse of zero requested") {}
};

struct FieldTooSmall : Error {
    explicit FieldTooSmall(const std::string& what) : Error(what) {}
};

struct Inconsistent : Error {
    explicit Inconsistent(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct NonIntegerStageCount : Error {
    explicit NonIntegerStageCount(const std::string& what) : Error(what) {}
};

struct IllConditioned : Error {
    explicit IllConditioned(const std::string& what) : Error(what) {}
};

struct LedgerUnderflow : Error {
    explicit LedgerUnderflow(const std::string& what) : Error(what) {}
};

struct PoolUnderflow : Error {
    explicit PoolUnderflow(const std::string& what) : Error(what) {}
};

struct DecodeMismatch : Error {
    explicit DecodeMismatch(const std::string& what) : Error(what) {}
};

struct DesiredUndetermined : Error {
    explicit DesiredUndetermined(const std::string& what) : Error(what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace mpir
