#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coclust {

// Base class for all library errors. Every error carries a one-line,
// human-readable message suitable for CLI diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A registration field exceeded its hard length limit.
class FieldTooLong : public Error {
public:
    FieldTooLong(std::string field, std::size_t limit, std::size_t actual)
        : Error(field + " exceeds the " + std::to_string(limit) +
                "-character limit (" + std::to_string(actual) + " given)"),
          field_(std::move(field)),
          limit_(limit) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::string field_;
    std::size_t limit_;
};

class EmptyKeywords : public Error {
public:
    EmptyKeywords() : Error("no keyword survives normalization") {}
};

class UnknownLink : public Error {
public:
    explicit UnknownLink(std::int64_t id)
        : Error("unknown link id " + std::to_string(id)) {}
};

// A cluster's update denominator fell below the configured guard, so the
// closed-form membership update is singular for that cluster.
class DegenerateCluster : public Error {
public:
    explicit DegenerateCluster(std::size_t cluster, std::string context = {})
        : Error("degenerate cluster " + std::to_string(cluster) +
                (context.empty() ? std::string{} : ": " + context)),
          cluster_(cluster) {}

    std::size_t cluster() const noexcept { return cluster_; }

private:
    std::size_t cluster_;
};

class AllClipped : public Error {
public:
    AllClipped() : Error("all entries non-positive; cannot renormalize") {}
};

class NonFinite : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class CorruptStore : public Error {
public:
    CorruptStore(std::size_t line, const std::string& what)
        : Error("corrupt store at line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A persisted field violates its registration-time limit.
class LimitViolation : public Error {
public:
    using Error::Error;
};

}  // namespace coclust
