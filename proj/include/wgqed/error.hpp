// error.hpp - exception types shared by all wgqed modules

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgqed {

enum class ErrorKind {
    Validation,     // bad input value or shape
    ModelValidity,  // model used outside its regime (e.g. high-Q with a leaky mirror)
    Pole,           // singular response matrix or vanishing product denominator
    Degenerate,     // vanishing Wronskian / numerically degenerate solve
    QuasiDefective, // eigenvectors close to an exceptional point
    Overflow,       // evanescent growth beyond representable range
    Config,         // scenario document parse or schema error
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by decompose() when |v^T v| of some eigenvector collapses.
class QuasiDefectiveError : public Error {
public:
    QuasiDefectiveError(std::size_t index, double transpose_norm)
        : Error(ErrorKind::QuasiDefective,
                "quasi-defective coupling matrix: |v^T v| = " + std::to_string(transpose_norm) +
                    " for mode " + std::to_string(index)),
          index_(index), transpose_norm_(transpose_norm) {}

    std::size_t index() const noexcept { return index_; }
    double transpose_norm() const noexcept { return transpose_norm_; }

private:
    std::size_t index_;
    double transpose_norm_;
};

/// Config errors carry the JSON path of the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(ErrorKind::Config, (path.empty() ? std::string("<root>") : path) + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace wgqed
