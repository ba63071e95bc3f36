#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kuzcalc {

/// Input text could not be parsed. `position` is a 0-based offset into the text.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, std::size_t position)
        : std::runtime_error(std::move(msg)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A mathematical precondition failed (inhomogeneous input, singular form,
/// weight mismatch, non-invertible matrix, ...). CLI exit code 2.
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An internal consistency audit failed. CLI exit code 3.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kuzcalc
