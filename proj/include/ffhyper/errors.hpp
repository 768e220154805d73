#pragma once

#include <stdexcept>
#include <string>

namespace ffhyper {

/// Raised when a request exceeds the configured size/precision budget
/// (table too large, 64-bit coefficient overflow, refused sweep, ...).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Unreachable for valid inputs; raising one means a bug in this library.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace ffhyper
