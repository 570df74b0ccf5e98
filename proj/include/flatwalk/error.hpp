#pragma once

#include <stdexcept>
#include <string>

namespace flatwalk {

// Invalid model inputs or precondition violations. The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed files, JSON, or command lines. The CLI maps these to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace flatwalk
