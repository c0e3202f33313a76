#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vfive {

/// Coarse failure category, mapped to CLI exit codes (input=2, search=3, budget=4).
enum class ErrorKind { Input, Search, Budget };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Unknown token while parsing a circuit string.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::string lexeme)
        : Error(ErrorKind::Input,
                "unknown token '" + lexeme + "' at position " + std::to_string(position)),
          position_(position),
          lexeme_(std::move(lexeme)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& lexeme() const noexcept { return lexeme_; }

private:
    std::size_t position_;
    std::string lexeme_;
};

class EpsilonTooLarge : public Error {
public:
    explicit EpsilonTooLarge(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class NotRepresentableError : public Error {
public:
    explicit NotRepresentableError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

class WindowExhausted : public Error {
public:
    explicit WindowExhausted(const std::string& what) : Error(ErrorKind::Search, what) {}
};

class SearchExhausted : public Error {
public:
    explicit SearchExhausted(const std::string& what) : Error(ErrorKind::Search, what) {}
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

class TableCapExceeded : public Error {
public:
    explicit TableCapExceeded(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

class EmptySample : public Error {
public:
    explicit EmptySample(const std::string& what) : Error(ErrorKind::Input, what) {}
};

}  // namespace vfive
