#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protoshape {

/// Base class for all library errors. `kind()` is a stable machine-readable
/// tag; `what()` carries the human-readable message with the witness data.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

/// The given open-set family violates a topology axiom; the message names
/// the violating pair and the missing union/intersection.
class NotATopology : public Error {
public:
    explicit NotATopology(const std::string& message) : Error("NotATopology", message) {}
};

class MissingEmptyOrFull : public Error {
public:
    explicit MissingEmptyOrFull(const std::string& message)
        : Error("MissingEmptyOrFull", message) {}
};

class TooLarge : public Error {
public:
    TooLarge(std::size_t size, std::size_t bound)
        : Error("TooLarge", "space has " + std::to_string(size) +
                                " points, enumeration bound is " + std::to_string(bound)),
          size(size), bound(bound) {}

    std::size_t size;
    std::size_t bound;
};

class SpaceMismatch : public Error {
public:
    explicit SpaceMismatch(const std::string& message) : Error("SpaceMismatch", message) {}
};

class NotContinuous : public Error {
public:
    explicit NotContinuous(const std::string& message) : Error("NotContinuous", message) {}
};

class NotARefinement : public Error {
public:
    explicit NotARefinement(const std::string& message) : Error("NotARefinement", message) {}
};

class DepthTooShallow : public Error {
public:
    DepthTooShallow(int required, int actual)
        : Error("DepthTooShallow", "operation needs truncation depth " +
                                       std::to_string(required) + ", value has depth " +
                                       std::to_string(actual)),
          required(required), actual(actual) {}

    int required;
    int actual;
};

class NotAComplex : public Error {
public:
    explicit NotAComplex(const std::string& message) : Error("NotAComplex", message) {}
};

class NotAChainMap : public Error {
public:
    explicit NotAChainMap(const std::string& message) : Error("NotAChainMap", message) {}
};

class Mismatch : public Error {
public:
    explicit Mismatch(const std::string& message) : Error("Mismatch", message) {}
};

class NoMorphismFound : public Error {
public:
    NoMorphismFound(int degree, const std::string& piece)
        : Error("NoMorphismFound", "no admissible image for piece " + piece +
                                       " at degree " + std::to_string(degree)),
          degree(degree), piece(piece) {}

    int degree;
    std::string piece;
};

/// Structural validation failure of a constructed value (bad point id,
/// non-reflexive relation, broken simplicial identity, malformed document...).
class InvalidValue : public Error {
public:
    explicit InvalidValue(const std::string& message) : Error("InvalidValue", message) {}
};

} // namespace protoshape
