// formfactor/errors.hpp
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ff {

enum class ErrorKind {
    DegenerateChain,
    NotPlanar,
    NegativeWinding,
    InvalidMesh,
    InvalidPairing,
    InvalidSpec,
    QParZero,
    QZero,
    SingularDenominator,
    NotConverged,
    BudgetExceeded,
    NotStarShaped,
    NotASymmetry,
    AllPairsDegenerate,
    NonFiniteInput,
    ParseError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; kind() names
/// the violated precondition or invariant.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ff
