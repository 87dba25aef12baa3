#include "formfactor/errors.hpp"

namespace ff {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DegenerateChain: return "DegenerateChain";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::NegativeWinding: return "NegativeWinding";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::InvalidPairing: return "InvalidPairing";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::QParZero: return "QParZero";
    case ErrorKind::QZero: return "QZero";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotStarShaped: return "NotStarShaped";
    case ErrorKind::NotASymmetry: return "NotASymmetry";
    case ErrorKind::AllPairsDegenerate: return "AllPairsDegenerate";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace ff
