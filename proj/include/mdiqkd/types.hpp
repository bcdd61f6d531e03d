#pragma once

#include <string>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

/// Measurement basis of a pulse-pair set.
enum class Basis { Z, X };

/// Which of the three per-party sources emitted a pulse:
/// vacuum (O), decoy (X) or signal (Y).
enum class IntensityTag { O = 0, X = 1, Y = 2 };

inline const char* to_string(Basis b) { return b == Basis::Z ? "Z" : "X"; }

inline const char* to_string(IntensityTag t) {
    switch (t) {
        case IntensityTag::O: return "o";
        case IntensityTag::X: return "x";
        default: return "y";
    }
}

inline Basis basis_from_string(const std::string& s) {
    if (s == "Z" || s == "z") return Basis::Z;
    if (s == "X" || s == "x") return Basis::X;
    throw ParseError("unknown basis '" + s + "' (expected Z or X)");
}

inline IntensityTag intensity_from_string(const std::string& s) {
    if (s == "o" || s == "O") return IntensityTag::O;
    if (s == "x" || s == "X") return IntensityTag::X;
    if (s == "y" || s == "Y") return IntensityTag::Y;
    throw ParseError("unknown source tag '" + s + "' (expected o, x or y)");
}

}  // namespace mdiqkd
