#pragma once
// Error hierarchy: every failure mode the library reports is a distinct type
// so callers (and tests) can react to the cause rather than parse messages.

#include <stdexcept>
#include <string>

namespace jcm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter outside its documented domain (negative alpha, m < 1, ...).
struct InvalidParameter : Error { using Error::Error; };

// A moment operator would read past the stored amplitude range.  Raised
// instead of silently truncating the operator sum.
struct HeadroomError : Error { using Error::Error; };

// Operation evaluated outside the regime where its formula is valid
// (nonzero detuning for the resonance-only ratios, unsupported (kind, N)
// threshold, unavailable kernel ISA, ...).
struct UnsupportedRegime : Error { using Error::Error; };

// Field state outside the class a closed form was derived for (e.g. the
// coherent-only expressions fed a custom superposition, or a state that
// fails the vanishing-moment selection rule).
struct UnsupportedState : Error { using Error::Error; };

// Input is degenerate for the requested reduction (zero-photon field in the
// rescaled factor, constant series in a correlation, ...).
struct DegenerateInput : Error { using Error::Error; };

// ODE step too coarse for the fastest Rabi block.
struct InvalidStep : Error { using Error::Error; };

// Series too short for the requested detection window.
struct InsufficientData : Error { using Error::Error; };

// Malformed CSV / state file; message carries the offending line number.
struct ParseError : Error { using Error::Error; };

// Filesystem failure; message carries the destination path.
struct IoError : Error { using Error::Error; };

} // namespace jcm
