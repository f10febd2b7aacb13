#pragma once

#include <stdexcept>
#include <string>

namespace quartic_zeta {

// Input could not be parsed or fails basic validation (CLI exit 2).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The input curve is singular; carries a human-readable witness (CLI exit 3).
struct singular_curve_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural assumption was violated at runtime: Bezout system infeasible,
// orbit-correction division inexact, parity coupling nonzero (CLI exit 4).
struct assumption_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Engine result disagrees with the exhaustive oracle (CLI exit 5).
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A p-adic value became indistinguishable from zero at working precision,
// or a result lost more precision than the schedule allows.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed the desk-scale budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace quartic_zeta
