#ifndef GKM_ERRORS_HPP
#define GKM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gkm {

// Base class for everything this library throws on its own behalf.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input: type strings, words, polynomial strings, JSON payloads.
struct spec_error : error {
    using error::error;
};

// A structural cap was exceeded (group enumeration, determinant dimension,
// brute-force word length).  The operation is refused, never approximated.
struct cap_error : error {
    using error::error;
};

// exact_div was asked to divide p by a non-divisor.
struct inexact_division : error {
    using error::error;
};

// A certification or verification routine found a hard counterexample.
// what() carries the witness.
struct check_error : error {
    using error::error;
};

} // namespace gkm

#endif
