#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

/// Bad input: malformed sum, non-unit residue, non-prime where a prime is
/// required, and so on. The CLI maps this to exit code 2.
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A search or enumeration exceeded its configured budget (weight cap,
/// node count, memory estimate). Distinct from "no result exists".
/// The CLI maps this to exit code 3.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. Thrown by verifier routines when two
/// independent computations of the same quantity disagree.
class verification_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cyclo
