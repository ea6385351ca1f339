#pragma once

#include <stdexcept>
#include <string>

namespace trichain {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonGraphical : Error {
    using Error::Error;
};

struct InvalidSwitch : Error {
    using Error::Error;
};

struct NoValidPair : Error {
    using Error::Error;
};

struct MinDegreeTooSmall : Error {
    using Error::Error;
};

struct PlantImpossible : Error {
    using Error::Error;
};

// Raised when the case waterfall finds no applicable case; unreachable for
// min degree >= 3 and treated as a defect if it ever fires.
struct InternalContradiction : Error {
    using Error::Error;
};

struct SpaceTooLarge : Error {
    using Error::Error;
};

struct NotIrreducible : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

}  // namespace trichain
