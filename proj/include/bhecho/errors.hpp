// Copyright 2026 The bhecho Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace bhecho {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested Hilbert space exceeds the configured state cap.
struct DimensionError : Error {
    using Error::Error;
};

/// A Fock state does not belong to the basis it was looked up in.
struct LookupError : Error {
    using Error::Error;
};

/// Operators or states built on different bases were combined.
struct CompositionError : Error {
    using Error::Error;
};

/// An iterative solver failed to reach its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// A decay fit could not be performed (too few points, bad parameter).
struct FitError : Error {
    using Error::Error;
};

/// Invalid run configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

}  // namespace bhecho
