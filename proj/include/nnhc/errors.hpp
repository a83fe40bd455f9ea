#pragma once

#include <stdexcept>
#include <string>

namespace nnhc {

/// Bad caller-supplied data: empty or ragged datasets, non-finite values,
/// dimension mismatches, malformed serialized input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A neighbor depth or point id outside the valid range for the dataset.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The requested k-NN backend cannot serve the requested metric.
class UnsupportedBackend : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Operation needs more points than the dataset has (e.g. a partition of N < 2).
class DegenerateInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Arguments that are individually valid but inconsistent with each other.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nnhc
