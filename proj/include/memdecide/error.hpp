#pragma once

#include <stdexcept>
#include <string>

namespace memdecide {

/// Parameter outside its documented domain (bad curve, bad size, bad rate).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was asked to move a synapse backwards in time.
class TimeOrderError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input data cannot identify the requested model.
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV header mismatch, unparsable field, bad deck).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace memdecide
