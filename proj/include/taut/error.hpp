#pragma once

#include <stdexcept>
#include <string>

namespace taut {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: malformed data, violated preconditions. The CLI maps
/// these to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// A verification that should have succeeded did not. The CLI maps these to
/// exit code 1.
class CheckFailure : public Error {
public:
    using Error::Error;
};

class IllFormedMap : public InputError {
public:
    using InputError::InputError;
};

class DegreeOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class NotAComplex : public InputError {
public:
    using InputError::InputError;
};

class NotFree : public InputError {
public:
    using InputError::InputError;
};

class MalformedTower : public InputError {
public:
    using InputError::InputError;
};

class MalformedTelescope : public InputError {
public:
    using InputError::InputError;
};

class NotComparable : public InputError {
public:
    using InputError::InputError;
};

class NotACover : public InputError {
public:
    using InputError::InputError;
};

class NotARefinement : public InputError {
public:
    using InputError::InputError;
};

class BlockMismatch : public InputError {
public:
    using InputError::InputError;
};

class LimNotExact : public InputError {
public:
    using InputError::InputError;
};

class MalformedModel : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t position)
        : InputError(message + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A free-group telescope map that is not a sum of distinct basis elements
/// over disjoint index sets.
class ConditionViolated : public InputError {
public:
    ConditionViolated(std::size_t stage, std::size_t basis_index, const std::string& witness)
        : InputError("basis condition violated at stage " + std::to_string(stage) + ", basis element " +
                       std::to_string(basis_index) + ": " + witness),
          stage_(stage), basis_index_(basis_index), witness_(witness)
    {
    }

    std::size_t stage() const noexcept { return stage_; }
    std::size_t basis_index() const noexcept { return basis_index_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::size_t stage_;
    std::size_t basis_index_;
    std::string witness_;
};

class CertificateFailure : public CheckFailure {
public:
    using CheckFailure::CheckFailure;
};

class InconsistentData : public CheckFailure {
public:
    using CheckFailure::CheckFailure;
};

} // namespace taut
