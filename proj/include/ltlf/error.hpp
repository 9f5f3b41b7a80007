#pragma once

#include <stdexcept>
#include <string>

namespace ltlf {

/// Base of every error the toolkit throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vector/matrix dimensions disagree with a declared shape.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inputs are individually valid but contradict each other.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A non-finite value appeared during a numeric computation.
class NumericError : public Error {
public:
    NumericError(const std::string& block, const std::string& what)
        : Error(what + " (block: " + block + ")"), block_(block) {}

    const std::string& block() const noexcept { return block_; }

private:
    std::string block_;
};

/// Training diverged.
class TrainingError : public Error {
public:
    TrainingError(int epoch, const std::string& what)
        : Error(what + " (epoch " + std::to_string(epoch) + ")"), epoch_(epoch) {}

    int epoch() const noexcept { return epoch_; }

private:
    int epoch_;
};

/// A statistical fit could not produce finite coefficients.
class FitError : public Error {
public:
    using Error::Error;
};

/// File system or parse failure; the message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Every combination of a hyperparameter search failed.
class SearchError : public Error {
public:
    using Error::Error;
};

}  // namespace ltlf
