#pragma once

#include <stdexcept>
#include <string>

namespace srnet {

// Bad input value; carries the name of the offending field.
class InvalidParameter : public std::invalid_argument {
public:
    InvalidParameter(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Quadrature / root-finding did not converge.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Discriminant of a two-branch formula went negative: the excitation
// branches merge and the closed form no longer applies.
class BranchMergeError : public NumericError {
public:
    explicit BranchMergeError(const std::string& what) : NumericError(what) {}
};

}  // namespace srnet
