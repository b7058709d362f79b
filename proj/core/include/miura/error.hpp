#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace miura {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Periodic traces that do not line up, or an edge census that is not a manifold.
class TopologyError : public Error {
public:
    using Error::Error;
};

class DegenerateCell : public Error {
public:
    DegenerateCell(int cell, const std::string& what)
        : Error(what), cell_(cell) {}
    [[nodiscard]] int cell() const noexcept { return cell_; }

private:
    int cell_;
};

/// Raised by the unclamped coefficient functions outside their domain.
class EllipticityViolation : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    AssemblyError(int cell, const std::string& what)
        : Error(what), cell_(cell) {}
    [[nodiscard]] int cell() const noexcept { return cell_; }

private:
    int cell_;
};

class LinearSolverError : public Error {
public:
    LinearSolverError(double attained_residual, const std::string& what)
        : Error(what), residual_(attained_residual) {}
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NonConvergence : public Error {
public:
    NonConvergence(std::vector<double> history, const std::string& what)
        : Error(what), history_(std::move(history)) {}
    [[nodiscard]] const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

} // namespace miura
