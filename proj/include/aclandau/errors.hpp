#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aclandau {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside its documented range (non-positive mass, bad grid size, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// mu * rho0 == 0: there is no cyclotron frequency; use the free configuration.
class DegenerateCoupling : public Error {
public:
    using Error::Error;
};

class UnsupportedKind : public Error {
public:
    using Error::Error;
};

class NotHarmonic : public Error {
public:
    using Error::Error;
};

class BoundaryContamination : public Error {
public:
    using Error::Error;
};

class NeedEigenvectors : public Error {
public:
    using Error::Error;
};

class ZeroField : public Error {
public:
    using Error::Error;
};

class DegenerateArea : public Error {
public:
    using Error::Error;
};

class ClusteringAmbiguous : public Error {
public:
    ClusteringAmbiguous(const std::string& what, std::vector<double> energies)
        : Error(what), energies_(std::move(energies)) {}

    /// Bulk energies that were being clustered when the ambiguity was found.
    const std::vector<double>& energies() const noexcept { return energies_; }

private:
    std::vector<double> energies_;
};

/// The iterative eigensolver hit its iteration cap. Carries the best
/// eigenvalue estimates and residual norms reached so far.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, std::vector<double> values,
                       std::vector<double> residuals, int iterations)
        : Error(what), values_(std::move(values)), residuals_(std::move(residuals)),
          iterations_(iterations) {}

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& residuals() const noexcept { return residuals_; }
    int iterations() const noexcept { return iterations_; }

private:
    std::vector<double> values_;
    std::vector<double> residuals_;
    int iterations_;
};

}  // namespace aclandau
