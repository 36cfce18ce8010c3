#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heatwave {

// Series truncation failed to certify the requested tolerance within the
// term budget. Carries the bound that was achieved so callers can decide
// whether to retry with the other representation.
class truncation_error : public std::runtime_error {
public:
    truncation_error(const std::string& what, double requested, double achieved,
                     std::size_t terms)
        : std::runtime_error(what + " (requested " + std::to_string(requested) +
                             ", certified " + std::to_string(achieved) + " after " +
                             std::to_string(terms) + " terms)"),
          requested_tol(requested), achieved_bound(achieved), terms_used(terms) {}

    double requested_tol;
    double achieved_bound;
    std::size_t terms_used;
};

// Adaptive quadrature could not reach the requested absolute tolerance.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double requested, double achieved)
        : std::runtime_error(what + " (requested " + std::to_string(requested) +
                             ", achieved " + std::to_string(achieved) + ")"),
          requested_tol(requested), achieved_tol(achieved) {}

    double requested_tol;
    double achieved_tol;
};

// A time-stepping run produced non-finite or runaway values.
class instability_error : public std::runtime_error {
public:
    instability_error(const std::string& what, std::size_t step)
        : std::runtime_error(what + " at step " + std::to_string(step)), step(step) {}

    std::size_t step;
};

// Invalid run configuration (bad key, missing key, precondition violation
// detected before any compute starts).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace heatwave
