#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "adjsim/sampler.hpp"
#include "adjsim/sem_oracle.hpp"

namespace adjsim {

class DegeneratePredictorError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class CollinearityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct SimpleFit {
    double slope;
    double intercept;
    std::vector<double> residuals;
    std::vector<double> fitted;
};

struct TwoPredictorFit {
    double slope1;
    double slope2;
    double intercept;
};

/// Least-squares line of `response` on `predictor` with intercept.
/// Throws DegeneratePredictorError when the predictor has no spread.
SimpleFit ols_simple(std::span<const double> response, std::span<const double> predictor);

/// Least squares on two predictors with intercept, solved from the centered
/// 2x2 normal equations. Throws CollinearityError when
/// det < 1e-12 * S11 * S22.
TwoPredictorFit ols_two(std::span<const double> response, std::span<const double> p1,
                        std::span<const double> p2);

/// Slope estimates for all six techniques; a technique that is degenerate on
/// this dataset holds nullopt without affecting the others.
class EstimateSet {
public:
    const std::optional<double>& operator[](TechniqueId t) const { return values_[static_cast<int>(t)]; }
    std::optional<double>& operator[](TechniqueId t) { return values_[static_cast<int>(t)]; }

    std::size_t size() const { return values_.size(); }

private:
    std::array<std::optional<double>, kNumTechniques> values_{};
};

EstimateSet estimate_all(const Dataset& data);

}  // namespace adjsim
