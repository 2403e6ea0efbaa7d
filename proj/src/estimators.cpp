#include "adjsim/estimators.hpp"

#include <cmath>
#include <numeric>

namespace adjsim {

namespace {

// Centered spread below this fraction of the raw sum of squares counts as constant.
constexpr double kConstantRelTol = 1e-24;
constexpr double kCollinearRelTol = 1e-12;

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void check_lengths(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("regression vectors differ in length");
    if (a.size() < 3) throw std::invalid_argument("regression needs at least 3 observations");
}

template <typename F>
std::optional<double> attempt(F&& f) {
    try {
        return f();
    } catch (const DegeneratePredictorError&) {
        return std::nullopt;
    } catch (const CollinearityError&) {
        return std::nullopt;
    }
}

}  // namespace

SimpleFit ols_simple(std::span<const double> response, std::span<const double> predictor) {
    check_lengths(response, predictor);
    const double mp = mean(predictor);
    const double mr = mean(response);
    double spp = 0.0, spr = 0.0, raw = 0.0;
    for (std::size_t i = 0; i < predictor.size(); ++i) {
        const double dp = predictor[i] - mp;
        spp += dp * dp;
        spr += dp * (response[i] - mr);
        raw += predictor[i] * predictor[i];
    }
    if (spp <= kConstantRelTol * raw) throw DegeneratePredictorError("predictor has zero centered sum of squares");

    SimpleFit fit;
    fit.slope = spr / spp;
    fit.intercept = mr - fit.slope * mp;
    fit.fitted.resize(predictor.size());
    fit.residuals.resize(predictor.size());
    for (std::size_t i = 0; i < predictor.size(); ++i) {
        fit.fitted[i] = fit.intercept + fit.slope * predictor[i];
        fit.residuals[i] = response[i] - fit.fitted[i];
    }
    return fit;
}

TwoPredictorFit ols_two(std::span<const double> response, std::span<const double> p1,
                        std::span<const double> p2) {
    check_lengths(response, p1);
    check_lengths(response, p2);
    const double m1 = mean(p1), m2 = mean(p2), mr = mean(response);
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, s1r = 0.0, s2r = 0.0;
    for (std::size_t i = 0; i < response.size(); ++i) {
        const double d1 = p1[i] - m1, d2 = p2[i] - m2, dr = response[i] - mr;
        s11 += d1 * d1;
        s12 += d1 * d2;
        s22 += d2 * d2;
        s1r += d1 * dr;
        s2r += d2 * dr;
    }
    const double scale = s11 * s22;
    const double det = scale - s12 * s12;
    if (!(scale > 0.0) || det < kCollinearRelTol * scale)
        throw CollinearityError("predictors are collinear after centering");

    TwoPredictorFit fit;
    fit.slope1 = (s22 * s1r - s12 * s2r) / det;
    fit.slope2 = (s11 * s2r - s12 * s1r) / det;
    fit.intercept = mr - fit.slope1 * m1 - fit.slope2 * m2;
    return fit;
}

EstimateSet estimate_all(const Dataset& data) {
    validate(data);
    const std::span<const double> x = data.x, w = data.w, y = data.y;
    EstimateSet est;

    est[TechniqueId::SimpleRegression] = attempt([&] { return ols_simple(y, x).slope; });
    est[TechniqueId::MultipleRegression] = attempt([&] { return ols_two(y, x, w).slope1; });
    const bool collinear = !est[TechniqueId::MultipleRegression].has_value();

    std::optional<SimpleFit> x_on_w, y_on_w;
    try {
        x_on_w = ols_simple(x, w);
        y_on_w = ols_simple(y, w);
    } catch (const DegeneratePredictorError&) {
        // Constant W: every W-based technique stays undefined.
    }

    if (x_on_w && y_on_w) {
        if (!collinear) {
            est[TechniqueId::ResidualX] = attempt([&] { return ols_simple(y, x_on_w->residuals).slope; });
            est[TechniqueId::ResidualXY] =
                attempt([&] { return ols_simple(y_on_w->residuals, x_on_w->residuals).slope; });
        }
        est[TechniqueId::ResidualY] = attempt([&] { return ols_simple(y_on_w->residuals, x).slope; });
        est[TechniqueId::FittedX] = attempt([&] { return ols_simple(y, x_on_w->fitted).slope; });
    }
    return est;
}

}  // namespace adjsim
