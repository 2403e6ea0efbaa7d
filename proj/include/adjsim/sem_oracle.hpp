#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adjsim/graph_catalog.hpp"

namespace adjsim {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Linear Gaussian SEM over (X, W, Y). coeff[child][parent] holds the signed
/// structural coefficient; topo_order lists parents before children.
struct StructuralModel {
    Matrix3 coeff{};
    std::array<double, 3> error_sd{1.0, 1.0, 1.0};
    std::array<int, 3> topo_order{0, 1, 2};
};

struct PopulationCovariance {
    Matrix3 sigma{};

    double xx() const { return sigma[0][0]; }
    double xw() const { return sigma[0][1]; }
    double xy() const { return sigma[0][2]; }
    double ww() const { return sigma[1][1]; }
    double wy() const { return sigma[1][2]; }
    double yy() const { return sigma[2][2]; }
};

enum class TechniqueId { SimpleRegression, MultipleRegression, ResidualX, ResidualY, ResidualXY, FittedX };

inline constexpr int kNumTechniques = 6;
inline constexpr std::array<TechniqueId, kNumTechniques> kAllTechniques{
    TechniqueId::SimpleRegression, TechniqueId::MultipleRegression, TechniqueId::ResidualX,
    TechniqueId::ResidualY,        TechniqueId::ResidualXY,         TechniqueId::FittedX};

/// Short machine name used in files, e.g. "residual_y".
std::string_view to_string(TechniqueId t);
/// Human label, e.g. "Residual Y".
std::string_view display_name(TechniqueId t);
TechniqueId parse_technique(std::string_view s);

/// Error SD for a node with `num_parents` causes, chosen so that a node whose
/// causes are uncorrelated unit-variance variables has unit variance.
double error_sd_for(int num_parents);

StructuralModel build_model(const CausalGraph& g);

/// Sigma = (I - B)^-1 D (I - B)^-T with D = diag(error_sd^2).
PopulationCovariance population_covariance(const StructuralModel& m);

/// Large-sample limit of each technique's slope; nullopt when undefined
/// (FittedX with sigma_xw = 0, W-conditioning techniques with a singular X/W block).
std::optional<double> population_estimand(const PopulationCovariance& cov, TechniqueId t);

struct EstimandRow {
    int graph_id;
    std::string notation;
    GraphClass cls;
    TechniqueId technique;
    std::optional<double> estimand;
    double true_effect;
    std::optional<double> bias;
};

std::vector<EstimandRow> estimand_table(const std::vector<CatalogEntry>& entries);

/// CSV: graph_id,notation,w_class,xy_relation,technique,estimand,true_effect,bias
std::string estimand_table_csv(const std::vector<EstimandRow>& rows);
std::string estimand_table_json(const std::vector<EstimandRow>& rows, int indent = 2);

/// 17 significant digits, enough to parse back to the same double.
std::string format_double(double v);

}  // namespace adjsim
