#include "adjsim/sem_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "adjsim/csv.hpp"
#include "json.hpp"

namespace adjsim {

namespace {

constexpr double kSingularTol = 1e-12;

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
    Matrix3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Matrix3 transpose(const Matrix3& a) {
    Matrix3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
    return r;
}

// Closed-form inverse via the adjugate.
Matrix3 inverse(const Matrix3& m) {
    Matrix3 adj{};
    adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    if (det == 0.0) throw std::domain_error("singular matrix");
    for (auto& row : adj)
        for (double& v : row) v /= det;
    return adj;
}

std::array<int, 3> topological_order(const Matrix3& coeff) {
    std::array<int, 3> order{};
    std::array<bool, 3> placed{};
    for (int slot = 0; slot < 3; ++slot) {
        int pick = -1;
        for (int v = 0; v < 3 && pick < 0; ++v) {
            if (placed[v]) continue;
            bool ready = true;
            for (int p = 0; p < 3; ++p) {
                if (coeff[v][p] != 0.0 && !placed[p]) ready = false;
            }
            if (ready) pick = v;
        }
        if (pick < 0) throw std::domain_error("structural model is cyclic");
        placed[pick] = true;
        order[slot] = pick;
    }
    return order;
}

}  // namespace

std::string_view to_string(TechniqueId t) {
    switch (t) {
        case TechniqueId::SimpleRegression: return "simple";
        case TechniqueId::MultipleRegression: return "multiple";
        case TechniqueId::ResidualX: return "residual_x";
        case TechniqueId::ResidualY: return "residual_y";
        case TechniqueId::ResidualXY: return "residual_xy";
        case TechniqueId::FittedX: return "fitted_x";
    }
    return "?";
}

std::string_view display_name(TechniqueId t) {
    switch (t) {
        case TechniqueId::SimpleRegression: return "Simple Regression";
        case TechniqueId::MultipleRegression: return "Multiple Regression";
        case TechniqueId::ResidualX: return "Residual X";
        case TechniqueId::ResidualY: return "Residual Y";
        case TechniqueId::ResidualXY: return "Residual X and Y";
        case TechniqueId::FittedX: return "Fitted X";
    }
    return "?";
}

TechniqueId parse_technique(std::string_view s) {
    for (TechniqueId t : kAllTechniques) {
        if (to_string(t) == s) return t;
    }
    throw std::invalid_argument("unknown technique '" + std::string(s) + "'");
}

double error_sd_for(int num_parents) {
    switch (num_parents) {
        case 0: return 1.0;
        case 1: return std::sqrt(2.0) / std::sqrt(3.0);
        case 2: return 1.0 / std::sqrt(3.0);
        default: throw std::invalid_argument("a node has at most two parents");
    }
}

StructuralModel build_model(const CausalGraph& g) {
    validate(g);
    StructuralModel m;
    auto put = [&](const EdgeSpec& e, Var first, Var second) {
        const int f = static_cast<int>(first), s = static_cast<int>(second);
        if (e.orientation == Orientation::toward_second) m.coeff[s][f] = edge_coefficient(e);
        if (e.orientation == Orientation::toward_first) m.coeff[f][s] = edge_coefficient(e);
    };
    put(g.wx, Var::W, Var::X);
    put(g.wy, Var::W, Var::Y);
    put(g.xy, Var::X, Var::Y);
    for (int v = 0; v < 3; ++v) {
        int parents = 0;
        for (int p = 0; p < 3; ++p) parents += m.coeff[v][p] != 0.0 ? 1 : 0;
        m.error_sd[v] = error_sd_for(parents);
    }
    m.topo_order = topological_order(m.coeff);
    return m;
}

PopulationCovariance population_covariance(const StructuralModel& m) {
    Matrix3 i_minus_b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) i_minus_b[i][j] = (i == j ? 1.0 : 0.0) - m.coeff[i][j];
    const Matrix3 a = inverse(i_minus_b);
    Matrix3 d{};
    for (int i = 0; i < 3; ++i) d[i][i] = m.error_sd[i] * m.error_sd[i];
    PopulationCovariance cov{multiply(multiply(a, d), transpose(a))};
    // Symmetrize away rounding asymmetry.
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const double v = 0.5 * (cov.sigma[i][j] + cov.sigma[j][i]);
            cov.sigma[i][j] = cov.sigma[j][i] = v;
        }
    return cov;
}

std::optional<double> population_estimand(const PopulationCovariance& c, TechniqueId t) {
    switch (t) {
        case TechniqueId::SimpleRegression:
            if (c.xx() <= 0.0) return std::nullopt;
            return c.xy() / c.xx();
        case TechniqueId::MultipleRegression:
        case TechniqueId::ResidualX:
        case TechniqueId::ResidualXY: {
            const double scale = c.xx() * c.ww();
            const double det = scale - c.xw() * c.xw();
            if (scale <= 0.0 || det <= kSingularTol * scale) return std::nullopt;
            return (c.xy() * c.ww() - c.wy() * c.xw()) / det;
        }
        case TechniqueId::ResidualY:
            if (c.xx() <= 0.0 || c.ww() <= 0.0) return std::nullopt;
            return (c.xy() - c.wy() * c.xw() / c.ww()) / c.xx();
        case TechniqueId::FittedX:
            if (std::abs(c.xw()) <= kSingularTol * std::sqrt(c.xx() * c.ww())) return std::nullopt;
            return c.wy() / c.xw();
    }
    return std::nullopt;
}

std::vector<EstimandRow> estimand_table(const std::vector<CatalogEntry>& entries) {
    std::vector<EstimandRow> rows;
    rows.reserve(entries.size() * kNumTechniques);
    for (const auto& e : entries) {
        const PopulationCovariance cov = population_covariance(build_model(e.graph));
        const double truth = true_effect(e.graph);
        for (TechniqueId t : kAllTechniques) {
            EstimandRow r{e.id, e.notation, e.cls, t, population_estimand(cov, t), truth, std::nullopt};
            if (r.estimand) r.bias = *r.estimand - truth;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string estimand_table_csv(const std::vector<EstimandRow>& rows) {
    std::ostringstream out;
    out << "graph_id,notation,w_class,xy_relation,technique,estimand,true_effect,bias\n";
    for (const auto& r : rows) {
        out << r.graph_id << ',' << csv::field(r.notation) << ',' << to_string(r.cls.w_class) << ','
            << to_string(r.cls.xy_relation) << ',' << to_string(r.technique) << ','
            << csv::number(r.estimand) << ',' << format_double(r.true_effect) << ',' << csv::number(r.bias)
            << '\n';
    }
    return out.str();
}

std::string estimand_table_json(const std::vector<EstimandRow>& rows, int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"graph_id", r.graph_id},
                       {"notation", r.notation},
                       {"w_class", to_string(r.cls.w_class)},
                       {"xy_relation", to_string(r.cls.xy_relation)},
                       {"technique", to_string(r.technique)},
                       {"estimand", r.estimand ? nlohmann::json(*r.estimand) : nlohmann::json(nullptr)},
                       {"true_effect", r.true_effect},
                       {"bias", r.bias ? nlohmann::json(*r.bias) : nlohmann::json(nullptr)}});
    }
    return arr.dump(indent);
}

}  // namespace adjsim
