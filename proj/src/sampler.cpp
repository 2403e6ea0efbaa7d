#include "adjsim/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace adjsim {

const std::vector<double>& Dataset::column(int var) const {
    switch (var) {
        case 0: return x;
        case 1: return w;
        case 2: return y;
        default: throw std::out_of_range("variable index must be 0, 1 or 2");
    }
}

std::vector<double>& Dataset::column(int var) {
    return const_cast<std::vector<double>&>(std::as_const(*this).column(var));
}

void validate(const Dataset& d) {
    if (d.x.size() != d.w.size() || d.x.size() != d.y.size())
        throw std::invalid_argument("dataset columns differ in length");
    if (d.n() < 3) throw std::invalid_argument("dataset needs at least 3 observations");
    for (int v = 0; v < 3; ++v)
        for (double value : d.column(v))
            if (!std::isfinite(value)) throw std::invalid_argument("dataset contains a non-finite value");
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(const SeedSpec& seed) {
    const std::uint64_t packed = (static_cast<std::uint64_t>(seed.graph_id) << 32) + seed.rep_index;
    return mix64(mix64(seed.master_seed) + packed);
}

double NormalSource::uniform_pm1() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

double NormalSource::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = uniform_pm1();
        v = uniform_pm1();
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Dataset draw_dataset(const StructuralModel& model, std::size_t n, const SeedSpec& seed) {
    if (n < 3) throw std::invalid_argument("sample size must be at least 3");
    NormalSource normal(substream_seed(seed));
    Dataset d;
    d.x.resize(n);
    d.w.resize(n);
    d.y.resize(n);
    for (int v : model.topo_order) {
        auto& col = d.column(v);
        for (std::size_t i = 0; i < n; ++i) {
            double value = 0.0;
            for (int p = 0; p < 3; ++p) {
                if (model.coeff[v][p] != 0.0) value += model.coeff[v][p] * d.column(p)[i];
            }
            col[i] = value + model.error_sd[v] * normal();
        }
    }
    return d;
}

std::string dataset_csv(const Dataset& d) {
    std::string out = "x,w,y\n";
    for (std::size_t i = 0; i < d.n(); ++i) {
        out += format_double(d.x[i]);
        out += ',';
        out += format_double(d.w[i]);
        out += ',';
        out += format_double(d.y[i]);
        out += '\n';
    }
    return out;
}

}  // namespace adjsim
