#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "adjsim/sem_oracle.hpp"

namespace adjsim {

struct Dataset {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> y;

    std::size_t n() const { return x.size(); }
    const std::vector<double>& column(int var) const;
    std::vector<double>& column(int var);
};

/// Throws std::invalid_argument unless all columns have the same length >= 3
/// and every value is finite.
void validate(const Dataset& d);

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint32_t graph_id = 0;
    std::uint64_t rep_index = 0;
};

/// SplitMix64 output function (Steele, Lea & Flood 2014). A bijection on 64 bits.
std::uint64_t mix64(std::uint64_t z);

/// mix64(mix64(master_seed) + (graph_id << 32 | rep_index)). Injective in
/// (graph_id, rep_index) for a fixed master seed when graph_id < 2^16 and
/// rep_index < 2^32.
std::uint64_t substream_seed(const SeedSpec& seed);

/// Standard normal deviates: Marsaglia's polar method over 53-bit uniforms
/// from std::mt19937_64. Output depends only on the seed.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double operator()();

private:
    double uniform_pm1();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Draws n observations. Variables are generated in model.topo_order, each as a
/// full column of n values: parents' contribution plus error_sd * z.
Dataset draw_dataset(const StructuralModel& model, std::size_t n, const SeedSpec& seed);

/// CSV with header `x,w,y`, one row per observation, 17 significant digits.
std::string dataset_csv(const Dataset& d);

}  // namespace adjsim
