#pragma once

#include <variant>

#include "hetnetcov/coverage.hpp"
#include "hetnetcov/functionals.hpp"
#include "hetnetcov/geometry.hpp"

// Ground-truth simulator: drops full network realizations with unit-mean
// exponential fading per BS, evaluates max-SIR coverage, and estimates the
// auxiliary quantities (void probabilities, sum-product functionals) that
// the analytic path is validated against.

namespace hetnetcov {

struct SimulationConfig {
    std::int64_t trials = 100000;
    /// 0 selects the default window (see default_window_radius).
    double window_radius = 0.0;
    std::uint64_t rng_seed = 1;
    double confidence_level = 0.99;
    /// 0 resolves HETNETCOV_THREADS, then hardware concurrency. Results do
    /// not depend on the thread count: trial t always consumes substream
    /// (rng_seed, t) and the reducers are integer counters.
    int threads = 0;
    /// Per-trial assertion data: record the largest number of BSs clearing
    /// their threshold simultaneously (must be <= 1 when every beta > 1).
    bool check_unique_cover = false;
};

/// max(20 / sqrt(smallest positive tier intensity), 10 x largest kernel
/// sampling reach). Far-field interference beyond this radius is
/// negligible against the Monte Carlo noise for alpha > 2.
double default_window_radius(const NetworkModel& model);

/// Empirical coverage with a per-covering-tier split and a confidence
/// half-width at the configured level (Wilson interval near 0 or 1).
/// Identical seed and config give bit-identical results at any thread
/// count. Thresholds <= 1 are simulated faithfully (a trial counts as
/// covered if any BS qualifies; the max-SIR BS takes the credit).
CoverageEstimate simulate_coverage(const NetworkModel& model, const SimulationConfig& config);

/// Self-check that the window is large enough: doubling the radius moves
/// the estimate by less than the confidence half-width.
bool window_sufficient(const NetworkModel& model, const SimulationConfig& config);

struct ScalarEstimate {
    double value = 0.0;
    double half_width = 0.0;
    std::int64_t samples = 0;
    double confidence = 0.0;
};

struct PppProcess {
    double intensity = 0.0;
};
struct PcpProcess {
    double parent_intensity = 0.0;
    double mean_cluster_size = 0.0;
    ClusterKernel kernel;
};
/// A single cluster whose center sits at the given distance from the
/// origin; `weighting` selects the plain Poisson count or the size-biased
/// count of a cluster chosen through one of its own points.
struct OffspringProcess {
    ClusterKernel kernel;
    double mean_cluster_size = 0.0;
    double center_distance = 0.0;
    ClusterWeighting weighting = ClusterWeighting::ordinary;
};
using ProcessSpec = std::variant<PppProcess, PcpProcess, OffspringProcess>;

/// Fraction of realizations with no point in the disc b(0, region_radius).
ScalarEstimate estimate_void_probability(const ProcessSpec& process, double region_radius,
                                         const SimulationConfig& config);

/// Trial mean of sum_{x} g(|x|) prod_{y != x} v(|x|, |y|) over realizations
/// of the process (quadratic in the realization size; meant for small
/// windows). PPP/PCP realizations use config.window_radius (> 0 required).
ScalarEstimate estimate_sum_product(const ProcessSpec& process, const RadialFunction& g,
                                    const PairFunction& v, const SimulationConfig& config);

}  // namespace hetnetcov
