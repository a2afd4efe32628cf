#pragma once

#include <cstdint>
#include <map>

#include "hetnetcov/functionals.hpp"
#include "hetnetcov/geometry.hpp"

// Downlink coverage probability under max-SIR association with per-tier
// thresholds beta > 1: the probability that some BS clears its tier's
// threshold. Total coverage decomposes into per-tier terms (at most one BS
// can qualify when all thresholds exceed one), each a sum-product
// functional over that tier.

namespace hetnetcov {

struct CoverageEstimate {
    enum class Method { analytic, monte_carlo };

    double total = 0.0;
    std::map<int, double> per_tier;  // includes tier 0
    Method method = Method::analytic;

    // Monte Carlo only
    double half_width = 0.0;
    double confidence = 0.0;
    std::int64_t trials = 0;
    double window_radius = 0.0;
    std::uint64_t seed = 0;
    int max_simultaneous_covers = 0;  // filled when the uniqueness check runs

    /// Analytic: any nested quadrature missed its tolerance (value is the
    /// best estimate). The run is not aborted.
    bool accuracy_degraded = false;
};

/// Joint probability that the serving BS belongs to PPP tier k and the
/// user is covered.
double per_tier_coverage_ppp(const NetworkModel& model, int k, const FunctionalSpec& spec = {});

/// Same for a cluster-process tier k.
double per_tier_coverage_pcp(const NetworkModel& model, int k, const FunctionalSpec& spec = {});

/// Coverage from the tier-0 BS(s) sharing the typical user's hotspot.
/// uniform: 0. bs_centered: the single hotspot BS. cluster_centered: the
/// co-centered BS cluster; its count is plain Poisson (selecting the
/// typical user biases the user cluster, not this independent BS cluster),
/// so the ordinary-weighted offspring sum-product applies.
double tier0_coverage(const NetworkModel& model, const FunctionalSpec& spec = {});

/// Sum of all per-tier terms. Throws std::invalid_argument (naming the
/// tier) if any threshold is <= 1, where the per-tier decomposition stops
/// being exact. Per-tier terms are evaluated concurrently.
CoverageEstimate total_coverage(const NetworkModel& model, const FunctionalSpec& spec = {});

/// Closed-form coverage of the infinite-cluster-size limit, where every
/// cluster tier behaves as an independent PPP of intensity lambda_p * mbar
/// and the user coupling vanishes:
///   (alpha sin(2 pi/alpha) / (2 pi)) * sum_k lam_k P_k^{2/a} beta_k^{-2/a}
///                                    / sum_j lam_j P_j^{2/a}.
double baseline_closed_form(const NetworkModel& model);

/// Model with every cluster kernel (tiers and users) scaled by xi, parent
/// intensities and mean cluster sizes unchanged.
NetworkModel with_cluster_scale(const NetworkModel& model, double xi);

}  // namespace hetnetcov
