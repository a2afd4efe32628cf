#pragma once

#include <atomic>
#include <functional>

#include "hetnetcov/geometry.hpp"
#include "hetnetcov/quadrature.hpp"

// Point-process functionals behind max-SIR coverage: the interference
// factor v, probability generating functionals (PGFLs) of PPP / cluster
// process / single cluster, and sum-product functionals
//   E[ sum_{x in Psi} g(x) prod_{y in Psi \ {x}} v(x, y) ]
// over those processes. Everything is reduced to radial integrals; g and v
// are isotropic, with arguments being distances from the origin.

namespace hetnetcov {

using RadialFunction = std::function<double(double)>;
using PairFunction = std::function<double(double, double)>;

/// v_{i,j}(x, y) = 1 / (1 + beta_i (P_j/P_i) (x/y)^alpha): the Laplace
/// factor a single interferer at distance y contributes when the candidate
/// serving BS of tier i sits at distance x. Within (0, 1]; v(0, y) = 1 and
/// v(x, 0) = 0 (an interferer on top of the user drowns everything).
struct VFactor {
    double beta = 2.0;         // serving-tier SIR threshold (linear)
    double power_ratio = 1.0;  // P_j / P_i
    double alpha = 4.0;

    double operator()(double x, double y) const {
        if (x == 0.0) return 1.0;
        if (y == 0.0) return 0.0;
        const double r = x / y;
        const double r2 = r * r;
        const double ra = alpha == 4.0 ? r2 * r2 : std::pow(r, alpha);
        return 1.0 / (1.0 + beta * power_ratio * ra);
    }
};

/// Canonical v for serving tier i against interfering tier j (tier id 0
/// aliases the anchor tier's power and threshold).
VFactor v_factor(const NetworkModel& model, int serving_tier, int interfering_tier);

/// Quadrature tolerances for the nested PGFL/coverage integrals. Inner:
/// kernel-density y-integrals. Mid: cluster-center z-integrals. Outer:
/// top-level serving-distance integrals (relaxed; the integrand itself is
/// built from tighter inner results).
struct FunctionalSpec {
    QuadratureSpec inner{.rel_tol = 1e-7, .abs_tol = 1e-12, .max_subdivisions = 200};
    QuadratureSpec mid{.rel_tol = 1e-7, .abs_tol = 1e-11, .max_subdivisions = 300};
    QuadratureSpec outer{.rel_tol = 1e-6, .abs_tol = 1e-10, .max_subdivisions = 330};

    /// Degradation latch: set whenever any enclosed integral failed to meet
    /// its tolerance; the value is still the best estimate. Safe to set
    /// from concurrent per-tier evaluations.
    mutable bool degraded = false;
    void note(const IntegrationResult& r) const {
        if (!r.converged) std::atomic_ref<bool>(degraded).store(true, std::memory_order_relaxed);
    }
};

/// Mass of (1 - v(x, .)) under the displacement density around a center at
/// distance z: integral of (1 - v(x, y)) * kernel(y | z) dy. In [0, 1].
double one_minus_v_mass(const ClusterKernel& kernel, const PairFunction& v, double x, double z,
                        const FunctionalSpec& spec = {});

/// PGFL of a PPP tier j at the canonical v_{k,j}(x, .), in closed form:
/// exp(-pi lambda_j (P_j beta_k / P_k)^{2/alpha} x^2 C(alpha)) with
/// C(alpha) = (2 pi / alpha) / sin(2 pi / alpha).
double pgfl_ppp_closed(const NetworkModel& model, int j, int k, double x);
double pgfl_ppp_closed(double intensity, double beta_power_term, double alpha, double x);
double interference_constant(double alpha);  // C(alpha) above

/// PGFL of a PPP at an arbitrary v by quadrature: the independent route
/// the closed form is checked against.
double pgfl_ppp_quadrature(double intensity, const PairFunction& v, double x,
                           const FunctionalSpec& spec = {});

/// PGFL of a single cluster centered at distance z from the origin,
/// evaluated at v(x, .): exp(-mbar * one_minus_v_mass). The cluster count
/// is Poisson, so the reduced-Palm (one point removed) PGFL coincides with
/// the ordinary one; there is deliberately a single code path.
double pgfl_cluster(const ClusterKernel& kernel, double mbar, const PairFunction& v, double x,
                    double z, const FunctionalSpec& spec = {});
inline double pgfl_cluster_reduced_palm(const ClusterKernel& kernel, double mbar,
                                        const PairFunction& v, double x, double z,
                                        const FunctionalSpec& spec = {}) {
    return pgfl_cluster(kernel, mbar, v, x, z, spec);
}

/// PGFL of a stationary cluster-process tier at v(x, .):
/// exp(-2 pi lambda_p int_0^inf (1 - exp(-mbar * one_minus_v_mass(x,z))) z dz).
double pgfl_pcp(const TierSpec& tier, const PairFunction& v, double x,
                const FunctionalSpec& spec = {});
double pgfl_pcp(const NetworkModel& model, int j, int k, double x,
                const FunctionalSpec& spec = {});

/// PGFL of the tier-0 process (the BS or BS cluster sharing the typical
/// user's hotspot) at v_{k,0}(x, .).
double pgfl_phi0(const NetworkModel& model, int k, double x, const FunctionalSpec& spec = {});

/// Sum-product functional over a PPP of the given intensity:
/// lambda 2 pi int g(x) G(v(x,.)) x dx  (reduced Palm = ordinary PGFL).
double sum_product_ppp(double intensity, const RadialFunction& g, const PairFunction& v,
                       const FunctionalSpec& spec = {});

/// Sum-product functional over a stationary cluster process:
/// 2 pi lambda_p mbar int int g(x) G(v(x,.)) G_c(v(x,.)|z) kernel(x|z) dx z dz.
double sum_product_pcp(const TierSpec& tier, const RadialFunction& g, const PairFunction& v,
                       const FunctionalSpec& spec = {});

/// Cluster-count law for sum-product functionals over a single cluster.
/// `size_biased`: the cluster was selected by one of its own points
/// (weighted count n p_n / mbar, i.e. Poisson + 1). `ordinary`: plain
/// Poisson count.
enum class ClusterWeighting { size_biased, ordinary };

/// Sum-product functional over one cluster centered at distance z.
/// size_biased: int g(x) e^{-mbar(1-t(x))} (mbar t(x) + 1) kernel(x|z) dx,
/// ordinary:    mbar int g(x) e^{-mbar(1-t(x))} kernel(x|z) dx,
/// with t(x) the v-mass under the displacement density.
double sum_product_offspring(const ClusterKernel& kernel, double mbar, double z,
                             const RadialFunction& g, const PairFunction& v,
                             const FunctionalSpec& spec = {},
                             ClusterWeighting weighting = ClusterWeighting::size_biased);

namespace detail {
/// int z G_c(v(x,.)|z) kernel(x|z) dz: the center-marked factor of the
/// cluster-process sum-product at fixed point distance x.
double marked_center_integral(const ClusterKernel& kernel, double mbar, const PairFunction& v,
                              double x, const FunctionalSpec& spec);
}  // namespace detail

}  // namespace hetnetcov
