#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

// Network scenarios and point-process sampling for K-tier downlink
// coverage analysis. Distances are meters, intensities points/m^2,
// powers watts, SIR thresholds linear.

namespace hetnetcov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
};

/// Exponentially scaled modified Bessel function exp(-t) * I0(t), t >= 0.
/// Stays finite for arguments far beyond the overflow point of I0.
double bessel_i0_scaled(double t);

/// Isotropic offspring displacement law of a cluster process. Matern:
/// uniform on a disc of given radius. Thomas: circular Gaussian with
/// per-axis standard deviation sigma.
class ClusterKernel {
  public:
    enum class Family { matern, thomas };

    static ClusterKernel matern(double disc_radius);
    static ClusterKernel thomas(double sigma);

    Family family() const { return family_; }
    bool is_matern() const { return family_ == Family::matern; }
    /// Disc radius (Matern) or sigma (Thomas).
    double scale() const { return scale_; }

    /// Radius beyond which offspring are not sampled: the disc radius for
    /// Matern, 5 sigma for Thomas (discarded Gaussian mass < 4e-6).
    double sampling_reach() const;

    /// Radius beyond which the displacement density is treated as zero in
    /// quadrature: exact support for Matern, `tail_multiple` sigmas for
    /// Thomas (mass beyond 8 sigma is < 2e-14).
    double density_cutoff(double tail_multiple = 8.0) const;

    /// Density of the displacement magnitude ||s||.
    double radial_density(double r) const;

    /// Density of ||z + s|| at x given the cluster center magnitude z.
    double radial_conditional_density(double x, double z) const;

    /// Integration breakpoints for integrals of h(x) * conditional density:
    /// fills pts[0..n-1] with segment endpoints (n-1 smooth segments).
    /// Matern with z <= r_d has an interior kink where the uniform core
    /// meets the lens-overlap branch.
    int conditional_breakpoints(double z, double pts[4], double tail_multiple = 8.0) const;

    /// Kernel with the same family and scale multiplied by `factor`
    /// (cluster-size scaling used in the large-cluster limit).
    ClusterKernel scaled(double factor) const;

    bool operator==(const ClusterKernel&) const = default;

  private:
    ClusterKernel(Family f, double s) : family_(f), scale_(s) {}

    Family family_;
    double scale_;
};

struct TierSpec {
    enum class Kind { ppp, pcp };

    int id = 1;  // unique, >= 1; 0 is reserved for the typical-user tier
    Kind kind = Kind::ppp;
    double intensity = 0.0;           // ppp: lambda
    double parent_intensity = 0.0;    // pcp: lambda_p
    double mean_cluster_size = 0.0;   // pcp: mbar
    std::optional<ClusterKernel> kernel;
    double power = 1.0;
    double beta = 2.0;  // linear; > 1 required for coverage analysis

    static TierSpec ppp(int id, double intensity, double power, double beta);
    static TierSpec pcp(int id, double parent_intensity, double mean_cluster_size,
                        ClusterKernel kernel, double power, double beta);

    bool is_pcp() const { return kind == Kind::pcp; }
    /// lambda for PPP, lambda_p * mbar for PCP.
    double effective_intensity() const;
    void validate() const;
};

/// Typical-user configuration. `uniform`: users form an independent PPP,
/// no tier-0. `bs_centered`: the user's hotspot is centered on one BS of a
/// PPP tier (that BS becomes tier 0). `cluster_centered`: the user's
/// hotspot shares its center with one BS cluster of a PCP tier (that
/// cluster becomes tier 0).
struct UserPlacement {
    enum class Case { uniform, bs_centered, cluster_centered };

    Case kind = Case::uniform;
    int anchor_tier = 0;
    std::optional<ClusterKernel> kernel;
    double mean_cluster_size = 0.0;  // tier-0 cluster mean size (cluster_centered)

    static UserPlacement uniform();
    static UserPlacement bs_centered(int anchor_tier, ClusterKernel kernel);
    static UserPlacement cluster_centered(int anchor_tier, ClusterKernel kernel,
                                          double mean_cluster_size);

    bool has_tier0() const { return kind != Case::uniform; }
};

struct NetworkModel {
    std::vector<TierSpec> tiers;
    double alpha = 4.0;  // path-loss exponent, > 2
    UserPlacement users;

    const TierSpec& tier(int id) const;
    bool has_tier(int id) const;
    const TierSpec& anchor() const;  // tier hosting the user hotspot
    /// Tier-0 power/threshold alias the anchor tier.
    double tier0_power() const { return anchor().power; }
    double tier0_beta() const { return anchor().beta; }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// One sampled point with its tier tag and, for clustered tiers, the
/// parent (cluster center) it was displaced from.
struct TaggedPoint {
    Vec2 location;
    int tier = 0;
    std::optional<Vec2> parent;
};

struct PointPattern {
    std::vector<TaggedPoint> points;  // BS tiers (tier >= 1)
    std::vector<Vec2> phi0;           // tier-0 BSs sharing the user's hotspot
    Vec2 typical_user{};              // always the origin
};

/// Deterministic random stream. Distinct streams (different seed or
/// substream index) may be drawn from concurrently; a single stream is
/// not thread-safe.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);
    /// Stream for (seed, index) pairs: trial substreams are independent of
    /// scheduling, so parallel runs reproduce single-threaded results.
    static RandomStream substream(std::uint64_t seed, std::uint64_t index);

    double uniform();               // (0, 1)
    double exponential();           // mean 1
    std::int64_t poisson(double mean);
    double gaussian(double sigma);
    Vec2 point_in_disc(double radius);
    Vec2 kernel_offset(const ClusterKernel& kernel);

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Homogeneous PPP on the disc b(0, window_radius).
std::vector<Vec2> sample_ppp(double intensity, double window_radius, RandomStream& rng);

/// Neyman-Scott process: parents are sampled on an enlarged disc
/// (window_radius + sampling reach) so edge clusters contribute; only
/// offspring inside the analysis window are returned, with their parent.
std::vector<std::pair<Vec2, Vec2>> sample_pcp(double parent_intensity, double mean_cluster_size,
                                              const ClusterKernel& kernel, double window_radius,
                                              RandomStream& rng);

/// Tier-0 realization for the typical user at the origin. uniform: empty.
/// bs_centered: the single hotspot BS at displacement ~ kernel.
/// cluster_centered: center z0 ~ kernel, then a Poisson(mbar0) cluster of
/// BSs around z0. The cluster count is not size-biased: picking the
/// typical user reweights the user cluster, not the independent BS
/// cluster sharing its center.
std::vector<Vec2> sample_typical_cluster(const UserPlacement& users, RandomStream& rng);

/// Full scenario realization (all tiers plus tier 0).
PointPattern sample_network(const NetworkModel& model, double window_radius, RandomStream& rng);

}  // namespace hetnetcov
