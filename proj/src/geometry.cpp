#include "hetnetcov/geometry.hpp"

#include <algorithm>
#include <boost/math/special_functions/bessel.hpp>

namespace hetnetcov {

double bessel_i0_scaled(double t) {
    if (t < 0.0) throw std::invalid_argument("bessel_i0_scaled: negative argument");
    if (t < 100.0) return std::exp(-t) * boost::math::cyl_bessel_i(0, t);
    // Asymptotic series; next omitted term is ~1e-12 relative at t = 100.
    const double r = 1.0 / t;
    const double series = 1.0 + r * (0.125 + r * (0.0703125 + r * (0.0732421875 +
                          r * (0.112152099609375 + r * (0.227108001708984375 +
                          r * 0.57250142097473145)))));
    return series / std::sqrt(2.0 * M_PI * t);
}

// ---------------------------------------------------------------------------
// ClusterKernel

ClusterKernel ClusterKernel::matern(double disc_radius) {
    if (!(disc_radius > 0.0) || !std::isfinite(disc_radius))
        throw std::invalid_argument("Matern kernel: disc radius must be positive");
    return {Family::matern, disc_radius};
}

ClusterKernel ClusterKernel::thomas(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("Thomas kernel: sigma must be positive");
    return {Family::thomas, sigma};
}

double ClusterKernel::sampling_reach() const {
    return is_matern() ? scale_ : 5.0 * scale_;
}

double ClusterKernel::density_cutoff(double tail_multiple) const {
    return is_matern() ? scale_ : tail_multiple * scale_;
}

double ClusterKernel::radial_density(double r) const {
    if (r <= 0.0) return 0.0;
    if (is_matern()) return r <= scale_ ? 2.0 * r / (scale_ * scale_) : 0.0;
    const double s2 = scale_ * scale_;
    const double e = r * r / (2.0 * s2);
    return e > 745.0 ? 0.0 : (r / s2) * std::exp(-e);
}

double ClusterKernel::radial_conditional_density(double x, double z) const {
    if (x < 0.0 || z < 0.0)
        throw std::invalid_argument("radial_conditional_density: negative argument");
    if (x == 0.0) return 0.0;
    if (is_matern()) {
        const double r = scale_;
        if (x >= z + r || x <= z - r) return 0.0;
        if (x < r - z) return 2.0 * x / (r * r);
        // Lens overlap branch; the argument is clamped against
        // floating-point noise at the support boundaries.
        const double arg = std::clamp((x * x + z * z - r * r) / (2.0 * x * z), -1.0, 1.0);
        return 2.0 * x / (M_PI * r * r) * std::acos(arg);
    }
    const double s2 = scale_ * scale_;
    const double e = (x - z) * (x - z) / (2.0 * s2);
    if (e > 745.0) return 0.0;
    // Rice density in the overflow-safe form exp(-(x-z)^2/2s^2) * I0e(xz/s^2).
    return (x / s2) * std::exp(-e) * bessel_i0_scaled(x * z / s2);
}

int ClusterKernel::conditional_breakpoints(double z, double pts[4], double tail_multiple) const {
    if (is_matern()) {
        const double r = scale_;
        if (z <= r) {
            pts[0] = 0.0;
            pts[1] = r - z;
            pts[2] = r + z;
            return (z == 0.0 || pts[1] == 0.0) ? (pts[0] = 0.0, pts[1] = r + z, 2) : 3;
        }
        pts[0] = z - r;
        pts[1] = z + r;
        return 2;
    }
    const double cut = tail_multiple * scale_;
    pts[0] = std::max(0.0, z - cut);
    pts[1] = z + cut;
    return 2;
}

ClusterKernel ClusterKernel::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("ClusterKernel::scaled: factor must be positive");
    return {family_, scale_ * factor};
}

// ---------------------------------------------------------------------------
// Model types

TierSpec TierSpec::ppp(int id, double intensity, double power, double beta) {
    TierSpec t;
    t.id = id;
    t.kind = Kind::ppp;
    t.intensity = intensity;
    t.power = power;
    t.beta = beta;
    t.validate();
    return t;
}

TierSpec TierSpec::pcp(int id, double parent_intensity, double mean_cluster_size,
                       ClusterKernel kernel, double power, double beta) {
    TierSpec t;
    t.id = id;
    t.kind = Kind::pcp;
    t.parent_intensity = parent_intensity;
    t.mean_cluster_size = mean_cluster_size;
    t.kernel = kernel;
    t.power = power;
    t.beta = beta;
    t.validate();
    return t;
}

double TierSpec::effective_intensity() const {
    return is_pcp() ? parent_intensity * mean_cluster_size : intensity;
}

void TierSpec::validate() const {
    if (id < 1) throw std::invalid_argument("tier " + std::to_string(id) + ": id must be >= 1");
    const std::string where = "tier " + std::to_string(id) + ": ";
    if (!(power > 0.0)) throw std::invalid_argument(where + "power must be positive");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::invalid_argument(where + "beta must be positive");
    if (is_pcp()) {
        if (parent_intensity < 0.0 || mean_cluster_size < 0.0)
            throw std::invalid_argument(where + "negative cluster-process parameters");
        if (!kernel) throw std::invalid_argument(where + "cluster tier needs a kernel");
    } else {
        if (intensity < 0.0) throw std::invalid_argument(where + "negative intensity");
    }
}

UserPlacement UserPlacement::uniform() { return {}; }

UserPlacement UserPlacement::bs_centered(int anchor_tier, ClusterKernel kernel) {
    UserPlacement u;
    u.kind = Case::bs_centered;
    u.anchor_tier = anchor_tier;
    u.kernel = kernel;
    return u;
}

UserPlacement UserPlacement::cluster_centered(int anchor_tier, ClusterKernel kernel,
                                              double mean_cluster_size) {
    UserPlacement u;
    u.kind = Case::cluster_centered;
    u.anchor_tier = anchor_tier;
    u.kernel = kernel;
    u.mean_cluster_size = mean_cluster_size;
    return u;
}

const TierSpec& NetworkModel::tier(int id) const {
    for (const auto& t : tiers)
        if (t.id == id) return t;
    throw std::invalid_argument("no tier with id " + std::to_string(id));
}

bool NetworkModel::has_tier(int id) const {
    return std::any_of(tiers.begin(), tiers.end(), [id](const TierSpec& t) { return t.id == id; });
}

const TierSpec& NetworkModel::anchor() const {
    if (!users.has_tier0()) throw std::logic_error("uniform user placement has no anchor tier");
    return tier(users.anchor_tier);
}

void NetworkModel::validate() const {
    if (tiers.empty()) throw std::invalid_argument("model needs at least one tier");
    if (!(alpha > 2.0)) throw std::invalid_argument("path-loss exponent must exceed 2");
    for (const auto& t : tiers) {
        t.validate();
        int count = 0;
        for (const auto& o : tiers) count += (o.id == t.id);
        if (count != 1) throw std::invalid_argument("duplicate tier id " + std::to_string(t.id));
    }
    if (users.has_tier0()) {
        if (!has_tier(users.anchor_tier))
            throw std::invalid_argument("user anchor refers to unknown tier " +
                                        std::to_string(users.anchor_tier));
        const TierSpec& q = tier(users.anchor_tier);
        if (!users.kernel) throw std::invalid_argument("clustered users need a kernel");
        if (users.kind == UserPlacement::Case::bs_centered && q.is_pcp())
            throw std::invalid_argument("bs_centered users must anchor on a PPP tier");
        if (users.kind == UserPlacement::Case::cluster_centered) {
            if (!q.is_pcp())
                throw std::invalid_argument("cluster_centered users must anchor on a PCP tier");
            if (!(*users.kernel == *q.kernel) || users.mean_cluster_size != q.mean_cluster_size)
                throw std::invalid_argument(
                    "cluster_centered users inherit the anchor tier's kernel and mean cluster size");
        }
    }
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32),
                      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s) >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(make_engine(seed, 0)) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
    RandomStream s(0);
    s.engine_ = make_engine(seed, index + 1);
    return s;
}

double RandomStream::uniform() {
    return std::uniform_real_distribution<double>(std::numeric_limits<double>::min(), 1.0)(engine_);
}

double RandomStream::exponential() { return -std::log(uniform()); }

std::int64_t RandomStream::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
    if (mean == 0.0) return 0;
    return std::poisson_distribution<std::int64_t>(mean)(engine_);
}

double RandomStream::gaussian(double sigma) {
    return std::normal_distribution<double>(0.0, sigma)(engine_);
}

Vec2 RandomStream::point_in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double th = 2.0 * M_PI * uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

Vec2 RandomStream::kernel_offset(const ClusterKernel& kernel) {
    if (kernel.is_matern()) return point_in_disc(kernel.scale());
    return {gaussian(kernel.scale()), gaussian(kernel.scale())};
}

std::vector<Vec2> sample_ppp(double intensity, double window_radius, RandomStream& rng) {
    if (intensity < 0.0) throw std::invalid_argument("sample_ppp: negative intensity");
    if (!(window_radius > 0.0)) throw std::invalid_argument("sample_ppp: window radius must be positive");
    const std::int64_t n = rng.poisson(intensity * M_PI * window_radius * window_radius);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) pts.push_back(rng.point_in_disc(window_radius));
    return pts;
}

std::vector<std::pair<Vec2, Vec2>> sample_pcp(double parent_intensity, double mean_cluster_size,
                                              const ClusterKernel& kernel, double window_radius,
                                              RandomStream& rng) {
    if (parent_intensity < 0.0 || mean_cluster_size < 0.0)
        throw std::invalid_argument("sample_pcp: negative parameter");
    const double parent_radius = window_radius + kernel.sampling_reach();
    const std::vector<Vec2> parents = sample_ppp(parent_intensity, parent_radius, rng);
    std::vector<std::pair<Vec2, Vec2>> out;
    const double w2 = window_radius * window_radius;
    for (const Vec2& z : parents) {
        const std::int64_t n = rng.poisson(mean_cluster_size);
        for (std::int64_t i = 0; i < n; ++i) {
            const Vec2 p = z + rng.kernel_offset(kernel);
            if (p.norm2() <= w2) out.emplace_back(p, z);
        }
    }
    return out;
}

std::vector<Vec2> sample_typical_cluster(const UserPlacement& users, RandomStream& rng) {
    if (!users.has_tier0()) return {};
    if (!users.kernel) throw std::invalid_argument("clustered user placement is missing its kernel");
    // By radial symmetry of the kernel the displacement from the user at
    // the origin to its hotspot center has the kernel's own law.
    const Vec2 z0 = rng.kernel_offset(*users.kernel);
    if (users.kind == UserPlacement::Case::bs_centered) return {z0};
    std::vector<Vec2> bs;
    const std::int64_t n = rng.poisson(users.mean_cluster_size);
    bs.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) bs.push_back(z0 + rng.kernel_offset(*users.kernel));
    return bs;
}

PointPattern sample_network(const NetworkModel& model, double window_radius, RandomStream& rng) {
    PointPattern pat;
    for (const TierSpec& t : model.tiers) {
        if (t.is_pcp()) {
            for (auto& [p, z] : sample_pcp(t.parent_intensity, t.mean_cluster_size, *t.kernel,
                                           window_radius, rng))
                pat.points.push_back({p, t.id, z});
        } else {
            for (const Vec2& p : sample_ppp(t.intensity, window_radius, rng))
                pat.points.push_back({p, t.id, std::nullopt});
        }
    }
    pat.phi0 = sample_typical_cluster(model.users, rng);
    return pat;
}

}  // namespace hetnetcov
