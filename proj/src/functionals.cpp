#include "hetnetcov/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace hetnetcov {

namespace {

double tier_power(const NetworkModel& m, int id) {
    return id == 0 ? m.tier0_power() : m.tier(id).power;
}

double tier_beta(const NetworkModel& m, int id) {
    return id == 0 ? m.tier0_beta() : m.tier(id).beta;
}

}  // namespace

VFactor v_factor(const NetworkModel& model, int serving_tier, int interfering_tier) {
    VFactor v;
    v.beta = tier_beta(model, serving_tier);
    v.power_ratio = tier_power(model, interfering_tier) / tier_power(model, serving_tier);
    v.alpha = model.alpha;
    return v;
}

double interference_constant(double alpha) {
    if (!(alpha > 2.0)) throw std::invalid_argument("interference constant needs alpha > 2");
    return (2.0 * M_PI / alpha) / std::sin(2.0 * M_PI / alpha);
}

double one_minus_v_mass(const ClusterKernel& kernel, const PairFunction& v, double x, double z,
                        const FunctionalSpec& spec) {
    double pts[4];
    const int n = kernel.conditional_breakpoints(z, pts);
    const auto f = [&](double y) {
        return (1.0 - v(x, y)) * kernel.radial_conditional_density(y, z);
    };
    const IntegrationResult r = integrate_segments(f, pts, n, spec.inner);
    spec.note(r);
    return std::clamp(r.value, 0.0, 1.0);
}

double pgfl_ppp_closed(double intensity, double beta_power_term, double alpha, double x) {
    const double e = M_PI * intensity * std::pow(beta_power_term, 2.0 / alpha) * x * x *
                     interference_constant(alpha);
    return std::exp(-e);
}

double pgfl_ppp_closed(const NetworkModel& model, int j, int k, double x) {
    const TierSpec& tj = model.tier(j);
    if (tj.is_pcp()) throw std::invalid_argument("pgfl_ppp_closed: tier is not a PPP");
    const double term = tier_power(model, j) * tier_beta(model, k) / tier_power(model, k);
    return pgfl_ppp_closed(tj.intensity, term, model.alpha, x);
}

double pgfl_ppp_quadrature(double intensity, const PairFunction& v, double x,
                           const FunctionalSpec& spec) {
    if (intensity < 0.0) throw std::invalid_argument("pgfl_ppp_quadrature: negative intensity");
    const auto f = [&](double y) { return (1.0 - v(x, y)) * y; };
    const double head = std::max(x, 1.0);
    const IntegrationResult h = integrate_finite(f, 0.0, head, spec.mid);
    const IntegrationResult t = integrate_semi_infinite(f, head, spec.mid, head);
    spec.note(h);
    spec.note(t);
    return std::exp(-2.0 * M_PI * intensity * (h.value + t.value));
}

double pgfl_cluster(const ClusterKernel& kernel, double mbar, const PairFunction& v, double x,
                    double z, const FunctionalSpec& spec) {
    if (mbar < 0.0) throw std::invalid_argument("pgfl_cluster: negative mean cluster size");
    if (mbar == 0.0) return 1.0;
    return std::exp(-mbar * one_minus_v_mass(kernel, v, x, z, spec));
}

double pgfl_pcp(const TierSpec& tier, const PairFunction& v, double x, const FunctionalSpec& spec) {
    if (!tier.is_pcp()) throw std::invalid_argument("pgfl_pcp: tier is not a cluster process");
    if (tier.mean_cluster_size == 0.0 || tier.parent_intensity == 0.0) return 1.0;
    const ClusterKernel& kern = *tier.kernel;
    const double mbar = tier.mean_cluster_size;
    const auto f = [&](double z) {
        return -std::expm1(-mbar * one_minus_v_mass(kern, v, x, z, spec)) * z;
    };
    // Finite head covering the kernel scale and the serving distance, then
    // the power-law tail (~ z^{1-alpha}) by transform.
    const double cut = kern.density_cutoff();
    const double head_end = 2.0 * (x + cut);
    double pts[4] = {0.0, std::min(x, head_end), kern.is_matern() ? kern.scale() : head_end,
                     head_end};
    std::sort(pts, pts + 4);
    const IntegrationResult h = integrate_segments(f, pts, 4, spec.mid);
    const IntegrationResult t = integrate_semi_infinite(f, head_end, spec.mid, head_end);
    spec.note(h);
    spec.note(t);
    return std::exp(-2.0 * M_PI * tier.parent_intensity * (h.value + t.value));
}

double pgfl_pcp(const NetworkModel& model, int j, int k, double x, const FunctionalSpec& spec) {
    return pgfl_pcp(model.tier(j), v_factor(model, k, j), x, spec);
}

double pgfl_phi0(const NetworkModel& model, int k, double x, const FunctionalSpec& spec) {
    const UserPlacement& u = model.users;
    if (!u.has_tier0()) return 1.0;
    const VFactor v = v_factor(model, k, 0);
    const ClusterKernel& kern = *u.kernel;
    const double cut = kern.density_cutoff();
    if (u.kind == UserPlacement::Case::bs_centered) {
        const auto f = [&](double y) { return v(x, y) * kern.radial_density(y); };
        const IntegrationResult r = integrate_finite(f, 0.0, cut, spec.mid);
        spec.note(r);
        return r.value;
    }
    const auto f = [&](double z) {
        return pgfl_cluster(kern, u.mean_cluster_size, v, x, z, spec) * kern.radial_density(z);
    };
    const IntegrationResult r = integrate_finite(f, 0.0, cut, spec.mid);
    spec.note(r);
    return r.value;
}

double sum_product_ppp(double intensity, const RadialFunction& g, const PairFunction& v,
                       const FunctionalSpec& spec) {
    if (intensity < 0.0) throw std::invalid_argument("sum_product_ppp: negative intensity");
    if (intensity == 0.0) return 0.0;
    const auto f = [&](double x) {
        const double gx = g(x);
        if (gx == 0.0) return 0.0;
        return gx * pgfl_ppp_quadrature(intensity, v, x, spec) * x;
    };
    const double scale = 1.0 / std::sqrt(M_PI * intensity);
    const IntegrationResult r = integrate_semi_infinite(f, 0.0, spec.outer, scale);
    spec.note(r);
    return 2.0 * M_PI * intensity * r.value;
}

namespace detail {

// int z * G_c(v(x,.) | z) * kernel(x | z) dz over the centers whose
// clusters can place a point at distance x.
double marked_center_integral(const ClusterKernel& kern, double mbar, const PairFunction& v,
                              double x, const FunctionalSpec& spec) {
    const auto f = [&](double z) {
        const double dens = kern.radial_conditional_density(x, z);
        if (dens == 0.0) return 0.0;
        return z * pgfl_cluster(kern, mbar, v, x, z, spec) * dens;
    };
    const double cut = kern.density_cutoff();
    double pts[4] = {std::max(0.0, x - cut), x + cut, x + cut, x + cut};
    int n = 2;
    if (kern.is_matern()) {
        // Branch structure changes where z crosses r_d and r_d - x.
        const double r = kern.scale();
        double b[4] = {std::max(0.0, x - r), r - x, r, x + r};
        std::sort(b, b + 4);
        n = 0;
        for (double p : b) {
            const double q = std::clamp(p, std::max(0.0, x - r), x + r);
            if (n == 0 || q > pts[n - 1]) pts[n++] = q;
        }
    }
    const IntegrationResult res = integrate_segments(f, pts, n, spec.mid);
    spec.note(res);
    return res.value;
}

}  // namespace detail

double sum_product_pcp(const TierSpec& tier, const RadialFunction& g, const PairFunction& v,
                       const FunctionalSpec& spec) {
    if (!tier.is_pcp()) throw std::invalid_argument("sum_product_pcp: tier is not a cluster process");
    const double rate = tier.parent_intensity * tier.mean_cluster_size;
    if (rate == 0.0) return 0.0;
    const ClusterKernel& kern = *tier.kernel;
    const auto f = [&](double x) {
        const double gx = g(x);
        if (gx == 0.0) return 0.0;
        return gx * pgfl_pcp(tier, v, x, spec) *
               detail::marked_center_integral(kern, tier.mean_cluster_size, v, x, spec);
    };
    const double scale = 1.0 / std::sqrt(M_PI * rate) + kern.density_cutoff();
    const IntegrationResult r = integrate_semi_infinite(f, 0.0, spec.outer, scale);
    spec.note(r);
    return 2.0 * M_PI * rate * r.value;
}

double sum_product_offspring(const ClusterKernel& kernel, double mbar, double z,
                             const RadialFunction& g, const PairFunction& v,
                             const FunctionalSpec& spec, ClusterWeighting weighting) {
    if (mbar < 0.0) throw std::invalid_argument("sum_product_offspring: negative mean cluster size");
    if (z < 0.0) throw std::invalid_argument("sum_product_offspring: negative center distance");
    if (mbar == 0.0) {
        // Degenerate cluster: the size-biased law has a single point at the
        // kernel displacement; the ordinary cluster is empty.
        if (weighting == ClusterWeighting::ordinary) return 0.0;
        double pts[4];
        const int n = kernel.conditional_breakpoints(z, pts);
        const auto f0 = [&](double x) { return g(x) * kernel.radial_conditional_density(x, z); };
        const IntegrationResult r = integrate_segments(f0, pts, n, spec.mid);
        spec.note(r);
        return r.value;
    }
    const auto f = [&](double x) {
        const double dens = kernel.radial_conditional_density(x, z);
        if (dens == 0.0) return 0.0;
        const double gx = g(x);
        if (gx == 0.0) return 0.0;
        const double miss = one_minus_v_mass(kernel, v, x, z, spec);
        const double weight = weighting == ClusterWeighting::size_biased
                                  ? mbar * (1.0 - miss) + 1.0
                                  : mbar;
        return gx * std::exp(-mbar * miss) * weight * dens;
    };
    double pts[4];
    const int n = kernel.conditional_breakpoints(z, pts);
    const IntegrationResult r = integrate_segments(f, pts, n, spec.mid);
    spec.note(r);
    return r.value;
}

}  // namespace hetnetcov
