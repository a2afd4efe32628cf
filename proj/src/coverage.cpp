#include "hetnetcov/coverage.hpp"

#include <cmath>
#include <future>

namespace hetnetcov {

namespace {

// Product of every interferer PGFL seen from a candidate serving BS of
// tier k at distance x: all BS tiers (including k itself; for k's own tier
// this is the reduced-Palm part shared by all its points) and, unless the
// serving BS is the tier-0 one, the tier-0 process.
double pgfl_product(const NetworkModel& m, int k, double x, const FunctionalSpec& spec) {
    double p = k == 0 ? 1.0 : pgfl_phi0(m, k, x, spec);
    for (const TierSpec& tj : m.tiers) {
        if (p == 0.0) return 0.0;
        if (tj.is_pcp())
            p *= pgfl_pcp(m, tj.id, k, x, spec);
        else
            p *= pgfl_ppp_closed(m, tj.id, k, x);
    }
    return p;
}

double serving_scale(const NetworkModel& m) {
    double lam = 0.0;
    for (const TierSpec& t : m.tiers) lam += t.effective_intensity();
    double reach = 0.0;
    for (const TierSpec& t : m.tiers)
        if (t.kernel) reach = std::max(reach, t.kernel->density_cutoff());
    return (lam > 0.0 ? 1.0 / std::sqrt(M_PI * lam) : 1.0) + reach;
}

}  // namespace

double per_tier_coverage_ppp(const NetworkModel& model, int k, const FunctionalSpec& spec) {
    const TierSpec& tk = model.tier(k);
    if (tk.is_pcp()) throw std::invalid_argument("per_tier_coverage_ppp: tier is not a PPP");
    if (!(tk.beta > 1.0))
        throw std::invalid_argument("per-tier coverage requires beta > 1 on tier " +
                                    std::to_string(k));
    if (tk.intensity == 0.0) return 0.0;
    const auto f = [&](double x) { return x * pgfl_product(model, k, x, spec); };
    const IntegrationResult r = integrate_semi_infinite(f, 0.0, spec.outer, serving_scale(model));
    spec.note(r);
    return 2.0 * M_PI * tk.intensity * r.value;
}

double per_tier_coverage_pcp(const NetworkModel& model, int k, const FunctionalSpec& spec) {
    const TierSpec& tk = model.tier(k);
    if (!tk.is_pcp()) throw std::invalid_argument("per_tier_coverage_pcp: tier is not a PCP");
    if (!(tk.beta > 1.0))
        throw std::invalid_argument("per-tier coverage requires beta > 1 on tier " +
                                    std::to_string(k));
    if (tk.effective_intensity() == 0.0) return 0.0;
    const VFactor v_own = v_factor(model, k, k);
    const auto f = [&](double x) {
        const double prod = pgfl_product(model, k, x, spec);
        if (prod == 0.0) return 0.0;
        return prod * detail::marked_center_integral(*tk.kernel, tk.mean_cluster_size, v_own, x,
                                                     spec);
    };
    const IntegrationResult r = integrate_semi_infinite(f, 0.0, spec.outer, serving_scale(model));
    spec.note(r);
    return 2.0 * M_PI * tk.parent_intensity * tk.mean_cluster_size * r.value;
}

double tier0_coverage(const NetworkModel& model, const FunctionalSpec& spec) {
    const UserPlacement& u = model.users;
    if (!u.has_tier0()) return 0.0;
    if (!(model.tier0_beta() > 1.0))
        throw std::invalid_argument("per-tier coverage requires beta > 1 on tier 0");
    const ClusterKernel& kern = *u.kernel;
    const double cut = kern.density_cutoff();

    if (u.kind == UserPlacement::Case::bs_centered) {
        const auto f = [&](double z0) {
            const double dens = kern.radial_density(z0);
            return dens == 0.0 ? 0.0 : pgfl_product(model, 0, z0, spec) * dens;
        };
        const IntegrationResult r = integrate_finite(f, 0.0, cut, spec.outer);
        spec.note(r);
        return r.value;
    }

    // Co-centered BS cluster: serving candidates x weighted by the chance
    // the cluster places a BS there, with the rest of the same cluster as
    // extra interference. The hotspot-center distance z0 is deconditioned
    // in the inner integral so the tier PGFLs are evaluated once per x.
    const double m0 = u.mean_cluster_size;
    if (m0 == 0.0) return 0.0;
    const VFactor v00 = v_factor(model, 0, 0);
    const auto f = [&](double x) {
        const auto fz = [&](double z0) {
            const double dens = kern.radial_conditional_density(x, z0);
            if (dens == 0.0) return 0.0;
            const double own = std::exp(-m0 * one_minus_v_mass(kern, v00, x, z0, spec));
            return kern.radial_density(z0) * own * dens;
        };
        double pts[4] = {std::max(0.0, x - cut), std::min(cut, x + cut), cut, cut};
        if (kern.is_matern()) pts[1] = std::clamp(kern.scale() - x, pts[0], cut);
        const IntegrationResult rz = integrate_segments(fz, pts, 3, spec.mid);
        spec.note(rz);
        if (rz.value == 0.0) return 0.0;
        return pgfl_product(model, 0, x, spec) * rz.value;
    };
    const IntegrationResult r = integrate_finite(f, 0.0, 2.0 * cut, spec.outer);
    spec.note(r);
    return m0 * r.value;
}

CoverageEstimate total_coverage(const NetworkModel& model, const FunctionalSpec& spec) {
    model.validate();
    for (const TierSpec& t : model.tiers)
        if (!(t.beta > 1.0))
            throw std::invalid_argument("total_coverage requires beta > 1; tier " +
                                        std::to_string(t.id) + " has beta = " +
                                        std::to_string(t.beta));

    std::vector<std::pair<int, std::future<double>>> jobs;
    for (const TierSpec& t : model.tiers)
        jobs.emplace_back(t.id, std::async(std::launch::async, [&model, &t, &spec] {
                              return t.is_pcp() ? per_tier_coverage_pcp(model, t.id, spec)
                                                : per_tier_coverage_ppp(model, t.id, spec);
                          }));
    std::future<double> tier0 =
        std::async(std::launch::async, [&model, &spec] { return tier0_coverage(model, spec); });

    CoverageEstimate est;
    est.method = CoverageEstimate::Method::analytic;
    est.per_tier[0] = tier0.get();
    for (auto& [id, fut] : jobs) est.per_tier[id] = fut.get();
    for (const auto& [id, p] : est.per_tier) est.total += p;
    est.accuracy_degraded = spec.degraded;
    return est;
}

double baseline_closed_form(const NetworkModel& model) {
    model.validate();
    const double a = model.alpha;
    double num = 0.0, den = 0.0;
    for (const TierSpec& t : model.tiers) {
        if (!(t.beta > 1.0))
            throw std::invalid_argument("baseline_closed_form requires beta > 1 on tier " +
                                        std::to_string(t.id));
        const double w = t.effective_intensity() * std::pow(t.power, 2.0 / a);
        num += w * std::pow(t.beta, -2.0 / a);
        den += w;
    }
    if (den == 0.0) return 0.0;
    return num / den / interference_constant(a);
}

NetworkModel with_cluster_scale(const NetworkModel& model, double xi) {
    NetworkModel m = model;
    for (TierSpec& t : m.tiers)
        if (t.kernel) t.kernel = t.kernel->scaled(xi);
    if (m.users.kernel) m.users.kernel = m.users.kernel->scaled(xi);
    return m;
}

}  // namespace hetnetcov
