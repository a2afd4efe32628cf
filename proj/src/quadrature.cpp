#include "hetnetcov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hetnetcov {

double IntegrationResult::value_or_throw() const {
    if (!converged) throw ToleranceNotMet(*this);
    return value;
}

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double error;
};

// One Kronrod evaluation with the QUADPACK-style error estimate.
Interval gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    double resabs = kWgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        resk += kWgk[j] * (fv[j] + fv[14 - j]);
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    }
    for (int j = 0; j < 3; ++j) resg += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    const double value = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double uflow = std::numeric_limits<double>::min();
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    return {a, b, value, err};
}

IntegrationResult adapt(const Integrand& f, std::vector<Interval> segments,
                        const QuadratureSpec& spec) {
    IntegrationResult out;
    if (segments.empty()) return out;

    auto worse = [](const Interval& l, const Interval& r) { return l.error < r.error; };
    std::make_heap(segments.begin(), segments.end(), worse);

    auto totals = [&segments](double& v, double& e) {
        v = e = 0.0;
        for (const Interval& s : segments) {
            v += s.value;
            e += s.error;
        }
    };

    double value, error;
    totals(value, error);
    int used = 0;
    const int budget = std::max(1, spec.max_subdivisions);
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) && used < budget) {
        std::pop_heap(segments.begin(), segments.end(), worse);
        const Interval top = segments.back();
        segments.pop_back();
        if (top.b - top.a < 64.0 * std::numeric_limits<double>::epsilon() * std::abs(top.b)) {
            // Interval too narrow to split further; keep it and stop refining.
            segments.push_back(top);
            std::push_heap(segments.begin(), segments.end(), worse);
            break;
        }
        const double mid = 0.5 * (top.a + top.b);
        segments.push_back(gk15(f, top.a, mid));
        std::push_heap(segments.begin(), segments.end(), worse);
        segments.push_back(gk15(f, mid, top.b));
        std::push_heap(segments.begin(), segments.end(), worse);
        ++used;
        totals(value, error);
    }

    out.value = value;
    out.error = error;
    out.subdivisions = used;
    out.converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    return out;
}

}  // namespace

IntegrationResult integrate_finite(const Integrand& f, double a, double b,
                                   const QuadratureSpec& spec) {
    if (!(a <= b)) throw std::invalid_argument("integrate_finite: requires a <= b");
    if (a == b) return {};
    return adapt(f, {gk15(f, a, b)}, spec);
}

IntegrationResult integrate_segments(const Integrand& f, const double* pts, int n_pts,
                                     const QuadratureSpec& spec) {
    std::vector<Interval> segs;
    for (int i = 0; i + 1 < n_pts; ++i) {
        if (!(pts[i] <= pts[i + 1]))
            throw std::invalid_argument("integrate_segments: breakpoints must be ordered");
        if (pts[i] < pts[i + 1]) segs.push_back(gk15(f, pts[i], pts[i + 1]));
    }
    return adapt(f, std::move(segs), spec);
}

IntegrationResult integrate_semi_infinite(const Integrand& f, double a,
                                          const QuadratureSpec& spec, double scale_hint) {
    if (spec.tail_policy == QuadratureSpec::TailPolicy::fixed_multiple && scale_hint > 0.0)
        return integrate_finite(f, a, a + spec.tail_multiple * scale_hint, spec);
    // x = a + L*t/(1-t) maps [0,1) onto [a,inf); decaying integrands stay
    // bounded because f vanishes faster than the (1-t)^-2 Jacobian grows.
    // L places the bulk of the integrand near the middle of [0,1).
    const double L = scale_hint > 0.0 ? scale_hint : 1.0;
    const Integrand g = [&f, a, L](double t) {
        const double u = 1.0 - t;
        const double x = a + L * t / u;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * L / (u * u);
    };
    return adapt(g, {gk15(g, 0.0, 0.5), gk15(g, 0.5, 1.0)}, spec);
}

}  // namespace hetnetcov
