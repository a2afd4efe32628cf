#pragma once

#include <functional>
#include <stdexcept>

// Globally adaptive one-dimensional quadrature (Gauss-Kronrod 15(7) with
// worst-interval bisection) plus a rational transform for semi-infinite
// domains. Every result carries an error estimate and a convergence flag;
// nothing throws on tolerance failure unless asked to.

namespace hetnetcov {

struct QuadratureSpec {
    double rel_tol = 1e-7;
    double abs_tol = 1e-10;
    int max_subdivisions = 400;  // >= 1; each subdivision adds one bisection

    enum class TailPolicy { adaptive, fixed_multiple };
    /// Semi-infinite handling: `adaptive` maps [a, inf) to [0, 1) with a
    /// rational transform; `fixed_multiple` cuts the tail at
    /// a + tail_multiple * scale_hint when a scale hint is supplied.
    TailPolicy tail_policy = TailPolicy::adaptive;
    double tail_multiple = 8.0;

    QuadratureSpec with_tolerance(double rel, double abs) const {
        QuadratureSpec s = *this;
        s.rel_tol = rel;
        s.abs_tol = abs;
        return s;
    }
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int subdivisions = 0;
    bool converged = true;

    /// Value if converged, otherwise throws ToleranceNotMet carrying *this.
    double value_or_throw() const;
};

class ToleranceNotMet : public std::runtime_error {
  public:
    explicit ToleranceNotMet(IntegrationResult best)
        : std::runtime_error("quadrature tolerance not met"), best_(best) {}
    const IntegrationResult& best_estimate() const { return best_; }

  private:
    IntegrationResult best_;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b]. Endpoint singularities are tolerated as long
/// as they are integrable: the Kronrod nodes never touch the endpoints and
/// refinement concentrates where the error estimate says to.
IntegrationResult integrate_finite(const Integrand& f, double a, double b,
                                   const QuadratureSpec& spec = {});

/// Integral of f over [a, inf) for integrable, decaying f. Divergence shows
/// up as refinement exhaustion near the far endpoint (converged = false).
/// `scale_hint` > 0 enables the fixed_multiple cutoff policy.
IntegrationResult integrate_semi_infinite(const Integrand& f, double a,
                                          const QuadratureSpec& spec = {},
                                          double scale_hint = 0.0);

/// Integral over consecutive segments [pts[0], pts[1]], ..., sharing one
/// subdivision budget. Used for piecewise-smooth kernels.
IntegrationResult integrate_segments(const Integrand& f, const double* pts, int n_pts,
                                     const QuadratureSpec& spec = {});

}  // namespace hetnetcov
