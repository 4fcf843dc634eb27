#pragma once

namespace softthresh {

/// Error function, Abramowitz & Stegun 7.1.26 rational approximation.
/// Absolute error below 1.5e-7; odd, with error_function(0) == 0 exactly.
double error_function(double x);

/// Standard normal CDF built on error_function().
double normal_cdf(double z);

/// Inverse of normal_cdf() for p in (0, 1).
///
/// Starts from Acklam's rational approximation of the true quantile and
/// refines it with Newton steps against normal_cdf(), so that
/// normal_cdf(normal_quantile(p)) == p to rounding error. The result differs
/// from the exact normal quantile by the erf approximation error divided by
/// the density, a few 1e-6 at most in the usual range.
double normal_quantile(double p);

}  // namespace softthresh
