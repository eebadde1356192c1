#pragma once

namespace attrpriv {

// Standard normal CDF, computed from erfc.
double normal_cdf(double x);

// Standard normal quantile function. Rational approximation refined with
// Newton steps against the erfc-based CDF; absolute error below 1e-9 for
// p in [1e-10, 1-1e-10]. Throws ConfigError for p outside (0,1).
double normal_inverse_cdf(double p);

}  // namespace attrpriv
