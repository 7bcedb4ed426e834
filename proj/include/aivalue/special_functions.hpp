#pragma once

namespace aivalue {

/// Regularized incomplete beta I_x(a, b), evaluated with the modified Lentz
/// continued fraction; converges to ~1e-15 relative error.
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value P(|T| >= |t|) for Student-t with `df` degrees of freedom.
/// Infinite |t| gives 0.
double student_t_two_sided(double t, double df);

/// CDF of Student-t.
double student_t_cdf(double t, double df);

/// Upper tail P(F >= f) of the F distribution with (d1, d2) degrees of freedom.
double f_upper_tail(double f, double d1, double d2);

/// Upper tail of the standard normal.
double normal_upper_tail(double z);

}  // namespace aivalue
