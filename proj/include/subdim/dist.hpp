// Reference distribution functions for the dimension tests.
#pragma once

namespace subdim {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x),
// series/continued-fraction evaluation, absolute error well below 1e-10.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper-tail probability P(chi^2_df >= x). Values x <= 0 give 1.
double chisq_sf(double x, int df);
double chisq_cdf(double x, int df);
double chisq_pdf(double x, int df);

// Upper tail of a * chi^2_df_a + b * chi^2_1 with independent summands and
// a, b > 0. Evaluated by integrating the chi^2_1 tail against the chi^2_df_a
// density on a refined Gauss-Legendre grid; absolute error <= 1e-6.
// df_a == 0 degenerates to the b * chi^2_1 term alone.
double weighted_chisq_mix_sf(double x, double a, int df_a, double b);

}  // namespace subdim
