#include "subdim/dist.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "subdim/errors.hpp"

namespace subdim {

namespace {

// Lower incomplete gamma by its power series; converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * eps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz's continued fraction; for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
    throw InvalidInput("gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0 || !std::isfinite(a) || !std::isfinite(x))
    throw InvalidInput("gamma_q: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chisq_sf(double x, int df) {
  if (df < 1) throw InvalidInput("chisq_sf: df must be >= 1");
  if (!(x > 0.0)) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double chisq_cdf(double x, int df) {
  if (df < 1) throw InvalidInput("chisq_cdf: df must be >= 1");
  if (!(x > 0.0)) return 0.0;
  return gamma_p(0.5 * df, 0.5 * x);
}

double chisq_pdf(double x, int df) {
  if (df < 1) throw InvalidInput("chisq_pdf: df must be >= 1");
  if (x < 0.0) return 0.0;
  if (x == 0.0) return df == 2 ? 0.5 : (df == 1 ? std::numeric_limits<double>::infinity() : 0.0);
  const double half = 0.5 * df;
  return std::exp((half - 1.0) * std::log(x) - 0.5 * x - half * std::log(2.0) - std::lgamma(half));
}

double weighted_chisq_mix_sf(double x, double a, int df_a, double b) {
  if (!(b > 0.0)) throw InvalidInput("weighted_chisq_mix_sf: b must be > 0");
  if (df_a < 0) throw InvalidInput("weighted_chisq_mix_sf: df_a must be >= 0");
  if (df_a == 0) return chisq_sf(x / b, 1);
  if (!(a > 0.0)) throw InvalidInput("weighted_chisq_mix_sf: a must be > 0");
  if (!(x > 0.0)) return 1.0;

  // P(aS + bW >= x) = Q_{df_a}(x/a) + int_0^{x/a} f_{df_a}(s) P(W >= (x - as)/b) ds,
  // with S ~ chi^2_{df_a}, W ~ chi^2_1. The substitution s = u^2 removes the
  // density singularity at zero for df_a = 1 and keeps the integrand smooth.
  const double upper = std::sqrt(x / a);
  const double half = 0.5 * df_a;
  const double log_norm = -half * std::log(2.0) - std::lgamma(half);

  // Gauss-Legendre nodes are interior, so u > 0 always holds here.
  const auto integrand = [&](double u) {
    const double s = u * u;
    const double tail = chisq_sf((x - a * s) / b, 1);
    // 2 u^{df_a - 1} e^{-u^2/2} / (2^{df_a/2} Gamma(df_a/2))
    const double log_density = std::log(2.0) + (df_a - 1) * std::log(u) - 0.5 * s + log_norm;
    return std::exp(log_density) * tail;
  };

  const auto integrate = [&](int segments) {
    double total = 0.0;
    const double width = upper / segments;
    for (int seg = 0; seg < segments; ++seg) {
      const double mid = (seg + 0.5) * width;
      const double halfwidth = 0.5 * width;
      double local = 0.0;
      for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        local += kGlWeights[i] *
                 (integrand(mid + halfwidth * kGlNodes[i]) + integrand(mid - halfwidth * kGlNodes[i]));
      }
      total += local * halfwidth;
    }
    return total;
  };

  double value = integrate(16);
  for (int segments = 32; segments <= 512; segments *= 2) {
    const double refined = integrate(segments);
    const bool converged = std::abs(refined - value) < 1e-9;
    value = refined;
    if (converged) break;
  }
  const double tail_beyond = chisq_sf(x / a, df_a);
  const double result = value + tail_beyond;
  return result < 0.0 ? 0.0 : (result > 1.0 ? 1.0 : result);
}

}  // namespace subdim
