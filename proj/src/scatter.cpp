#include "subdim/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "subdim/errors.hpp"

namespace subdim {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::MatrixXd trace_rescaled(const Eigen::MatrixXd& v) {
  const double tr = v.trace();
  if (!(tr > 0.0)) throw SingularMatrix("tyler_shape: nonpositive trace in iterate");
  return v * (static_cast<double>(v.rows()) / tr);
}

}  // namespace

ScatterEstimate mean_cov(const DataTable& x) {
  ScatterEstimate est;
  est.kind = ScatterKind::cov;
  est.location = x.rows().colwise().mean();
  const Eigen::MatrixXd centered = x.rows().rowwise() - est.location.transpose();
  est.matrix = symmetrized(centered.transpose() * centered / static_cast<double>(x.n()));
  return est;
}

Eigen::VectorXd spatial_median(const DataTable& x) {
  const Eigen::MatrixXd& rows = x.rows();
  const Eigen::Index n = x.n();
  Eigen::VectorXd mu = rows.colwise().mean();
  const double scale =
      std::max(1e-300, (rows.rowwise() - mu.transpose()).rowwise().norm().mean());
  const double coincidence = 1e-12 * std::max(1.0, scale);

  for (int iteration = 0; iteration < 500; ++iteration) {
    Eigen::VectorXd pull = Eigen::VectorXd::Zero(x.p());  // negative gradient
    Eigen::VectorXd weighted = Eigen::VectorXd::Zero(x.p());
    double weight_sum = 0.0;
    int coincident = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd diff = rows.row(i).transpose() - mu;
      const double dist = diff.norm();
      if (dist <= coincidence) {
        ++coincident;
        continue;
      }
      pull += diff / dist;
      weighted += rows.row(i).transpose() / dist;
      weight_sum += 1.0 / dist;
    }
    const double pull_norm = pull.norm();
    // Optimality: the unit-vector sum is dominated by the multiplicity of a
    // coincident data point (subgradient condition), or is negligibly small.
    if (pull_norm <= coincident + 1e-8 * static_cast<double>(n)) return mu;

    const Eigen::VectorXd target = weighted / weight_sum;
    Eigen::VectorXd next;
    if (coincident == 0) {
      next = target;
    } else {
      const double step = std::max(0.0, 1.0 - coincident / pull_norm);
      next = mu + step * (target - mu);
    }
    if ((next - mu).norm() <= 1e-15 * std::max(1.0, scale)) return next;
    mu = next;
  }
  throw ConvergenceFailure("spatial_median: no convergence in 500 iterations", to_std(mu));
}

ScatterEstimate tyler_shape(const DataTable& x, const Eigen::VectorXd& location,
                            const TylerOptions& options) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (location.size() != p) throw InvalidInput("tyler_shape: location dimension mismatch");
  if (n <= p) throw InvalidInput("tyler_shape: need n > p");

  const Eigen::MatrixXd centered = x.rows().rowwise() - location.transpose();
  const double scale = std::max(1e-300, centered.rowwise().norm().mean());
  for (Eigen::Index i = 0; i < n; ++i)
    if (centered.row(i).norm() <= 1e-12 * scale)
      throw DegenerateObservation("tyler_shape: observation " + std::to_string(i) +
                                  " coincides with the location");

  Eigen::MatrixXd shape;
  if (!options.full) {
    if (options.init.rows() != p || options.init.cols() != p)
      throw InvalidInput("tyler_shape: k-step mode requires a p x p initial estimate");
    shape = trace_rescaled(symmetrized(options.init));
  } else if (options.init.size() != 0) {
    shape = trace_rescaled(symmetrized(options.init));
  } else {
    shape = trace_rescaled(mean_cov(x).matrix);
  }

  ScatterEstimate est;
  est.kind = options.full ? ScatterKind::tyler_full : ScatterKind::tyler_kstep;
  est.location = location;
  est.steps = options.full ? 0 : options.k_steps;
  est.converged = false;

  const int cap = options.full ? options.max_iterations : options.k_steps;
  double relative_change = std::numeric_limits<double>::infinity();
  for (int iteration = 1; iteration <= cap; ++iteration) {
    Eigen::LLT<Eigen::MatrixXd> llt(shape);
    if (llt.info() != Eigen::Success)
      throw SingularMatrix("tyler_shape: singular intermediate shape matrix");
    const Eigen::MatrixXd solved = llt.solve(centered.transpose());  // p x n
    Eigen::VectorXd weights(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mahalanobis_sq = centered.row(i).dot(solved.col(i));
      if (!(mahalanobis_sq > 0.0))
        throw SingularMatrix("tyler_shape: nonpositive Mahalanobis distance");
      weights(i) = static_cast<double>(p) / (static_cast<double>(n) * mahalanobis_sq);
    }
    const Eigen::MatrixXd updated = trace_rescaled(
        symmetrized(centered.transpose() * weights.asDiagonal() * centered));
    relative_change = (updated - shape).norm() / shape.norm();
    shape = updated;
    est.iterations = iteration;
    if (relative_change <= options.tolerance) {
      est.converged = true;
      if (options.full) break;
    }
  }
  est.matrix = shape;
  return est;
}

Eigen::MatrixXd fourth_moment_scatter(const DataTable& x, const ScatterEstimate& s1) {
  const Eigen::Index n = x.n();
  const Eigen::MatrixXd root_inverse = sym_power(s1.matrix, -0.5);
  const Eigen::MatrixXd centered = x.rows().rowwise() - s1.location.transpose();
  const Eigen::MatrixXd whitened = centered * root_inverse;
  const Eigen::VectorXd radii_sq = whitened.rowwise().squaredNorm();
  return symmetrized(centered.transpose() * (radii_sq / static_cast<double>(n)).asDiagonal() *
                     centered);
}

double sigma1_hat(const DataTable& x, const ScatterEstimate& s) {
  const double p = static_cast<double>(x.p());
  if (s.kind != ScatterKind::cov) return (p + 2.0) / p;  // constant alpha(r) = p + 2
  const Eigen::MatrixXd root_inverse = sym_power(s.matrix, -0.5);
  const Eigen::MatrixXd whitened = (x.rows().rowwise() - s.location.transpose()) * root_inverse;
  const Eigen::VectorXd radii_sq = whitened.rowwise().squaredNorm();
  const double mean_alpha_sq = radii_sq.array().square().mean();  // alpha(r) = r^2
  return mean_alpha_sq / (p * (p + 2.0));
}

SliceAssignment make_slices(const Eigen::Ref<const Eigen::VectorXd>& y, int slice_count) {
  const Eigen::Index n = y.size();
  if (slice_count < 2) throw InvalidInput("make_slices: need at least two slices");
  if (n < slice_count) throw InsufficientVariation("make_slices: fewer observations than slices");

  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int m = static_cast<int>(distinct.size());
  if (m < slice_count)
    throw InsufficientVariation("make_slices: need at least " + std::to_string(slice_count) +
                                " distinct response values, have " + std::to_string(m));

  // Inverse-CDF quantiles at h/H, expressed as indices into the distinct values.
  std::vector<int> cut(slice_count - 1);
  for (int h = 1; h < slice_count; ++h) {
    const Eigen::Index rank = (static_cast<Eigen::Index>(h) * n + slice_count - 1) / slice_count;
    const double value = sorted[static_cast<std::size_t>(rank - 1)];
    cut[h - 1] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), value) - distinct.begin());
  }
  // Heavy ties can collapse neighbouring cuts or eat the top slice; push the
  // cut indices apart while staying as close to the quantiles as possible.
  for (int h = 0; h < slice_count - 1; ++h)
    cut[h] = std::max(cut[h], h);
  for (int h = slice_count - 2; h >= 0; --h)
    cut[h] = std::min(cut[h], m - 2 - (slice_count - 2 - h));
  for (int h = 1; h < slice_count - 1; ++h)
    cut[h] = std::max(cut[h], cut[h - 1] + 1);

  SliceAssignment slices;
  slices.slice_count = slice_count;
  slices.boundaries.resize(slice_count - 1);
  for (int h = 0; h < slice_count - 1; ++h) slices.boundaries(h) = distinct[cut[h]];

  const SliceAssignment assigned = apply_slice_boundaries(y, slices.boundaries);
  slices.labels = assigned.labels;
  slices.counts = assigned.counts;
  for (int h = 0; h < slice_count; ++h)
    if (slices.counts[h] == 0)
      throw InsufficientVariation("make_slices: slice " + std::to_string(h + 1) + " is empty");
  return slices;
}

SliceAssignment apply_slice_boundaries(const Eigen::Ref<const Eigen::VectorXd>& y,
                                       const Eigen::VectorXd& boundaries) {
  SliceAssignment slices;
  slices.slice_count = static_cast<int>(boundaries.size()) + 1;
  slices.boundaries = boundaries;
  slices.labels.resize(static_cast<std::size_t>(y.size()));
  slices.counts.assign(static_cast<std::size_t>(slices.slice_count), 0);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    // A value equal to a boundary stays in the lower slice.
    int label = 0;
    while (label < slices.slice_count - 1 && y(i) > boundaries(label)) ++label;
    slices.labels[static_cast<std::size_t>(i)] = label;
    ++slices.counts[static_cast<std::size_t>(label)];
  }
  return slices;
}

Eigen::MatrixXd sir_between_scatter(const DataTable& x, const SliceAssignment& slices) {
  const Eigen::Index n = x.n();
  const Eigen::Index p = x.p();
  if (static_cast<Eigen::Index>(slices.labels.size()) != n)
    throw InvalidInput("sir_between_scatter: slice assignment does not match the data");

  const Eigen::VectorXd grand_mean = x.rows().colwise().mean();
  Eigen::MatrixXd slice_sums = Eigen::MatrixXd::Zero(slices.slice_count, p);
  for (Eigen::Index i = 0; i < n; ++i)
    slice_sums.row(slices.labels[static_cast<std::size_t>(i)]) += x.rows().row(i);

  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(p, p);
  for (int h = 0; h < slices.slice_count; ++h) {
    const int count = slices.counts[static_cast<std::size_t>(h)];
    if (count == 0) continue;
    const Eigen::VectorXd deviation = slice_sums.row(h).transpose() / count - grand_mean;
    between += count * deviation * deviation.transpose();
  }
  return symmetrized(between / static_cast<double>(n));
}

}  // namespace subdim
