#include "halfline/reconstruct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "halfline/errors.hpp"
#include "halfline/parallel.hpp"

namespace halfline {
namespace {

// Floating-point forward model: residual and Jacobian of the stacked trace
// equations for a candidate nonpositive part.
class TraceModel {
 public:
  explicit TraceModel(const ReconstructionProblem& p) : problem_(p) {
    top_ = p.positive_part.is_zero() ? 0 : p.positive_part.max_index();
    lo_ = -static_cast<std::int64_t>(p.window);
    positive_.assign(static_cast<std::size_t>(top_), 0.0);
    for (std::int64_t s = 1; s <= top_; ++s) positive_[static_cast<std::size_t>(s - 1)] = p.positive_part.at(s).get_d();
    for (std::size_t n = 1; n <= p.traces.size(); ++n) {
      const LatticeMeasure& t = p.traces.at(n);
      std::int64_t len = static_cast<std::int64_t>(n) * top_;
      if (!t.is_zero()) len = std::max(len, t.max_index());
      std::vector<double> block(static_cast<std::size_t>(len), 0.0);
      for (std::int64_t s = 1; s <= len; ++s) block[static_cast<std::size_t>(s - 1)] = t.at(s).get_d();
      targets_.push_back(std::move(block));
      rows_ += static_cast<std::size_t>(len);
    }
    if (p.mass) ++rows_;
  }

  std::size_t rows() const { return rows_; }

  // Fills r (and J when non-null).
  void evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* J) const {
    const std::size_t unknowns = problem_.unknowns();
    // base measure on sites lo_..top_
    std::vector<double> base(static_cast<std::size_t>(top_ - lo_ + 1), 0.0);
    for (std::size_t j = 0; j < unknowns; ++j) base[j] = x[static_cast<Eigen::Index>(j)];
    for (std::int64_t s = 1; s <= top_; ++s) base[static_cast<std::size_t>(s - lo_)] = positive_[static_cast<std::size_t>(s - 1)];

    r.resize(static_cast<Eigen::Index>(rows_));
    if (J) J->setZero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(unknowns));

    std::vector<double> prev{1.0};  // base^{n-1} on sites (n-1)*lo_ ..
    std::int64_t prev_lo = 0;
    Eigen::Index row = 0;
    for (std::size_t n = 1; n <= targets_.size(); ++n) {
      std::vector<double> cur(prev.size() + base.size() - 1, 0.0);
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (prev[i] == 0.0) continue;
        for (std::size_t j = 0; j < base.size(); ++j) cur[i + j] += prev[i] * base[j];
      }
      const std::int64_t cur_lo = prev_lo + lo_;
      const auto& target = targets_[n - 1];
      for (std::size_t s = 1; s <= target.size(); ++s, ++row) {
        const std::int64_t idx = static_cast<std::int64_t>(s) - cur_lo;
        const double v = idx < static_cast<std::int64_t>(cur.size()) ? cur[static_cast<std::size_t>(idx)] : 0.0;
        r[row] = v - target[s - 1];
        if (!J) continue;
        // d(base^n)(s)/dc_j = n * base^{n-1}(s - site_j), site_j = lo_ + j
        for (std::size_t j = 0; j < unknowns; ++j) {
          const std::int64_t k = static_cast<std::int64_t>(s) - (lo_ + static_cast<std::int64_t>(j)) - prev_lo;
          if (k >= 0 && k < static_cast<std::int64_t>(prev.size())) {
            (*J)(row, static_cast<Eigen::Index>(j)) = static_cast<double>(n) * prev[static_cast<std::size_t>(k)];
          }
        }
      }
      prev = std::move(cur);
      prev_lo = cur_lo;
    }
    if (problem_.mass) {
      double total = 0.0;
      for (double b : base) total += b;
      r[row] = total - *problem_.mass;
      if (J) J->row(row).setOnes();
    }
  }

 private:
  const ReconstructionProblem& problem_;
  std::int64_t top_ = 0;
  std::int64_t lo_ = 0;
  std::vector<double> positive_;
  std::vector<std::vector<double>> targets_;
  std::size_t rows_ = 0;
};

double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

StartRecord levenberg(const TraceModel& model, Eigen::VectorXd x, const ReconstructOptions& opt) {
  StartRecord rec;
  rec.initial.assign(x.data(), x.data() + x.size());
  const auto n = x.size();
  Eigen::VectorXd r, r_new;
  Eigen::MatrixXd J;
  model.evaluate(x, r, &J);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  unsigned it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (max_norm(r) <= 1e-3 * opt.accept_tol) break;
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    const double diag_floor = 1e-12 * std::max(1.0, A.diagonal().maxCoeff());
    Eigen::MatrixXd damped = A;
    for (Eigen::Index i = 0; i < n; ++i) damped(i, i) += lambda * std::max(A(i, i), diag_floor);
    const Eigen::VectorXd step = damped.ldlt().solve(-g);
    const Eigen::VectorXd candidate = x + step;
    model.evaluate(candidate, r_new, nullptr);
    const double cost_new = r_new.squaredNorm();
    if (std::isfinite(cost_new) && step.allFinite() && cost_new < cost) {
      x = candidate;
      cost = cost_new;
      model.evaluate(x, r, &J);
      lambda /= 10;
      if (max_norm(step) <= 1e-16 * (1.0 + max_norm(x))) break;
    } else {
      lambda *= 10;
      if (lambda > 1e16) break;
    }
  }
  rec.final.assign(x.data(), x.data() + x.size());
  rec.residual = max_norm(r);
  rec.iterations = it;
  rec.converged = std::isfinite(rec.residual) && rec.residual <= opt.accept_tol;
  return rec;
}

}  // namespace

ReconstructionProblem ReconstructionProblem::make(TraceSet traces, unsigned window, std::optional<double> mass) {
  if (traces.size() == 0) throw InvalidInput("reconstruction needs at least one trace");
  for (std::size_t n = 1; n <= traces.size(); ++n) {
    const auto& e = traces.at(n);
    if (e.step() != traces.step) throw InvalidInput("trace entry " + std::to_string(n) + " has a different lattice step");
    if (!e.is_zero() && e.min_index() <= 0) {
      throw InvalidInput("trace entry " + std::to_string(n) + " has mass outside (0, inf)");
    }
  }
  if (mass && !std::isfinite(*mass)) throw InvalidInput("mass target must be finite");
  ReconstructionProblem p{std::move(traces), LatticeMeasure(1.0), window, mass};
  p.positive_part = p.traces.at(1);
  if (p.positive_part.is_zero()) p.positive_part = LatticeMeasure(p.traces.step);
  return p;
}

std::vector<double> residual(const std::vector<double>& candidate_nonpos, const ReconstructionProblem& problem) {
  if (candidate_nonpos.size() != problem.unknowns()) {
    throw InvalidInput("residual: candidate has " + std::to_string(candidate_nonpos.size()) + " entries, window needs " +
                       std::to_string(problem.unknowns()));
  }
  TraceModel model(problem);
  Eigen::VectorXd r;
  model.evaluate(Eigen::Map<const Eigen::VectorXd>(candidate_nonpos.data(), static_cast<Eigen::Index>(candidate_nonpos.size())),
                 r, nullptr);
  return {r.data(), r.data() + r.size()};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::unique:
      return "unique";
    case Verdict::non_unique:
      return "non_unique";
    case Verdict::no_solution:
      return "no_solution";
  }
  return "unknown";
}

ReconstructionReport reconstruct(const ReconstructionProblem& problem, const ReconstructOptions& options) {
  if (options.starts == 0) throw InvalidInput("reconstruct: at least one start is required");
  if (problem.traces.size() < problem.unknowns()) {
    throw InsufficientData("reconstruct: window of " + std::to_string(problem.unknowns()) + " sites needs at least " +
                               std::to_string(problem.unknowns()) + " traces",
                           problem.unknowns());
  }
  const TraceModel model(problem);
  const auto dim = static_cast<Eigen::Index>(problem.unknowns());

  ReconstructionReport report;
  report.starts = options.starts;
  report.degenerate_warning = problem.degenerate();
  report.record.resize(options.starts);
  parallel_for(options.starts, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    Eigen::VectorXd x(dim);
    for (Eigen::Index j = 0; j < dim; ++j) x[j] = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
    report.record[i] = levenberg(model, x, options);
  });

  std::vector<const StartRecord*> good;
  for (const auto& rec : report.record) {
    if (rec.converged) good.push_back(&rec);
  }
  report.converged = good.size();
  std::sort(good.begin(), good.end(), [](const StartRecord* a, const StartRecord* b) { return a->final < b->final; });

  struct Cluster {
    const StartRecord* anchor;
    const StartRecord* best;
    std::size_t size;
  };
  std::vector<Cluster> clusters;
  for (const StartRecord* rec : good) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      double d = 0.0;
      for (std::size_t j = 0; j < rec->final.size(); ++j) d = std::max(d, std::abs(rec->final[j] - c.anchor->final[j]));
      return d <= options.cluster_radius;
    });
    if (it == clusters.end()) {
      clusters.push_back({rec, rec, 1});
    } else {
      ++it->size;
      if (rec->residual < it->best->residual) it->best = rec;
    }
  }
  for (const auto& c : clusters) {
    Solution s;
    s.nonpos_coeffs = c.best->final;
    s.residual = c.best->residual;
    s.cluster_size = c.size;
    std::vector<Rational> coeffs;
    for (double v : s.nonpos_coeffs) coeffs.push_back(rational_from_double(v));
    s.measure = problem.positive_part + LatticeMeasure(problem.traces.step, -static_cast<std::int64_t>(problem.window),
                                                       std::move(coeffs));
    report.solutions.push_back(std::move(s));
  }
  report.distinct_minima = clusters.size();
  report.verdict = clusters.empty()       ? Verdict::no_solution
                   : clusters.size() == 1 ? Verdict::unique
                                          : Verdict::non_unique;
  return report;
}

std::pair<LatticeMeasure, LatticeMeasure> degenerate_witness() {
  return {LatticeMeasure::dirac(-1), LatticeMeasure::dirac(-2)};
}

}  // namespace halfline
