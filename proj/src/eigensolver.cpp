#include "qsroots/eigensolver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "log.hpp"
#include "qsroots/error.hpp"

namespace qsroots {

void SolveConfig::check() const {
  if (!(deflation_tol > 0.0) || !(breakdown_tol > 0.0))
    throw Error(ErrorKind::InvalidArgument, 0, "tolerances must be positive");
  if (max_iters_per_root < 1)
    throw Error(ErrorKind::InvalidArgument, 0, "max_iters_per_root must be at least 1");
  if (!(shift_damping > 0.0 && shift_damping < 1.0))
    throw Error(ErrorKind::InvalidArgument, 0, "shift_damping must lie in (0, 1)");
}

std::pair<double, double> current_entries(const HessLUFactors& f, std::size_t m) {
  if (m == 0 || m > f.size()) throw Error(ErrorKind::InvalidArgument, m, "active size out of range");
  if (m == 1) return {f.d[0], 0.0};
  const std::size_t i = m - 1;
  // Last row of L has s_{m-1} at column m-1, so A(m,m) picks up
  // s_{m-1} U(m-1,m) = s_{m-1} g_{m-1} h_m.
  const double coupling = f.g[i - 1].dot(f.h[i]);
  return {f.s[i - 1] * coupling + f.d[i], f.s[i - 1] * f.d[i - 1]};
}

RecoveredStep recover_breakdown(const HessLUFactors& f, double sigma, const SolveConfig& cfg) {
  const double ladder[] = {sigma, sigma * cfg.shift_damping,
                           sigma * cfg.shift_damping * cfg.shift_damping, 0.0};
  int attempt = 0;
  for (double s : ladder) {
    ++attempt;
    try {
      return {dqds_step(f, s, cfg.breakdown_tol), s, attempt};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Breakdown) throw;
      detail::logger().info("breakdown at pivot {} with shift {:.17g} (attempt {})", e.index(), s,
                            attempt);
    }
  }
  std::ostringstream msg;
  msg << "every shift in the retry ladder from " << sigma << " broke down";
  throw Error(ErrorKind::BreakdownUnrecoverable, f.size(), msg.str());
}

RootReport solve(const HessLUFactors& f, const SolveConfig& cfg) {
  cfg.check();
  validate(f);
  const std::size_t n = f.size();
  const long budget = static_cast<long>(cfg.max_iters_per_root) * static_cast<long>(n);

  RootReport report;
  HessLUFactors cur = f;
  std::size_t m = n;
  double shift_sum = 0.0;
  int sweeps_this_root = 0;

  while (m >= 1) {
    const auto [diag, sub] = current_entries(cur, m);
    if (!std::isfinite(diag) || !std::isfinite(sub)) {
      throw Error(ErrorKind::NonConvergence, m, "iterate became non-finite");
    }
    // A(m,m) of the unshifted iterate LU + shift_sum I.
    const double scale = std::abs(diag + shift_sum);
    const double criterion =
        m == 1 || sub == 0.0 ? 0.0
                             : (scale != 0.0 ? std::abs(sub) / scale
                                             : std::numeric_limits<double>::infinity());

    if (m == 1 || sub == 0.0 || std::abs(sub) < cfg.deflation_tol * scale) {
      const double root = diag + shift_sum;
      report.roots.push_back(root);
      report.iters.push_back(sweeps_this_root);
      report.deflation_log.push_back(
          {m, shift_sum, diag, criterion, static_cast<std::size_t>(report.total_iters)});
      detail::logger().info("deflate m={} root={:.17g} after {} sweeps (criterion {:.3e})", m,
                            root, sweeps_this_root, criterion);
      sweeps_this_root = 0;
      if (--m >= 1) cur = cur.leading(m);
      continue;
    }

    if (report.total_iters >= budget) {
      std::ostringstream msg;
      msg << "no deflation within " << budget << " sweeps (active size " << m << ")";
      throw Error(ErrorKind::NonConvergence, m, msg.str());
    }

    RecoveredStep next = recover_breakdown(cur, diag, cfg);
    report.breakdown_retries += next.attempts - 1;
    cur = std::move(next.step.factors);
    shift_sum += next.sigma;
    report.shifts.push_back(next.sigma);
    ++report.total_iters;
    ++sweeps_this_root;
    detail::logger().trace("sweep m={} shift={:.17g} sub={:.3e}", m, next.sigma, sub);
  }

  report.iters_per_root = static_cast<double>(report.total_iters) / static_cast<double>(n);
  return report;
}

}  // namespace qsroots
