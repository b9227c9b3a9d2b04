#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qsroots/generators.hpp"
#include "qsroots/qd.hpp"

namespace qsroots {

struct SolveConfig {
  // Deflate when |A(m,m-1)| < deflation_tol * |A(m,m)|, A = LU + accumulated shift.
  double deflation_tol = 1e-12;
  // Total sweep budget is max_iters_per_root * n.
  int max_iters_per_root = 50;
  double breakdown_tol = kDefaultBreakdownTol;
  // Only consulted by the polynomial front end.
  bool balance = true;
  // Shift multiplier for breakdown retries, in (0, 1).
  double shift_damping = 0.5;

  void check() const;
};

struct DeflationEvent {
  std::size_t active_size = 0;   // m at the time of deflation
  double shift = 0.0;            // accumulated shift
  double trailing_diagonal = 0.0;  // A(m,m) of the shifted iterate
  double criterion = 0.0;        // |A(m,m-1)| / |A(m,m) + shift|, 0 for m = 1
  std::size_t sweeps_before = 0;  // sweeps applied before this deflation
};

struct RootReport {
  std::vector<double> roots;   // in deflation order
  std::vector<int> iters;      // sweeps spent on each root
  int total_iters = 0;
  double iters_per_root = 0.0;
  std::vector<DeflationEvent> deflation_log;
  std::vector<double> shifts;  // every shift actually applied, in order
  int breakdown_retries = 0;
};

// (A(m,m), A(m,m-1)) of A = L U, 1-based m.
std::pair<double, double> current_entries(const HessLUFactors& f, std::size_t m);

struct RecoveredStep {
  DqdsResult step;
  double sigma = 0.0;  // shift actually applied
  int attempts = 1;
};

// dqds_step with the retry ladder sigma, sigma*c, sigma*c^2, 0
// (c = cfg.shift_damping). Throws Error(BreakdownUnrecoverable, n) when
// every attempt breaks down.
RecoveredStep recover_breakdown(const HessLUFactors& f, double sigma, const SolveConfig& cfg);

// Eigenvalues of L U by shifted dqds with trailing-edge deflation. The
// shift is the trailing diagonal entry of the current iterate; eigenvalues
// are restored by adding the accumulated shift at deflation time.
RootReport solve(const HessLUFactors& f, const SolveConfig& cfg = {});

}  // namespace qsroots
