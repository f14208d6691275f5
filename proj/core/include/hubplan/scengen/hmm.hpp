#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/scengen/matrix.hpp"
#include "hubplan/scengen/moments.hpp"

namespace hubplan::scengen {

struct IterationRecord {
  int iteration = 0;
  double moment_error = 0.0;
  double correlation_error = 0.0;
};

struct RawSampleMatrix {
  Matrix values;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iteration_log;
  int best_iteration = 0;
  bool converged = false;
};

struct HmmOptions {
  double tol = 0.05;
  int max_iters = 50;
};

/// Standard-normal draw number `counter` of stream (seed, dim). Pure function.
double seed_normal(std::uint64_t seed, std::uint64_t dim, std::uint64_t counter) noexcept;

/// N x D matrix of seed_normal draws.
Matrix seed_sample(std::size_t n, std::size_t dims, std::uint64_t seed);

/// Moment-matching generator: alternates a per-column cubic transform with a
/// Cholesky correlation step until both error measures are within `tol` or
/// the iteration budget runs out, and returns the best iterate seen.
/// A FitFailure from the cubic step is rethrown naming the dimension.
RawSampleMatrix hmm_generate(const MomentTargets& targets, std::size_t n, std::uint64_t seed,
                             const HmmOptions& options = {});

nlohmann::json convergence_log_json(const RawSampleMatrix& sample);

}  // namespace hubplan::scengen
