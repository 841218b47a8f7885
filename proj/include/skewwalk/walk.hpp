#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skewwalk/laws.hpp"

namespace skewwalk {

// Sub-stream ids of a path seed. The xi/eta streams are fixed so that a
// recorded path can be reconstructed increment-by-increment from its seed.
enum : std::uint64_t {
  kStreamXi = 1,
  kStreamEta = 2,
  kStreamClock = 3,
};

struct PathSample {
  long long x0 = 0;
  std::uint64_t seed = 0;
  std::vector<long long> values;       // X(0..n)
  std::vector<std::uint64_t> zero_count;  // T(0..n)
};

// Walk perturbed at zero: steps by xi off 0, by eta from 0; T counts visits
// to 0 including time 0. The xi and eta draws come from independent
// sub-streams of `seed` in the exact order the recursion consumes them.
PathSample simulate_chain(const LatticeLaw& xi, const PerturbationLaw& eta, long long x0,
                          std::uint64_t n_steps, std::uint64_t seed);

struct FirstHit {
  std::uint64_t steps = 0;
  bool censored = false;
};

// First index with X(n) = 0 on a recorded path; censored if the path ends first.
FirstHit first_hit_zero(const PathSample& path);

// Same, but simulating the unperturbed walk from x0 on the fly (the chain
// coincides with the walk before the first visit to 0).
FirstHit first_hit_zero(const LatticeLaw& xi, long long x0, std::uint64_t step_cap,
                        std::uint64_t seed);

struct PoissonizedPath {
  double rate = 0.0;
  double scale = 1.0;             // a(v)
  std::vector<double> epochs;     // jump times, increasing
  std::vector<double> scaled_values;  // value on [epochs[i], epochs[i+1}) is scaled_values[i+1];
                                      // scaled_values[0] holds X(0)/a on [0, epochs[0})
  double value_at(double t) const;
  std::size_t events_before(double t) const;
};

// Continuous-time version of a recorded chain: values X(N(vt))/scale with N a
// rate-v Poisson clock drawn from clock_seed. If the clock needs more steps
// than the path holds, the chain is re-simulated to the needed length from
// its own seed (the draw streams make the prefix reproducible).
PoissonizedPath poissonize(const LatticeLaw& xi, const PerturbationLaw& eta,
                           const PathSample& path, double rate_v, double t_max,
                           std::uint64_t clock_seed, double scale_a);

struct ScaledMarginal {
  std::vector<double> samples;  // X_v(floor(v t))/a(v) per path, path-indexed
  double a_of_v = 1.0;
};

// Empirical law of X_v(floor(vt))/a(v) with X_v(0) = floor(x a(v)), one
// derived seed per path.
ScaledMarginal scaled_marginal(const LatticeStableLaw& xi, const PerturbationLaw& eta, double x,
                               double v, double t, std::size_t n_paths, std::uint64_t seed,
                               int workers = 1);

// Binary dump: "SKWK", version u32, n u64, x0 i64, seed u64, then n
// little-endian i64 values X(1..n). zero_count is rebuilt on read.
void write_path_dump(const PathSample& path, const std::string& file);
PathSample read_path_dump(const std::string& file);

// Chunked index-parallel loop; results must be written to disjoint slots so
// that reductions are reproducible regardless of worker count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace skewwalk
