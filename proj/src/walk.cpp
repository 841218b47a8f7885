#include "skewwalk/walk.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace skewwalk {

PathSample simulate_chain(const LatticeLaw& xi, const PerturbationLaw& eta, long long x0,
                          std::uint64_t n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw std::invalid_argument("simulate_chain requires n_steps >= 1");
  Rng xi_stream(seed, kStreamXi);
  Rng eta_stream(seed, kStreamEta);
  PathSample path;
  path.x0 = x0;
  path.seed = seed;
  path.values.reserve(n_steps + 1);
  path.zero_count.reserve(n_steps + 1);
  long long x = x0;
  std::uint64_t zeros = x == 0 ? 1 : 0;
  path.values.push_back(x);
  path.zero_count.push_back(zeros);
  for (std::uint64_t n = 0; n < n_steps; ++n) {
    x += (x == 0) ? eta.sample_one(eta_stream) : xi.sample_one(xi_stream);
    if (x == 0) ++zeros;
    path.values.push_back(x);
    path.zero_count.push_back(zeros);
  }
  return path;
}

FirstHit first_hit_zero(const PathSample& path) {
  for (std::size_t n = 0; n < path.values.size(); ++n)
    if (path.values[n] == 0) return {static_cast<std::uint64_t>(n), false};
  return {static_cast<std::uint64_t>(path.values.size() - 1), true};
}

FirstHit first_hit_zero(const LatticeLaw& xi, long long x0, std::uint64_t step_cap,
                        std::uint64_t seed) {
  if (x0 == 0) return {0, false};
  Rng xi_stream(seed, kStreamXi);
  long long x = x0;
  for (std::uint64_t n = 1; n <= step_cap; ++n) {
    x += xi.sample_one(xi_stream);
    if (x == 0) return {n, false};
  }
  return {step_cap, true};
}

double PoissonizedPath::value_at(double t) const {
  return scaled_values[events_before(t)];
}

std::size_t PoissonizedPath::events_before(double t) const {
  const auto it = std::upper_bound(epochs.begin(), epochs.end(), t);
  return static_cast<std::size_t>(it - epochs.begin());
}

PoissonizedPath poissonize(const LatticeLaw& xi, const PerturbationLaw& eta,
                           const PathSample& path, double rate_v, double t_max,
                           std::uint64_t clock_seed, double scale_a) {
  if (!(rate_v > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("poissonize requires positive rate and horizon");
  Rng clock(clock_seed, kStreamClock);
  PoissonizedPath out;
  out.rate = rate_v;
  out.scale = scale_a;
  double t = 0.0;
  for (;;) {
    t += clock.exponential(rate_v);
    if (t > t_max) break;
    out.epochs.push_back(t);
  }
  const PathSample* src = &path;
  PathSample extended;
  if (out.epochs.size() + 1 > path.values.size()) {
    extended = simulate_chain(xi, eta, path.x0, out.epochs.size(), path.seed);
    src = &extended;
  }
  out.scaled_values.resize(out.epochs.size() + 1);
  for (std::size_t i = 0; i <= out.epochs.size(); ++i)
    out.scaled_values[i] = static_cast<double>(src->values[i]) / scale_a;
  return out;
}

ScaledMarginal scaled_marginal(const LatticeStableLaw& xi, const PerturbationLaw& eta, double x,
                               double v, double t, std::size_t n_paths, std::uint64_t seed,
                               int workers) {
  if (!(v >= 1.0) || t < 0.0)
    throw std::invalid_argument("scaled_marginal requires v >= 1 and t >= 0");
  const double a = xi.norming_a(v);
  const long long x0 = static_cast<long long>(std::floor(x * a));
  const std::uint64_t steps = static_cast<std::uint64_t>(std::floor(v * t));
  ScaledMarginal out;
  out.a_of_v = a;
  out.samples.resize(n_paths);
  if (steps == 0) {
    std::fill(out.samples.begin(), out.samples.end(), static_cast<double>(x0) / a);
    return out;
  }
  parallel_for(n_paths, workers, [&](std::size_t i) {
    const PathSample p = simulate_chain(xi, eta, x0, steps, derive_seed(seed, i));
    out.samples[i] = static_cast<double>(p.values.back()) / a;
  });
  return out;
}

namespace {

void put_u32(std::string& buf, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
void put_u64(std::string& buf, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t x = 0;
  for (int i = 3; i >= 0; --i) x = (x << 8) | p[i];
  return x;
}
std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t x = 0;
  for (int i = 7; i >= 0; --i) x = (x << 8) | p[i];
  return x;
}

}  // namespace

void write_path_dump(const PathSample& path, const std::string& file) {
  std::string buf;
  const std::uint64_t n = path.values.size() - 1;
  buf.reserve(4 + 4 + 8 + 8 + 8 + 8 * n);
  buf.append("SKWK");
  put_u32(buf, 1);
  put_u64(buf, n);
  put_u64(buf, static_cast<std::uint64_t>(path.x0));
  put_u64(buf, path.seed);
  for (std::uint64_t i = 1; i <= n; ++i)
    put_u64(buf, static_cast<std::uint64_t>(path.values[i]));
  std::FILE* fp = std::fopen(file.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open for write: " + file);
  const std::size_t written = std::fwrite(buf.data(), 1, buf.size(), fp);
  std::fclose(fp);
  if (written != buf.size()) throw std::runtime_error("short write: " + file);
}

PathSample read_path_dump(const std::string& file) {
  std::FILE* fp = std::fopen(file.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open for read: " + file);
  std::string buf;
  char chunk[65536];
  std::size_t got;
  while ((got = std::fread(chunk, 1, sizeof chunk, fp)) > 0) buf.append(chunk, got);
  std::fclose(fp);
  if (buf.size() < 32 || buf.compare(0, 4, "SKWK") != 0)
    throw std::runtime_error("not a path dump: " + file);
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  const std::uint32_t version = get_u32(p + 4);
  if (version != 1) throw std::runtime_error("unsupported path dump version");
  const std::uint64_t n = get_u64(p + 8);
  if (buf.size() != 32 + 8 * n) throw std::runtime_error("truncated path dump: " + file);
  PathSample path;
  path.x0 = static_cast<long long>(get_u64(p + 16));
  path.seed = get_u64(p + 24);
  path.values.resize(n + 1);
  path.zero_count.resize(n + 1);
  path.values[0] = path.x0;
  std::uint64_t zeros = path.x0 == 0 ? 1 : 0;
  path.zero_count[0] = zeros;
  for (std::uint64_t i = 1; i <= n; ++i) {
    path.values[i] = static_cast<long long>(get_u64(p + 32 + 8 * (i - 1)));
    if (path.values[i] == 0) ++zeros;
    path.zero_count[i] = zeros;
  }
  return path;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += nw) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace skewwalk
