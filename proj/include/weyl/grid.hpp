#pragma once
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace weyl {

struct GridSpec {
  double rho0, rho1, v0, v1;
  int nr = 200, nv = 200;

  double drho() const { return nr > 1 ? (rho1 - rho0) / (nr - 1) : 0.0; }
  double dv() const { return nv > 1 ? (v1 - v0) / (nv - 1) : 0.0; }
  double rho(int i) const { return rho0 + i * drho(); }
  double v(int j) const { return v0 + j * dv(); }
};

struct Field2D {
  GridSpec grid;
  std::vector<double> data;

  explicit Field2D(GridSpec g = {}) : grid(g), data(size_t(g.nr) * g.nv, 0.0) {}
  double& at(int i, int j) { return data[size_t(j) * grid.nr + i]; }
  double at(int i, int j) const { return data[size_t(j) * grid.nr + i]; }
};

// Worker count: min(hardware, WEYL_FACTOR_THREADS if set).
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("WEYL_FACTOR_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

inline void parallel_for(int n, const std::function<void(int)>& body) {
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace weyl
