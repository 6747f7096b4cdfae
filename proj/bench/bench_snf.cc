// Benchmark: serial vs OpenMP Smith normal form on deterministic random
// matrices; verifies that both paths produce identical divisors.

#include <chrono>
#include <cstdio>
#include <random>

#include "torsal/exact.hpp"

using namespace torsal;

int main() {
  std::mt19937 rng(2024);
  std::printf("%8s %8s %12s %12s %8s\n", "rows", "cols", "serial(s)", "openmp(s)",
              "speedup");
  // sparse {-1,0,1} matrices, the shape of nerve boundary matrices; larger
  // sizes are dominated by entry growth, not by the elimination kernel
  for (int size : {80, 120, 160, 200}) {
    IntMat M(size, size + size / 3);
    for (int i = 0; i < M.nr; ++i)
      for (int j = 0; j < M.nc; ++j)
        M.at(i, j) = rng() % 10 == 0 ? Int((int)(rng() % 2) * 2 - 1) : Int(0);
    auto t0 = std::chrono::steady_clock::now();
    auto a = smith_normal_form(M, false, false, false);
    auto t1 = std::chrono::steady_clock::now();
    auto b = smith_normal_form(M, false, false, true);
    auto t2 = std::chrono::steady_clock::now();
    if (!(a.rank == b.rank && a.divisors == b.divisors)) {
      std::printf("MISMATCH at size %d\n", size);
      return 1;
    }
    double ts = std::chrono::duration<double>(t1 - t0).count();
    double tp = std::chrono::duration<double>(t2 - t1).count();
    std::printf("%8d %8d %12.3f %12.3f %8.2f\n", M.nr, M.nc, ts, tp, ts / tp);
  }
  return 0;
}
