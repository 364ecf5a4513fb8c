// Minimal eigenvalue of the kernel P_{d(v,w)}(x) on balls of Γ(3,3) as x
// crosses s0 = -1. Usage: sample_gab [radius]

#include "hyperschemes/families.hpp"

#include <cstdio>
#include <cstdlib>

using namespace hyperschemes;

int main(int argc, char** argv) {
  const int radius = argc > 1 ? std::atoi(argv[1]) : 3;
  const auto f = gab_family(3, 3);
  std::printf("s0 = %g, s1 = %g\n", f.s0(), f.s1());
  std::printf("%8s %16s\n", "x", "min eigenvalue");
  for (int i = 0; i <= 16; ++i) {
    const double x = -1.4 + 0.05 * i;
    const auto k = gab_kernel_psd(f, x, radius);
    std::printf("%8.3f %16.3e%s\n", x, k.min_eigenvalue, k.positive ? "" : "  not positive definite");
  }
  return 0;
}
