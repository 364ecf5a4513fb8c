// The pentagon as an association scheme: intersection numbers, characters
// and the dual product formula.

#include "hyperschemes/graph.hpp"
#include "hyperschemes/harmonic.hpp"

#include <cstdio>

using namespace hyperschemes;

int main() {
  const Scheme s = scheme_from_distance_regular_graph(cycle_graph(5));
  const std::size_t d = s.num_classes();

  std::printf("valencies:");
  for (auto w : s.valencies()) std::printf(" %lld", static_cast<long long>(w));
  std::printf("\n\np[1][j][k]:\n");
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) std::printf(" %lld", static_cast<long long>(s.p(1, j, k)));
    std::printf("\n");
  }

  const auto h = hypergroup_from_scheme(s);
  const auto tbl = character_table(h);
  std::printf("\ncharacters (plancherel weight, values):\n");
  for (std::size_t a = 0; a < tbl.size(); ++a) {
    std::printf("  %s  %.6f ", character_label(a).c_str(), tbl.plancherel[a]);
    for (const auto& v : tbl[a]) std::printf(" %+.6f", v.real());
    std::printf("\n");
  }

  std::printf("\nchi1 * chi2 expanded in characters:\n");
  const auto m = dual_convolution(tbl, 1, 2);
  for (std::size_t c = 0; c < tbl.size(); ++c) std::printf("  %s: %.6f\n", character_label(c).c_str(), m.weights[c]);
  return 0;
}
