#pragma once

#include "hyperschemes/graph.hpp"
#include "hyperschemes/group.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace hyperschemes;

struct Named {
  std::string name;
  Scheme scheme;
};

inline Scheme cyclic_scheme(int n) { return scheme_from_group_quotient(cyclic_group(n), {0}); }

/// Stabilizer of the last symbol in S_n, as element indices.
inline std::vector<int> point_stabilizer(const FiniteGroup& g, int n) {
  std::vector<int> h;
  for (int a = 0; a < g.order(); ++a) {
    const auto& l = g.labels()[a];
    // labels read "[p0,p1,...]"; the image of n-1 is the last entry
    if (l[l.size() - 2] - '0' == n - 1) h.push_back(a);
  }
  return h;
}

/// The transposition (0 1) together with the identity.
inline std::vector<int> swap01(const FiniteGroup& g, int n) {
  std::string id = "[", sw = "[";
  for (int i = 0; i < n; ++i) {
    id += std::to_string(i) + (i + 1 < n ? "," : "]");
    const int v = i == 0 ? 1 : (i == 1 ? 0 : i);
    sw += std::to_string(v) + (i + 1 < n ? "," : "]");
  }
  return {g.index_of(id), g.index_of(sw)};
}

/// Every fixture named in the acceptance list. All are commutative.
inline std::vector<Named> commutative_fixtures() {
  std::vector<Named> out;
  for (int n = 1; n <= 12; ++n) out.push_back({"Z" + std::to_string(n), cyclic_scheme(n)});
  out.push_back({"pentagon", scheme_from_distance_regular_graph(cycle_graph(5))});
  out.push_back({"K4", scheme_from_distance_regular_graph(complete_graph(4))});
  out.push_back({"Petersen", scheme_from_distance_regular_graph(petersen_graph())});
  const auto s3 = symmetric_group(3);
  out.push_back({"S3/H", scheme_from_group_quotient(s3, swap01(s3, 3))});
  const auto s4 = symmetric_group(4);
  out.push_back({"S4/S3", scheme_from_group_quotient(s4, point_stabilizer(s4, 4))});
  return out;
}

struct GroupPair {
  std::string name;
  FiniteGroup group;
  std::vector<int> subgroup;
};

inline std::vector<GroupPair> group_pairs() {
  std::vector<GroupPair> out;
  for (int n : {1, 2, 3, 4, 6}) out.push_back({"Z" + std::to_string(n), cyclic_group(n), {0}});
  const auto s3 = symmetric_group(3);
  out.push_back({"S3/{e}", s3, {s3.identity()}});
  out.push_back({"S3/H", s3, swap01(s3, 3)});
  out.push_back({"S3/S3", s3, [&] {
                   std::vector<int> all(s3.order());
                   for (int a = 0; a < s3.order(); ++a) all[a] = a;
                   return all;
                 }()});
  const auto s4 = symmetric_group(4);
  out.push_back({"S4/S3", s4, point_stabilizer(s4, 4)});
  out.push_back({"S4/<(01)>", s4, swap01(s4, 4)});
  return out;
}

}  // namespace fixtures
