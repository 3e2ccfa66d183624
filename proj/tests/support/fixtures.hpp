#pragma once

#include <string>
#include <vector>

#include "pprtopk/graph.hpp"

namespace testsupport {

using namespace pprtopk;

constexpr double kFixtureDamping = 0.85;

inline Graph two_cycle() {
  return Graph::from_edges(2, {{0, 1}, {1, 0}});
}

// 10-node fixture used throughout: strongly connected, every PPR mass
// from seed 0 at c = 0.85 is >= 0.024, all masses distinct, and the
// end-point/complete-path variance ratio sits mid-range.
inline Graph fixture10() {
  return Graph::from_edges(
      10, {{0, 1}, {0, 2}, {0, 4}, {0, 6}, {1, 6}, {1, 7}, {2, 3}, {2, 4},
           {2, 6}, {3, 2}, {3, 5}, {3, 8}, {3, 9}, {4, 0}, {4, 1}, {5, 2},
           {5, 9}, {6, 2}, {6, 8}, {7, 1}, {7, 2}, {7, 3}, {7, 8}, {8, 0},
           {8, 6}, {8, 7}, {8, 9}, {9, 1}, {9, 5}, {9, 6}});
}

// Seed-0 masses at c = 0.85, confirmed by an independent dense solve.
inline const std::vector<double>& fixture10_pi() {
  static const std::vector<double> pi = {
      0.20715870443391748,  0.10686298433427938,  0.15012565433749533,
      0.056515726610921656, 0.086556826754497523, 0.024084575627599518,
      0.16442063188260037,  0.065788821405324174, 0.095868485003558157,
      0.042617589609806383};
  return pi;
}

// pi_j(j): each node's own mass when it seeds itself.
inline const std::vector<double>& fixture10_self() {
  static const std::vector<double> self = {
      0.20715870443391748, 0.21893662691868904, 0.27655486046093847,
      0.20482547207185925, 0.20720425267710255, 0.19505234343871486,
      0.28700541641721644, 0.21644377653068733, 0.2485935793008115,
      0.21234745732185581};
  return self;
}

// Descending node order of fixture10_pi.
inline const std::vector<NodeId>& fixture10_ranking() {
  static const std::vector<NodeId> order = {0, 6, 2, 1, 8, 4, 7, 3, 9, 5};
  return order;
}

inline std::vector<double> fixture10_pi_sorted() {
  std::vector<double> sorted;
  for (NodeId v : fixture10_ranking()) sorted.push_back(fixture10_pi()[v]);
  return sorted;
}

// Hub 0 with nine leaves; pi_1/pi_2 = (1+c)^-1 / (c (1+c)^-1 / 9) > 10
// at c = 0.85, which is what the adaptive-stopping checks need.
inline Graph star10() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId leaf = 1; leaf < 10; ++leaf) {
    edges.emplace_back(0, leaf);
    edges.emplace_back(leaf, 0);
  }
  return Graph::from_edges(10, edges);
}

// Two people, each mentioned on two hosts, each pair sharing a
// cross-host community of related pages; the communities are disjoint.
inline std::string barbell_corpus_jsonl() {
  return R"({"id": 0, "host": "a.example", "text": "Alice Rivera studies glacier ice cores in Norway.", "person": true, "outlinks": [4, 5]}
{"id": 1, "host": "b.example", "text": "Alice Rivera published new glacier core results.", "person": true, "outlinks": [4, 6]}
{"id": 2, "host": "c.example", "text": "Bob Okafor composes scores for silent films.", "person": true, "outlinks": [7, 8]}
{"id": 3, "host": "d.example", "text": "Bob Okafor conducted the festival orchestra.", "person": true, "outlinks": [7, 9]}
{"id": 4, "host": "e.example", "text": "Glacier monitoring station data archive.", "person": false, "outlinks": [5, 6]}
{"id": 5, "host": "f.example", "text": "Ice core laboratory methods overview.", "person": false, "outlinks": [4]}
{"id": 6, "host": "g.example", "text": "Norwegian climate research portal.", "person": false, "outlinks": [4]}
{"id": 7, "host": "h.example", "text": "Silent film restoration project.", "person": false, "outlinks": [8, 9]}
{"id": 8, "host": "i.example", "text": "Orchestra festival program listings.", "person": false, "outlinks": [7]}
{"id": 9, "host": "j.example", "text": "Film score composition workshop.", "person": false, "outlinks": [7]}
)";
}

}  // namespace testsupport
