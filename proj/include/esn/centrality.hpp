#pragma once

#include <set>
#include <string>
#include <vector>

#include "esn/linalg.hpp"

namespace esn {

/// The five node-importance measures. C_in/C_out are total incoming and
/// outgoing strengths; C1/C2 are signed balance ratios in [−1, 1]; C3 is
/// the total connectivity magnitude.
enum class Measure { kCIn, kCOut, kC1, kC2, kC3 };

Measure parse_measure(const std::string& name);
std::string measure_name(Measure m);
const std::vector<Measure>& all_measures();

/// Per-node signed strength decomposition of W read as a weighted
/// directed graph. Entry (r, c) is the edge c → r, matching the state
/// update W·x where column-indexed sources feed row-indexed targets:
/// incoming strengths of node i read row i, outgoing strengths read
/// column i. Negative weights are accumulated as absolute values.
/// Self-loops count toward both the in- and out-strength of their node.
struct SignedStrengths {
    std::vector<double> in_pos;
    std::vector<double> in_neg;
    std::vector<double> out_pos;
    std::vector<double> out_neg;

    std::size_t size() const { return in_pos.size(); }
};

struct CentralityScores {
    Measure measure = Measure::kC2;
    DenseVector scores;
};

SignedStrengths signed_strengths(const DenseMatrix& w);

/// Scores every node under one measure:
///   C_in  = |I⁺| + |I⁻|          C_out = |O⁺| + |O⁻|
///   C1    = (|I⁺| − |I⁻|) / (|I⁺| + |I⁻|)
///   C2    = (|I⁺| + |O⁺| − |I⁻| − |O⁻|) / (|I⁺| + |O⁺| + |I⁻| + |O⁻|)
///   C3    = |I⁺| + |O⁺| + |I⁻| + |O⁻|
/// Isolated nodes would divide 0/0 in C1/C2; they score 0 (neutral
/// balance) and, having C3 = 0, rank first for removal under every
/// magnitude measure.
CentralityScores centrality(const DenseMatrix& w, Measure measure);

/// Non-excluded nodes sorted ascending by score (lowest = first pruning
/// candidate); ties break by ascending node index. With by_magnitude,
/// sorts by |score| instead — a node with C1 = −1 is strongly inhibitory,
/// arguably not unimportant; the default follows the raw-score reading.
std::vector<std::size_t> rank_nodes(const CentralityScores& scores,
                                    const std::set<std::size_t>& exclude = {},
                                    bool by_magnitude = false);

/// Writes scores as CSV rows: node_id, measure, score.
void write_scores_csv(const std::vector<CentralityScores>& all, const std::string& path);

}  // namespace esn
