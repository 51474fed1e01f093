#include "esn/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace esn {

Measure parse_measure(const std::string& name) {
    if (name == "c_in" || name == "cin") return Measure::kCIn;
    if (name == "c_out" || name == "cout") return Measure::kCOut;
    if (name == "c1") return Measure::kC1;
    if (name == "c2") return Measure::kC2;
    if (name == "c3") return Measure::kC3;
    throw std::invalid_argument("unknown centrality measure: " + name);
}

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::kCIn: return "c_in";
        case Measure::kCOut: return "c_out";
        case Measure::kC1: return "c1";
        case Measure::kC2: return "c2";
        case Measure::kC3: return "c3";
    }
    throw std::invalid_argument("unknown centrality measure id");
}

const std::vector<Measure>& all_measures() {
    static const std::vector<Measure> all = {Measure::kCIn, Measure::kCOut, Measure::kC1,
                                             Measure::kC2, Measure::kC3};
    return all;
}

SignedStrengths signed_strengths(const DenseMatrix& w) {
    if (!w.square()) throw std::invalid_argument("signed_strengths: matrix must be square");
    const std::size_t n = w.rows();
    SignedStrengths s;
    s.in_pos.assign(n, 0.0);
    s.in_neg.assign(n, 0.0);
    s.out_pos.assign(n, 0.0);
    s.out_neg.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = w(i, j);  // edge j → i
            if (v > 0.0) {
                s.in_pos[i] += v;
                s.out_pos[j] += v;
            } else if (v < 0.0) {
                s.in_neg[i] -= v;
                s.out_neg[j] -= v;
            }
        }
    }
    return s;
}

CentralityScores centrality(const DenseMatrix& w, Measure measure) {
    const SignedStrengths s = signed_strengths(w);
    const std::size_t n = s.size();
    CentralityScores out;
    out.measure = measure;
    out.scores = DenseVector(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ip = s.in_pos[i], in = s.in_neg[i];
        const double op = s.out_pos[i], on = s.out_neg[i];
        double score = 0.0;
        switch (measure) {
            case Measure::kCIn: score = ip + in; break;
            case Measure::kCOut: score = op + on; break;
            case Measure::kC1: {
                const double denom = ip + in;
                score = denom > 0.0 ? (ip - in) / denom : 0.0;
                break;
            }
            case Measure::kC2: {
                const double denom = ip + op + in + on;
                score = denom > 0.0 ? (ip + op - in - on) / denom : 0.0;
                break;
            }
            case Measure::kC3: score = ip + op + in + on; break;
        }
        out.scores[i] = score;
    }
    return out;
}

std::vector<std::size_t> rank_nodes(const CentralityScores& scores,
                                    const std::set<std::size_t>& exclude, bool by_magnitude) {
    const std::size_t n = scores.scores.len();
    for (std::size_t id : exclude)
        if (id >= n) throw std::invalid_argument("rank_nodes: excluded id out of range");

    std::vector<std::size_t> order;
    order.reserve(n - exclude.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!exclude.contains(i)) order.push_back(i);

    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = by_magnitude ? std::fabs(scores.scores[a]) : scores.scores[a];
        const double sb = by_magnitude ? std::fabs(scores.scores[b]) : scores.scores[b];
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return order;
}

void write_scores_csv(const std::vector<CentralityScores>& all, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_scores_csv: cannot open " + path);
    out << "node_id,measure,score\n";
    out.precision(17);
    for (const CentralityScores& cs : all)
        for (std::size_t i = 0; i < cs.scores.len(); ++i)
            out << i << "," << measure_name(cs.measure) << "," << cs.scores[i] << "\n";
    if (!out) throw std::runtime_error("write_scores_csv: write failed for " + path);
}

}  // namespace esn
