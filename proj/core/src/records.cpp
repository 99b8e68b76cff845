#include <cmath>

#include <nlohmann/json.hpp>

#include "vizing/msva.hpp"

namespace vizing {

RecordSummary summarize_records(const std::vector<RunRecord>& rs, int64_t m,
                                int delta, int l) {
    RecordSummary s;
    s.runs = static_cast<int64_t>(rs.size());
    int max_t = 0;
    for (const RunRecord& r : rs) {
        s.iteration_histogram[r.iterations] += 1;
        max_t = std::max(max_t, r.iterations);
        int64_t prefix = 0;
        bool ok = true;
        for (int d : r.d) {
            s.d_histogram[d] += 1;
            if (d == 1) {
                s.append_steps += 1;
            } else if (d <= 0) {
                s.backtracks += 1;
                s.max_backtrack_depth = std::max(s.max_backtrack_depth, -d);
            } else {
                ok = false;  // d values other than 1 must be <= 0
            }
            prefix += d;
            if (prefix < 0) ok = false;
        }
        if (!ok) s.invalid_records += 1;
    }

    s.empirical_tail.assign(static_cast<size_t>(max_t) + 2, 0.0);
    if (!rs.empty()) {
        for (const RunRecord& r : rs)
            for (int t = 0; t <= r.iterations; ++t) s.empirical_tail[t] += 1.0;
        for (double& v : s.empirical_tail) v /= static_cast<double>(rs.size());
    }

    // Closed-form decay bound; only meaningful once the base drops below 1,
    // which needs a very large step length.
    double base = 1200.0 * std::pow(static_cast<double>(delta), 15) /
                  static_cast<double>(l);
    if (base < 1.0 && m > 0) {
        s.theoretical_tail.resize(s.empirical_tail.size());
        for (size_t t = 0; t < s.theoretical_tail.size(); ++t)
            s.theoretical_tail[t] =
                4.0 * static_cast<double>(m) *
                std::pow(base, static_cast<double>(t) / 2.0);
    }
    return s;
}

std::string record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["edge"] = r.start_edge;
    j["iterations"] = r.iterations;
    j["d"] = r.d;
    j["outcome"] =
        r.outcome == MsvaOutcome::Success ? "success" : "cap_hit";
    return j.dump();
}

}  // namespace vizing
