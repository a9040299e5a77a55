#pragma once

#include "jamlab/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jamlab {

struct RunOptions {
    int threads = 1;
    // Divides trial and draw counts for smoke runs; 1 = full budget.
    long long fast = 1;
};

struct CurvePoint {
    double x = 0.0;
    double metric = 0.0;
    double ci_halfwidth = 0.0;
    long long trials_effective = 0;
    std::vector<std::pair<std::string, double>> extra;
};

struct SpectrumRow {
    int n = 0;
    double magnitude = 0.0;  // |R~[n]| of the composed frame
    double jam_re = 0.0;     // S~[n], the jammer's dechirped image
    double jam_im = 0.0;
};

struct RunResult {
    ExperimentKind kind = ExperimentKind::ser_vs_sjr;
    std::string x_name;
    std::string metric_name;
    std::vector<std::string> extra_names;
    std::vector<CurvePoint> points;
    bool is_spectrum = false;
    std::vector<SpectrumRow> spectrum;
    std::vector<std::pair<std::string, double>> summary;
};

// Runs the experiment described by the spec. Deterministic: identical spec,
// seed, and fast divisor give identical results for any thread count (each
// trial owns an RNG substream keyed by point and trial index, and all
// accumulators are integer counts).
RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& opts);

} // namespace jamlab
