#include "jamlab/report.hpp"

#include "jamlab/version.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace jamlab {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Numeric and identifier columns never need quoting; applied anyway so the
// writer stays correct if a label ever carries a delimiter.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += "\"";
    return q;
}

} // namespace

void write_csv(std::ostream& out, const RunResult& result) {
    if (result.is_spectrum) {
        out << "n,magnitude,jam_re,jam_im\n";
        for (const SpectrumRow& r : result.spectrum)
            out << r.n << "," << fmt(r.magnitude) << "," << fmt(r.jam_re) << ","
                << fmt(r.jam_im) << "\n";
        return;
    }
    out << csv_field(result.x_name) << "," << csv_field(result.metric_name)
        << ",ci_halfwidth,trials_effective";
    for (const std::string& name : result.extra_names) out << "," << csv_field(name);
    out << "\n";
    for (const CurvePoint& p : result.points) {
        out << fmt(p.x) << "," << fmt(p.metric) << "," << fmt(p.ci_halfwidth) << ","
            << p.trials_effective;
        for (const auto& kv : p.extra) out << "," << fmt(kv.second);
        out << "\n";
    }
}

void write_manifest(std::ostream& out, const ExperimentSpec& spec, const RunOptions& opts,
                    const RunResult& result) {
    out << "[run]\n";
    out << "tool = jamlab\n";
    out << "version = " << kVersion << "\n";
    out << "seed = " << spec.seed << "\n";
    out << "fast = " << opts.fast << "\n";
    out << "threads = " << opts.threads << "\n\n";
    out << dump_experiment(spec);
    if (!result.summary.empty()) {
        out << "\n[summary]\n";
        for (const auto& kv : result.summary) out << kv.first << " = " << fmt(kv.second) << "\n";
    }
}

std::string write_run_files(const std::string& out_dir, const ExperimentSpec& spec,
                            const RunOptions& opts, const RunResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string base = (fs::path(out_dir) / kind_name(spec.kind)).string();

    std::ofstream csv(base + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + base + ".csv");
    write_csv(csv, result);
    csv.close();
    if (!csv) throw std::runtime_error("failed writing " + base + ".csv");

    std::ofstream man(base + ".manifest.ini", std::ios::binary);
    if (!man) throw std::runtime_error("cannot write " + base + ".manifest.ini");
    write_manifest(man, spec, opts, result);
    man.close();
    if (!man) throw std::runtime_error("failed writing " + base + ".manifest.ini");
    return base + ".csv";
}

} // namespace jamlab
