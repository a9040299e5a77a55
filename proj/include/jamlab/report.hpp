#pragma once

#include "jamlab/experiment.hpp"

#include <ostream>
#include <string>

namespace jamlab {

// RFC 4180 CSV: header row, fixed column order, "%.12g" floats. Output is a
// pure function of the result, so equal runs produce byte-identical files.
void write_csv(std::ostream& out, const RunResult& result);

// Companion manifest: tool version, run options, and the resolved experiment
// document, everything needed to reproduce the CSV bit for bit. No
// timestamps or host details by design.
void write_manifest(std::ostream& out, const ExperimentSpec& spec, const RunOptions& opts,
                    const RunResult& result);

// Writes <kind>.csv and <kind>.manifest.ini into out_dir (created if
// missing); returns the CSV path.
std::string write_run_files(const std::string& out_dir, const ExperimentSpec& spec,
                            const RunOptions& opts, const RunResult& result);

} // namespace jamlab
