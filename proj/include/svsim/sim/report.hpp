#pragma once

#include <span>
#include <string>

#include "svsim/sim/run.hpp"

namespace svsim::sim {

// Accuracy as a percentage with one decimal, e.g. 55 of 97 -> "56.7".
// total = 0 reports "100.0" (the no-incident convention).
std::string format_accuracy_percent(int detected, int total);

// Writes the run artifacts into out_dir (created if missing):
//   summary.csv                scenario,detected,total,accuracy (percent)
//   metrics_<name>.csv         per-frame FrameMetrics
//   alerts_<name>.csv          alert log
//   interest_<name>.txt        post-trip interest list
//   manifest.json              config echo, per-scenario descriptors, bounds
// Contents never embed out_dir, so two runs into different directories
// produce byte-identical files. Unwritable paths raise an I/O error naming
// the file.
void emit_report(std::span<const RunResult> runs, const SimConfig& cfg,
                 const std::string& out_dir);

// Human-readable digest of a previously written run directory: per-scenario
// detection rows plus per-phase mean transfer rates from the metrics CSVs.
std::string summarize_run_dir(const std::string& run_dir);

}  // namespace svsim::sim
