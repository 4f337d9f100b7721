#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eval/amoc.hpp"
#include "io/runconfig.hpp"
#include "io/stream.hpp"
#include "sim/scenario.hpp"

namespace bnsurv::io {

// Replays a case stream hour by hour: arrivals move people between classes,
// calendar midnights age the open cases, and a posterior row is emitted at
// each cadence step. Fully deterministic; all time comes from the stream and
// the configured window. Writes the trace CSV when trace_path is nonempty.
std::vector<TraceRow> run_monitor(const RunConfig& config, const std::string& stream_path,
                                  const std::string& trace_path,
                                  std::function<void(const std::string&)> warn = {});

// Background plus one injected outbreak, written to out_path with the
// scenario saved alongside as out_path + ".scenario". An empty scenario_path
// samples one (weather table required). A nonnegative amount replaces the
// scenario's amount; pass a negative amount to keep it.
void run_simulate(const RunConfig& config, const std::string& scenario_path, double amount,
                  const std::string& out_path);

// Batch form: count scenarios with pairwise-distinct release zips, streams
// written under out_dir as stream_000.cases etc.
std::vector<std::string> run_simulate_batch(const RunConfig& config, int count, double amount,
                                            const std::string& out_dir);

// Reads traces, pairs each with its release time, and writes the curve CSV.
// Release times come from the matching .scenario files when times is empty.
std::vector<eval::AmocPoint> run_amoc(const std::vector<std::string>& trace_paths,
                                      const std::vector<UtcTime>& times,
                                      const std::string& out_path);

}  // namespace bnsurv::io
