#include "allostasis/trace_io.hpp"

#include <fmt/format.h>

#include "allostasis/error.hpp"

namespace allostasis {

std::string format_trace_row(const StepRecord& r) {
  const auto b = [](bool x) { return x ? 1 : 0; };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.t,
                     r.energy, r.socialness, r.d_energy, r.cortisol, r.lr_effective, r.surprisal,
                     r.surprisal_delta, r.q_s[0], r.q_s[1], r.q_s[2], r.q_u[0], r.q_u[1], r.q_u[2],
                     to_string(r.action), b(r.action_succeeded), r.obs[Modality::Food],
                     r.obs[Modality::Friend], r.obs[Modality::Tummy], r.obs[Modality::Lonely],
                     b(r.alive));
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out_ << kTraceHeader << '\n' << std::flush;
}

void TraceWriter::write(const StepRecord& r) {
  out_ << format_trace_row(r) << '\n' << std::flush;
  if (!out_) throw Error(ErrorCode::IoError, "write failed for " + path_.string());
}

std::filesystem::path trace_file_name(std::uint64_t seed) {
  return fmt::format("trace_{}.csv", seed);
}

}  // namespace allostasis
