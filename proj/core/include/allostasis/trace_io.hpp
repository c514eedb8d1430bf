#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "allostasis/agent.hpp"

namespace allostasis {

/// Column order of trace_<seed>.csv. Do not reorder.
inline constexpr std::string_view kTraceHeader =
    "t,energy,socialness,d_energy,cortisol,lr_effective,surprisal,surprisal_delta,"
    "q_hungry,q_playful,q_satisfied,qu_eat,qu_play,qu_explore,action,action_succeeded,"
    "food,friend,tummy,lonely,alive";

/// Reals use the shortest representation that round-trips.
std::string format_trace_row(const StepRecord& r);

/// Streams trace rows to disk, flushing after every row so a crashed run
/// leaves a readable prefix. Throws IoError.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);

  void write(const StepRecord& r);
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::filesystem::path trace_file_name(std::uint64_t seed);

}  // namespace allostasis
