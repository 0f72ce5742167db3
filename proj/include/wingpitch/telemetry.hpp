#pragma once

#include "wingpitch/controller.hpp"

#include <deque>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace wingpitch {

inline constexpr const char* kTelemetryHeader =
    "t,theta_ref,theta_meas,e,e_v,e_s,theta_v,theta_a,u_e,u_x,u_f,"
    "f_fore,f_aft,V_E,V_X";

// One CSV row per control step, full-precision decimal, fixed column order.
// I/O failures are reported with the path in the message.
void export_telemetry(std::span<const StepRecord> records,
                      const std::filesystem::path& path);

// Reads back the columns the CSV carries; fields not present in the file
// (previous-step error slots, fault flag) are left defaulted.
std::vector<StepRecord> parse_telemetry(const std::filesystem::path& path);

std::string format_csv_row(const StepRecord& rec);

/// Bounded one-way record channel between the control loop and its consumer:
/// the producer never blocks, the oldest record is dropped on overflow.
class TelemetrySink {
 public:
  explicit TelemetrySink(std::size_t capacity);

  void push(StepRecord rec);

  const std::deque<StepRecord>& records() const { return records_; }
  std::size_t dropped() const { return dropped_; }
  std::vector<StepRecord> take();

 private:
  std::size_t capacity_;
  std::deque<StepRecord> records_;
  std::size_t dropped_ = 0;
};

}  // namespace wingpitch
