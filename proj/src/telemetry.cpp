#include "wingpitch/telemetry.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wingpitch {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_field(const std::string& field, const std::filesystem::path& path) {
  try {
    return std::stod(field);
  } catch (const std::exception&) {
    throw std::runtime_error("telemetry: bad numeric field '" + field + "' in " +
                             path.string());
  }
}

}  // namespace

std::string format_csv_row(const StepRecord& r) {
  std::string row;
  row.reserve(320);
  const double cols[] = {r.t_s,           r.theta_ref_deg,  r.theta_meas_deg,
                         r.error.e,       r.error.e_v,      r.error.e_s,
                         r.state.theta_v_dps, r.state.theta_a_dps2,
                         r.control.u_e,   r.control.u_x,    r.control.u_f,
                         r.forces.fore,   r.forces.aft,     r.value_tracking,
                         r.value_stabilizing};
  for (std::size_t i = 0; i < std::size(cols); ++i) {
    if (i) row += ',';
    row += fmt(cols[i]);
  }
  return row;
}

void export_telemetry(std::span<const StepRecord> records,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("telemetry: cannot open " + path.string() +
                             " for writing");
  }
  out << kTelemetryHeader << '\n';
  for (const StepRecord& rec : records) {
    out << format_csv_row(rec) << '\n';
  }
  if (!out) {
    throw std::runtime_error("telemetry: write failed for " + path.string());
  }
}

std::vector<StepRecord> parse_telemetry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("telemetry: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("telemetry: empty file " + path.string());
  }
  if (line != kTelemetryHeader) {
    throw std::runtime_error("telemetry: unexpected header in " + path.string());
  }

  std::vector<StepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    double v[15];
    for (int i = 0; i < 15; ++i) {
      if (!std::getline(ss, field, ',')) {
        throw std::runtime_error("telemetry: short row in " + path.string());
      }
      v[i] = parse_field(field, path);
    }
    StepRecord r;
    r.t_s = v[0];
    r.theta_ref_deg = v[1];
    r.theta_meas_deg = v[2];
    r.error.e = v[3];
    r.error.e_v = v[4];
    r.error.e_s = v[5];
    r.state.theta_deg = v[2];
    r.state.theta_v_dps = v[6];
    r.state.theta_a_dps2 = v[7];
    r.control.u_e = v[8];
    r.control.u_x = v[9];
    r.control.u_f = v[10];
    r.forces.fore = v[11];
    r.forces.aft = v[12];
    r.value_tracking = v[13];
    r.value_stabilizing = v[14];
    records.push_back(r);
  }
  return records;
}

TelemetrySink::TelemetrySink(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("TelemetrySink: capacity must be positive");
  }
}

void TelemetrySink::push(StepRecord rec) {
  if (records_.size() == capacity_) {
    records_.pop_front();
    ++dropped_;
  }
  records_.push_back(std::move(rec));
}

std::vector<StepRecord> TelemetrySink::take() {
  std::vector<StepRecord> out(records_.begin(), records_.end());
  records_.clear();
  return out;
}

}  // namespace wingpitch
