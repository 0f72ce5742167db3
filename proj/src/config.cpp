#include "wingpitch/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wingpitch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& origin) {
  throw std::runtime_error("config " + origin + ": bad value '" + value +
                           "' for key '" + key + "'");
}

ControllerMode parse_mode(const std::string& text, const std::string& origin) {
  if (text == "learning") return ControllerMode::learning;
  if (text == "actor-frozen") return ControllerMode::actor_only_frozen;
  if (text == "frozen") return ControllerMode::fully_frozen;
  throw std::runtime_error("config " + origin + ": unknown mode '" + text +
                           "' (expected learning|actor-frozen|frozen)");
}

DisturbanceWaveform parse_waveform(const std::string& text,
                                   const std::string& origin) {
  if (text == "none") return DisturbanceWaveform::none;
  if (text == "pulse") return DisturbanceWaveform::pulse;
  if (text == "random_jerk") return DisturbanceWaveform::random_jerk;
  throw std::runtime_error("config " + origin + ": unknown waveform '" + text +
                           "' (expected none|pulse|random_jerk)");
}

ReferenceKind parse_reference_kind(const std::string& text,
                                   const std::string& origin) {
  if (text == "sinusoid") return ReferenceKind::sinusoid;
  if (text == "step") return ReferenceKind::step;
  if (text == "constant") return ReferenceKind::constant;
  throw std::runtime_error("config " + origin + ": unknown reference kind '" +
                           text + "' (expected sinusoid|step|constant)");
}

const char* waveform_name(DisturbanceWaveform w) {
  switch (w) {
    case DisturbanceWaveform::none: return "none";
    case DisturbanceWaveform::pulse: return "pulse";
    case DisturbanceWaveform::random_jerk: return "random_jerk";
  }
  return "?";
}

const char* reference_kind_name(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::sinusoid: return "sinusoid";
    case ReferenceKind::step: return "step";
    case ReferenceKind::constant: return "constant";
  }
  return "?";
}

std::string join(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v(i);
  }
  return os.str();
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text,
                                          const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config " + origin + ": line " +
                               std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config " + origin + ": empty key on line " +
                               std::to_string(line_no));
    }
    if (cfg.values_.count(key)) {
      throw std::runtime_error("config " + origin + ": duplicate key '" + key +
                               "'");
    }
    cfg.values_[key] = value;
    cfg.consumed_[key] = false;
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) != 0;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_[key] = true;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) bad_value(key, it->second, origin_);
    return v;
  } catch (const std::invalid_argument&) {
    bad_value(key, it->second, origin_);
  } catch (const std::out_of_range&) {
    bad_value(key, it->second, origin_);
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  if (std::abs(v - std::round(v)) > 1e-9) {
    bad_value(key, values_.at(key), origin_);
  }
  return static_cast<int>(std::llround(v));
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_[key] = true;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) bad_value(key, it->second, origin_);
    return v;
  } catch (const std::exception&) {
    bad_value(key, it->second, origin_);
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_[key] = true;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  bad_value(key, it->second, origin_);
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       std::string fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_[key] = true;
  return it->second;
}

std::vector<double> KeyValueConfig::get_vector(
    const std::string& key, std::vector<double> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  consumed_[key] = true;
  std::vector<double> out;
  std::string cleaned = it->second;
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::istringstream ss(cleaned);
  double v = 0.0;
  while (ss >> v) out.push_back(v);
  if (!ss.eof() || out.empty()) bad_value(key, it->second, origin_);
  return out;
}

std::vector<std::string> KeyValueConfig::unconsumed_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, used] : consumed_) {
    if (!used) out.push_back(key);
  }
  return out;
}

ScenarioSpec apply_config(const KeyValueConfig& config, ScenarioSpec base) {
  ScenarioSpec s = std::move(base);

  s.episode_s = config.get_double("episode_s", s.episode_s);
  s.warmup_s = config.get_double("warmup_s", s.warmup_s);
  s.seed = config.get_u64("seed", s.seed);
  s.physics_dt_s = config.get_double("physics_dt_s", s.physics_dt_s);
  s.snapshot_path = config.get_string("snapshot", s.snapshot_path);
  s.initial_theta_deg = config.get_double("initial_theta_deg", s.initial_theta_deg);
  s.initial_rate_dps = config.get_double("initial_rate_dps", s.initial_rate_dps);
  if (config.has("mode")) {
    s.mode_schedule = {
        {0.0, parse_mode(config.get_string("mode", ""), config.origin())}};
  }

  s.reference.amplitude_deg =
      config.get_double("reference.amplitude_deg", s.reference.amplitude_deg);
  s.reference.angular_rate_rad_s = config.get_double(
      "reference.angular_rate_rad_s", s.reference.angular_rate_rad_s);
  if (config.has("reference.kind")) {
    s.reference.kind =
        parse_reference_kind(config.get_string("reference.kind", ""), config.origin());
  }
  s.reference.step_time_s =
      config.get_double("reference.step_time_s", s.reference.step_time_s);

  s.plant.inertia = config.get_double("plant.inertia", s.plant.inertia);
  s.plant.damping = config.get_double("plant.damping", s.plant.damping);
  s.plant.restoring = config.get_double("plant.restoring", s.plant.restoring);
  s.plant.trim_deg = config.get_double("plant.trim_deg", s.plant.trim_deg);
  s.plant.torque_gain = config.get_double("plant.torque_gain", s.plant.torque_gain);
  s.plant.arm_factor = config.get_double("plant.arm_factor", s.plant.arm_factor);
  s.plant.nonlinear_restoring =
      config.get_bool("plant.nonlinear_restoring", s.plant.nonlinear_restoring);

  s.sensor.sample_rate_hz =
      config.get_double("sensor.sample_rate_hz", s.sensor.sample_rate_hz);
  s.sensor.gyro_rms_noise_dps =
      config.get_double("sensor.gyro_rms_noise_dps", s.sensor.gyro_rms_noise_dps);
  s.sensor.attitude_noise_std_deg = config.get_double(
      "sensor.attitude_noise_std_deg", s.sensor.attitude_noise_std_deg);
  s.sensor.spike_probability =
      config.get_double("sensor.spike_probability", s.sensor.spike_probability);
  s.sensor.spike_min_deg =
      config.get_double("sensor.spike_min_deg", s.sensor.spike_min_deg);
  s.sensor.spike_max_deg =
      config.get_double("sensor.spike_max_deg", s.sensor.spike_max_deg);
  s.sensor.filter_cutoff_hz =
      config.get_double("sensor.filter_cutoff_hz", s.sensor.filter_cutoff_hz);
  s.sensor.rng_seed = config.get_u64("sensor.rng_seed", s.sensor.rng_seed);

  if (config.has("disturbance.waveform")) {
    s.disturbance.waveform = parse_waveform(
        config.get_string("disturbance.waveform", ""), config.origin());
  }
  s.disturbance.start_s =
      config.get_double("disturbance.start_s", s.disturbance.start_s);
  s.disturbance.duration_s =
      config.get_double("disturbance.duration_s", s.disturbance.duration_s);
  s.disturbance.amplitude =
      config.get_double("disturbance.amplitude", s.disturbance.amplitude);

  s.controller.dt_s = config.get_double("controller.dt_s", s.controller.dt_s);
  s.controller.error_window =
      config.get_int("controller.error_window", s.controller.error_window);
  s.controller.critic_init_eps = config.get_double(
      "controller.critic_init_eps", s.controller.critic_init_eps);

  auto apply_learner = [&](const std::string& prefix, LearnerConfig& cfg) {
    const auto q = config.get_vector(prefix + ".q_diag", {});
    if (!q.empty()) {
      Eigen::VectorXd diag(static_cast<Eigen::Index>(q.size()));
      for (std::size_t i = 0; i < q.size(); ++i) diag(static_cast<Eigen::Index>(i)) = q[i];
      cfg.state_weight = diag.asDiagonal();
    }
    const auto p = config.get_vector(prefix + ".guide", {});
    if (!p.empty()) {
      cfg.guide.resize(static_cast<Eigen::Index>(p.size()));
      for (std::size_t i = 0; i < p.size(); ++i) cfg.guide(static_cast<Eigen::Index>(i)) = p[i];
    }
    cfg.control_weight = config.get_double(prefix + ".r", cfg.control_weight);
    cfg.critic_rate = config.get_double(prefix + ".critic_rate", cfg.critic_rate);
    cfg.actor_rate = config.get_double(prefix + ".actor_rate", cfg.actor_rate);
  };
  apply_learner("tracking", s.controller.tracking);
  apply_learner("stabilizing", s.controller.stabilizing);

  s.convergence_window =
      config.get_int("convergence.window", s.convergence_window);
  s.convergence_err_tol_deg =
      config.get_double("convergence.err_tol_deg", s.convergence_err_tol_deg);
  s.convergence_step_tol =
      config.get_double("convergence.step_tol", s.convergence_step_tol);

  const auto unknown = config.unconsumed_keys();
  if (!unknown.empty()) {
    std::string msg = "config " + config.origin() + ": unknown keys:";
    for (const auto& k : unknown) msg += " '" + k + "'";
    throw std::runtime_error(msg);
  }

  s.validate();
  return s;
}

std::string default_config_text(ScenarioKind kind) {
  const ScenarioSpec s = default_scenario(kind);
  std::ostringstream os;
  os.precision(17);
  os << "# wingpitch scenario configuration: " << to_string(kind) << "\n"
     << "# every key shown with its default; omitted keys keep these values\n\n"
     << "episode_s = " << s.episode_s << "\n"
     << "warmup_s = " << s.warmup_s << "          # excluded from error metrics\n"
     << "seed = " << s.seed << "\n"
     << "physics_dt_s = " << s.physics_dt_s << "\n"
     << "mode = " << to_string(s.mode_schedule.front().mode)
     << "   # learning | actor-frozen | frozen\n"
     << "snapshot = " << s.snapshot_path
     << "   # initial weights file; required for frozen_policy\n"
     << "initial_theta_deg = " << s.initial_theta_deg << "\n"
     << "initial_rate_dps = " << s.initial_rate_dps << "\n\n"
     << "reference.amplitude_deg = " << s.reference.amplitude_deg << "\n"
     << "reference.angular_rate_rad_s = " << s.reference.angular_rate_rad_s << "\n"
     << "reference.kind = " << reference_kind_name(s.reference.kind) << "\n"
     << "reference.step_time_s = " << s.reference.step_time_s << "\n\n"
     << "plant.inertia = " << s.plant.inertia << "\n"
     << "plant.damping = " << s.plant.damping << "\n"
     << "plant.restoring = " << s.plant.restoring << "\n"
     << "plant.trim_deg = " << s.plant.trim_deg << "\n"
     << "plant.torque_gain = " << s.plant.torque_gain << "\n"
     << "plant.arm_factor = " << s.plant.arm_factor << "\n"
     << "plant.nonlinear_restoring = "
     << (s.plant.nonlinear_restoring ? "true" : "false") << "\n\n"
     << "sensor.sample_rate_hz = " << s.sensor.sample_rate_hz << "\n"
     << "sensor.gyro_rms_noise_dps = " << s.sensor.gyro_rms_noise_dps << "\n"
     << "sensor.attitude_noise_std_deg = " << s.sensor.attitude_noise_std_deg
     << "   # negative: derive from the gyro figure\n"
     << "sensor.spike_probability = " << s.sensor.spike_probability << "\n"
     << "sensor.spike_min_deg = " << s.sensor.spike_min_deg << "\n"
     << "sensor.spike_max_deg = " << s.sensor.spike_max_deg << "\n"
     << "sensor.filter_cutoff_hz = " << s.sensor.filter_cutoff_hz << "\n"
     << "sensor.rng_seed = " << s.sensor.rng_seed << "\n\n"
     << "disturbance.waveform = " << waveform_name(s.disturbance.waveform)
     << "   # none | pulse | random_jerk\n"
     << "disturbance.start_s = " << s.disturbance.start_s << "\n"
     << "disturbance.duration_s = " << s.disturbance.duration_s << "\n"
     << "disturbance.amplitude = " << s.disturbance.amplitude << "\n\n"
     << "controller.dt_s = " << s.controller.dt_s << "\n"
     << "controller.error_window = " << s.controller.error_window << "\n"
     << "controller.critic_init_eps = " << s.controller.critic_init_eps << "\n\n"
     << "tracking.q_diag = " << join(s.controller.tracking.state_weight.diagonal())
     << "\n"
     << "tracking.r = " << s.controller.tracking.control_weight << "\n"
     << "tracking.guide = " << join(s.controller.tracking.guide.transpose()) << "\n"
     << "tracking.critic_rate = " << s.controller.tracking.critic_rate << "\n"
     << "tracking.actor_rate = " << s.controller.tracking.actor_rate << "\n\n"
     << "stabilizing.q_diag = "
     << join(s.controller.stabilizing.state_weight.diagonal()) << "\n"
     << "stabilizing.r = " << s.controller.stabilizing.control_weight << "\n"
     << "stabilizing.guide = " << join(s.controller.stabilizing.guide.transpose())
     << "\n"
     << "stabilizing.critic_rate = " << s.controller.stabilizing.critic_rate << "\n"
     << "stabilizing.actor_rate = " << s.controller.stabilizing.actor_rate << "\n\n"
     << "convergence.window = " << s.convergence_window << "\n"
     << "convergence.err_tol_deg = " << s.convergence_err_tol_deg << "\n"
     << "convergence.step_tol = " << s.convergence_step_tol << "\n";
  return os.str();
}

}  // namespace wingpitch
