#include "nrq/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "nrq/error.hpp"

namespace nrq {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Entries = std::map<std::string, Entry, std::less<>>;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void validation_error(std::string_view field, const std::string& what) {
  throw Error(ErrorKind::ValidationError, std::string(field) + ": " + what);
}

Entries lex(std::string_view text) {
  Entries entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected `key = value`");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parse_error(line_no, "missing key");
    if (value.empty()) parse_error(line_no, "missing value for `" + std::string(key) + "`");
    if (entries.contains(key)) parse_error(line_no, "duplicate key `" + std::string(key) + "`");
    entries.emplace(std::string(key), Entry{std::string(value), line_no});
  }
  if (entries.empty()) parse_error(line_no == 0 ? 1 : line_no, "configuration is empty");
  return entries;
}

/// Pulls recognised keys out of the lexed entries; whatever remains is unknown.
class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  std::optional<Entry> take(std::string_view key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    Entry e = it->second;
    entries_.erase(it);
    return e;
  }

  std::optional<double> real(std::string_view key) {
    const auto e = take(key);
    if (!e) return std::nullopt;
    double out = 0.0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
      parse_error(e->line, "`" + std::string(key) + "` is not a decimal number: " + e->value);
    }
    return out;
  }

  std::optional<long long> integer(std::string_view key) {
    const auto e = take(key);
    if (!e) return std::nullopt;
    long long out = 0;
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
      parse_error(e->line, "`" + std::string(key) + "` is not an integer: " + e->value);
    }
    return out;
  }

  void reject_unknown() const {
    if (entries_.empty()) return;
    const auto& [key, entry] = *entries_.begin();
    parse_error(entry.line, "unknown key `" + key + "`");
  }

 private:
  Entries entries_;
};

void require_nonnegative(double value, std::string_view field) {
  if (value < 0.0) validation_error(field, "must be >= 0");
}

ModelParams read_model(Reader& r) {
  ModelParams m;
  m.J = Complex{r.real("J").value_or(1.0), r.real("J_imag").value_or(0.0)};
  m.gamma = r.real("Gamma").value_or(0.0);
  require_nonnegative(m.gamma, "Gamma");
  m.phi = r.real("phi").value_or(0.0);
  m.kappa = r.real("kappa").value_or(0.0);
  require_nonnegative(m.kappa, "kappa");
  m.omega0 = r.real("omega0").value_or(0.0);

  const auto target = r.integer("drive_target");
  const auto amplitude = r.real("drive_amplitude");
  const auto frequency = r.real("drive_frequency");
  if (amplitude && !target) validation_error("drive_target", "required when drive_amplitude is set");
  if (target) {
    if (*target != 1 && *target != 2) validation_error("drive_target", "must be 1 or 2");
    const double a = amplitude.value_or(0.0);
    require_nonnegative(a, "drive_amplitude");
    m.drive = Drive{qubit_from_index(static_cast<int>(*target)), a};
  }
  if (frequency) {
    if (!m.drive) validation_error("drive_frequency", "set without a drive");
    if (std::abs(*frequency - m.omega0) > 1e-12 * std::max(1.0, std::abs(m.omega0))) {
      validation_error("drive_frequency", "only resonant drives (drive_frequency = omega0) are supported");
    }
  }
  return m;
}

std::set<Output> read_outputs(const Entry& e) {
  std::set<Output> outputs;
  std::string_view rest = e.value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view name = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (name == "populations") outputs.insert(Output::Populations);
    else if (name == "concurrence") outputs.insert(Output::Concurrence);
    else if (name == "collective") outputs.insert(Output::Collective);
    else if (name == "states") outputs.insert(Output::States);
    else validation_error("outputs", "unknown output `" + std::string(name) + "`");
  }
  if (outputs.empty()) validation_error("outputs", "at least one output is required");
  return outputs;
}

std::optional<SweepParameter> parse_parameter(std::string_view name) {
  for (auto p : {SweepParameter::J, SweepParameter::Gamma, SweepParameter::GammaOverJ, SweepParameter::Phi,
                 SweepParameter::Kappa, SweepParameter::DriveAmplitude}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

SweepAxis read_axis(Reader& r, const std::string& prefix) {
  SweepAxis axis;
  const auto name = r.take(prefix + "_name");
  if (!name) validation_error(prefix + "_name", "required");
  const auto parameter = parse_parameter(name->value);
  if (!parameter) validation_error(prefix + "_name", "unknown sweep parameter `" + name->value + "`");
  axis.parameter = *parameter;

  const auto min = r.real(prefix + "_min");
  const auto max = r.real(prefix + "_max");
  const auto count = r.integer(prefix + "_count");
  if (!min) validation_error(prefix + "_min", "required");
  if (!max) validation_error(prefix + "_max", "required");
  if (!count) validation_error(prefix + "_count", "required");
  if (*count < 2) validation_error(prefix + "_count", "must be >= 2");
  axis.min = *min;
  axis.max = *max;
  axis.count = static_cast<std::size_t>(*count);
  return axis;
}

}  // namespace

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::J: return "J";
    case SweepParameter::Gamma: return "Gamma";
    case SweepParameter::GammaOverJ: return "Gamma_over_J";
    case SweepParameter::Phi: return "phi";
    case SweepParameter::Kappa: return "kappa";
    case SweepParameter::DriveAmplitude: return "drive_amplitude";
  }
  return "?";
}

void SweepSpec::validate() const {
  for (const auto* axis : {&axis1, &axis2}) {
    const std::string field = axis == &axis1 ? "axis1" : "axis2";
    if (axis->count < 2) validation_error(field + "_count", "must be >= 2");
    if (!(axis->min < axis->max)) validation_error(field + "_min", "must be < " + field + "_max");
    const bool rate = axis->parameter == SweepParameter::Gamma || axis->parameter == SweepParameter::GammaOverJ ||
                      axis->parameter == SweepParameter::Kappa ||
                      axis->parameter == SweepParameter::DriveAmplitude;
    if (rate && axis->min < 0.0) validation_error(field + "_min", "rates must be >= 0");
  }
  if (axis1.parameter == axis2.parameter) validation_error("axis2_name", "must differ from axis1_name");
  if (observable == SweepObservable::DeltaF) {
    for (const auto* axis : {&axis1, &axis2}) {
      if (axis->parameter == SweepParameter::Kappa || axis->parameter == SweepParameter::DriveAmplitude) {
        validation_error("observable", "delta_F does not depend on " + std::string(to_string(axis->parameter)));
      }
    }
  }
}

ExperimentConfig parse_config(std::string_view text) {
  Reader r(lex(text));
  ExperimentConfig cfg;
  cfg.model = read_model(r);

  if (const auto e = r.take("initial")) {
    const auto s = parse_initial_state(e->value);
    if (!s) validation_error("initial", "expected one of EG, GE, EE, GG, E, PLUS, MINUS, G");
    cfg.initial_state = *s;
  }
  cfg.grid.t_max = r.real("t_max").value_or(cfg.grid.t_max);
  cfg.grid.dt = r.real("dt").value_or(cfg.grid.dt);
  if (!(cfg.grid.t_max > 0.0)) validation_error("t_max", "must be > 0");
  if (!(cfg.grid.dt > 0.0)) validation_error("dt", "must be > 0");
  if (cfg.grid.dt > cfg.grid.t_max) validation_error("dt", "must not exceed t_max");
  if (const auto every = r.integer("sample_every")) {
    if (*every < 1) validation_error("sample_every", "must be >= 1");
    cfg.grid.sample_every = static_cast<std::size_t>(*every);
  }
  try {
    cfg.grid.validate();
  } catch (const Error& e) {
    validation_error("t_max", e.what());
  }
  if (const auto e = r.take("outputs")) cfg.outputs = read_outputs(*e);
  if (const auto e = r.take("output_path")) cfg.output_path = e->value;
  r.reject_unknown();
  return cfg;
}

SweepConfig parse_sweep_config(std::string_view text) {
  Reader r(lex(text));
  SweepConfig cfg;
  cfg.model = read_model(r);

  const auto observable = r.take("observable");
  if (!observable) validation_error("observable", "required");
  if (observable->value == "delta_F") cfg.sweep.observable = SweepObservable::DeltaF;
  else if (observable->value == "steady_concurrence") cfg.sweep.observable = SweepObservable::SteadyConcurrence;
  else validation_error("observable", "expected delta_F or steady_concurrence");

  cfg.sweep.axis1 = read_axis(r, "axis1");
  cfg.sweep.axis2 = read_axis(r, "axis2");
  cfg.sweep.validate();
  for (const auto* axis : {&cfg.sweep.axis1, &cfg.sweep.axis2}) {
    if (axis->parameter == SweepParameter::DriveAmplitude && !cfg.model.drive) {
      validation_error("drive_target", "required when sweeping drive_amplitude");
    }
  }
  if (const auto e = r.take("output_path")) cfg.output_path = e->value;
  r.reject_unknown();
  return cfg;
}

}  // namespace nrq
