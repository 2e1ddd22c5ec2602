#include "calrank/config.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "calrank/error.hpp"

namespace calrank {

namespace {

namespace pt = boost::property_tree;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text) {
  text = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw argument_error("not a number: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw argument_error("not a boolean: '" + std::string(text) + "'");
}

void check_keys(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section) {
    if (!allowed.count(key)) throw argument_error("unknown key '" + key + "' in [" + name + "]");
  }
}

void apply_scenario(const pt::ptree& s, ScenarioConfig& cfg) {
  check_keys(s, "scenario",
             {"setting", "calibration", "n", "m", "value_lo", "value_hi", "estimators", "losses", "gammas", "trials",
              "inner_samples", "seed", "threads", "multi_pair"});
  if (auto v = s.get_optional<std::string>("setting")) {
    if (parse_setting(trim(*v)) != cfg.setting) {
      throw argument_error("config file setting '" + *v + "' does not match the subcommand");
    }
  }
  if (auto v = s.get_optional<std::string>("calibration")) cfg.calibration = std::string(trim(*v));
  if (auto v = s.get_optional<std::string>("n")) cfg.n_values = parse_int_list(*v);
  if (auto v = s.get_optional<std::string>("m")) cfg.m_values = parse_int_list(*v);
  auto lo = s.get_optional<std::string>("value_lo");
  auto hi = s.get_optional<std::string>("value_hi");
  if (lo.has_value() != hi.has_value()) throw argument_error("value_lo and value_hi must be given together");
  if (lo) cfg.value_law = ValueLaw{parse_number<double>(*lo), parse_number<double>(*hi)};
  if (auto v = s.get_optional<std::string>("estimators")) cfg.estimators = split_list(*v);
  if (auto v = s.get_optional<std::string>("losses")) {
    cfg.losses.clear();
    for (const auto& name : split_list(*v)) cfg.losses.push_back(parse_loss_kind(name));
  }
  if (auto v = s.get_optional<std::string>("gammas")) cfg.gammas = parse_double_list(*v);
  if (auto v = s.get_optional<std::string>("trials")) cfg.trials = parse_number<std::uint64_t>(*v);
  if (auto v = s.get_optional<std::string>("inner_samples")) cfg.inner_samples = parse_number<std::uint64_t>(*v);
  if (auto v = s.get_optional<std::string>("seed")) cfg.seed = parse_number<std::uint64_t>(*v);
  if (auto v = s.get_optional<std::string>("threads")) cfg.threads = parse_number<int>(*v);
  if (auto v = s.get_optional<std::string>("multi_pair")) cfg.multi_pair = parse_bool(*v);
}

void apply_weight(const pt::ptree& s, ScenarioConfig& cfg) {
  check_keys(s, "weight", {"kind", "gamma", "inputs", "outputs"});
  const std::string kind(trim(s.get<std::string>("kind", "ratio")));
  if (kind == "ratio") {
    cfg.weight = WeightFunction::ratio(parse_number<double>(s.get<std::string>("gamma", "1")));
  } else if (kind == "logistic") {
    cfg.weight = WeightFunction::logistic();
  } else if (kind == "table") {
    const auto inputs = parse_double_list(s.get<std::string>("inputs", ""));
    const auto outputs = parse_double_list(s.get<std::string>("outputs", ""));
    if (inputs.size() != outputs.size()) throw argument_error("weight table inputs and outputs differ in length");
    std::vector<Knot> knots;
    for (std::size_t k = 0; k < inputs.size(); ++k) knots.push_back({inputs[k], outputs[k]});
    cfg.weight = WeightFunction::table(std::move(knots));
  } else {
    throw argument_error("unknown weight kind: " + kind);
  }
}

void apply_noise(const pt::ptree& s, ScenarioConfig& cfg) {
  check_keys(s, "noise", {"kind", "sigma", "half_width"});
  const std::string kind(trim(s.get<std::string>("kind", "none")));
  if (kind == "none") {
    cfg.noise = NoiseModel::none();
  } else if (kind == "gaussian") {
    cfg.noise = NoiseModel::gaussian(parse_number<double>(s.get<std::string>("sigma", "")));
  } else if (kind == "uniform") {
    cfg.noise = NoiseModel::uniform(parse_number<double>(s.get<std::string>("half_width", "")));
  } else {
    throw argument_error("unknown noise kind: " + kind);
  }
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return items;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  for (const auto& item : split_list(text)) values.push_back(parse_number<int>(item));
  if (values.empty()) throw argument_error("empty list");
  return values;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> values;
  for (const auto& item : split_list(text)) values.push_back(parse_number<double>(item));
  if (values.empty()) throw argument_error("empty list");
  return values;
}

void apply_config(std::istream& in, ScenarioConfig& cfg) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw argument_error(std::string("config: ") + e.what());
  }
  for (const auto& [name, section] : tree) {
    if (name == "scenario") {
      apply_scenario(section, cfg);
    } else if (name == "weight") {
      apply_weight(section, cfg);
    } else if (name == "noise") {
      apply_noise(section, cfg);
    } else {
      throw argument_error("unknown config section: " + name);
    }
  }
}

void apply_config_file(const std::string& path, ScenarioConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw argument_error("cannot open config file: " + path);
  apply_config(in, cfg);
}

}  // namespace calrank
