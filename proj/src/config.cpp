#include "slct/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace slct {

std::string to_string(ProblemSpec::Type type) {
  switch (type) {
    case ProblemSpec::Type::lennard_jones: return "lennard_jones";
    case ProblemSpec::Type::schwarzschild: return "schwarzschild";
    case ProblemSpec::Type::custom: return "custom";
  }
  return "?";
}

PotentialModel ProblemSpec::build_model() const {
  if (type == Type::lennard_jones) return PotentialModel::lennard_jones(n);
  std::vector<PairProfile> table;
  table.reserve(n * (n - 1) / 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const auto key = std::make_pair(i, j);
      if (type == Type::schwarzschild) {
        auto it = schwarzschild_pairs.find(key);
        if (it == schwarzschild_pairs.end())
          fail(ErrorCode::parse, "missing pair." + std::to_string(i) + "." + std::to_string(j) +
                                     ".a/.b for the schwarzschild problem");
        table.push_back(PairProfile::schwarzschild(it->second.first, it->second.second));
      } else {
        auto it = custom_pairs.find(key);
        if (it == custom_pairs.end())
          fail(ErrorCode::parse, "missing pair." + std::to_string(i) + "." + std::to_string(j) +
                                     ".powers for the custom problem");
        table.push_back(PairProfile::power_sum(it->second));
      }
    }
  return PotentialModel(n, std::move(table));
}

void AnalysisOptions::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) fail(ErrorCode::parse, std::string("options.") + name + " must be positive");
  };
  positive(grad_tol, "grad_tol");
  positive(cluster_tol, "cluster_tol");
  positive(int_tol, "int_tol");
  positive(residual_tol, "residual_tol");
  positive(eps_cap, "eps_cap");
  if (lambda_max < 0.0) fail(ErrorCode::parse, "options.lambda_max must be >= 0");
  if (modes < 1) fail(ErrorCode::parse, "options.modes must be >= 1");
  positive(amplitude_lo, "amplitudes (lower end)");
  if (!(amplitude_hi > amplitude_lo))
    fail(ErrorCode::parse, "options.amplitudes upper end must exceed the lower end");
  if (amplitude_count < 2) fail(ErrorCode::parse, "options.amplitudes needs at least 2 points");
  positive(isolation_radius, "isolation_radius");
  if (isolation_samples < 1) fail(ErrorCode::parse, "options.isolation_samples must be >= 1");
}

namespace {

class ConfigParser {
public:
  ConfigParser(const std::string& text, const std::string& source)
      : text_(text), source_(source) {}

  AnalysisConfig run() {
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      std::string line = raw;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) error("", "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) error("", "empty key");
      handle(key, value);
    }
    finish();
    return config_;
  }

private:
  [[noreturn]] void error(const std::string& field, const std::string& message) const {
    std::ostringstream os;
    os << source_ << ":" << line_ << ": ";
    if (!field.empty()) os << field << ": ";
    os << message;
    fail(ErrorCode::parse, os.str());
  }

  static std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
  }

  double number(const std::string& field, const std::string& token) const {
    try {
      size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) error(field, "trailing characters after number '" + token + "'");
      return v;
    } catch (const std::logic_error&) {
      error(field, "expected a number, got '" + token + "'");
    }
  }

  int integer(const std::string& field, const std::string& token) const {
    try {
      size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) error(field, "trailing characters after integer '" + token + "'");
      return v;
    } catch (const std::logic_error&) {
      error(field, "expected an integer, got '" + token + "'");
    }
  }

  static std::vector<std::string> split(const std::string& s, char sep = ' ') {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    if (sep == ' ') {
      while (in >> tok) out.push_back(tok);
    } else {
      while (std::getline(in, tok, sep)) out.push_back(tok);
    }
    return out;
  }

  void handle(const std::string& key, const std::string& value) {
    if (key == "name") {
      config_.name = value;
    } else if (key == "problem.type") {
      if (value == "lennard_jones")
        config_.problem.type = ProblemSpec::Type::lennard_jones;
      else if (value == "schwarzschild")
        config_.problem.type = ProblemSpec::Type::schwarzschild;
      else if (value == "custom")
        config_.problem.type = ProblemSpec::Type::custom;
      else
        error(key, "must be lennard_jones, schwarzschild or custom");
    } else if (key == "problem.n") {
      config_.problem.n = integer(key, value);
      if (config_.problem.n < 2) error(key, "needs at least 2 particles");
    } else if (key.rfind("pair.", 0) == 0) {
      handle_pair(key, value);
    } else if (key == "seed") {
      const auto toks = split(value);
      Vector seed(toks.size());
      for (size_t i = 0; i < toks.size(); ++i) seed[i] = number(key, toks[i]);
      config_.seed = seed;
    } else if (key == "options.grad_tol") {
      config_.options.grad_tol = number(key, value);
    } else if (key == "options.cluster_tol") {
      config_.options.cluster_tol = number(key, value);
    } else if (key == "options.int_tol") {
      config_.options.int_tol = number(key, value);
    } else if (key == "options.residual_tol") {
      config_.options.residual_tol = number(key, value);
    } else if (key == "options.eps_cap") {
      config_.options.eps_cap = number(key, value);
    } else if (key == "options.lambda_max") {
      config_.options.lambda_max = number(key, value);
    } else if (key == "options.modes") {
      config_.options.modes = integer(key, value);
    } else if (key == "options.amplitudes") {
      const auto parts = split(value, ':');
      if (parts.size() != 3) error(key, "expected lo:hi:count");
      config_.options.amplitude_lo = number(key, trim(parts[0]));
      config_.options.amplitude_hi = number(key, trim(parts[1]));
      config_.options.amplitude_count = integer(key, trim(parts[2]));
    } else if (key == "options.mode") {
      if (value == "ambient")
        config_.options.mode = SpectralMode::ambient;
      else if (value == "com" || value == "com_reduced")
        config_.options.mode = SpectralMode::com_reduced;
      else
        error(key, "must be ambient or com_reduced");
    } else if (key == "options.isolation_radius") {
      config_.options.isolation_radius = number(key, value);
    } else if (key == "options.isolation_samples") {
      config_.options.isolation_samples = integer(key, value);
    } else if (key == "outputs.report") {
      config_.outputs.report_path = value;
    } else if (key == "outputs.trajectory_dir") {
      config_.outputs.trajectory_dir = value;
    } else {
      error(key, "unknown key");
    }
  }

  void handle_pair(const std::string& key, const std::string& value) {
    // pair.I.J.a | pair.I.J.b | pair.I.J.powers
    const auto parts = split(key, '.');
    if (parts.size() != 4) error(key, "expected pair.<i>.<j>.<a|b|powers>");
    const int i = integer(key, parts[1]);
    const int j = integer(key, parts[2]);
    if (!(i >= 1 && j > i)) error(key, "pair indices need 1 <= i < j");
    const auto pk = std::make_pair(i, j);
    if (parts[3] == "a")
      schwarz_a_[pk] = number(key, value);
    else if (parts[3] == "b")
      schwarz_b_[pk] = number(key, value);
    else if (parts[3] == "powers") {
      // space-separated coefficient:exponent terms
      std::vector<std::pair<double, double>> terms;
      for (const auto& tok : split(value)) {
        const auto ce = split(tok, ':');
        if (ce.size() != 2) error(key, "power terms are coefficient:exponent, got '" + tok + "'");
        terms.emplace_back(number(key, ce[0]), number(key, ce[1]));
      }
      if (terms.empty()) error(key, "needs at least one coefficient:exponent term");
      config_.problem.custom_pairs[pk] = std::move(terms);
    } else {
      error(key, "unknown pair attribute '" + parts[3] + "'");
    }
  }

  void finish() {
    for (const auto& [pk, a] : schwarz_a_) {
      auto itb = schwarz_b_.find(pk);
      if (itb == schwarz_b_.end())
        error("pair." + std::to_string(pk.first) + "." + std::to_string(pk.second) + ".b",
              "missing");
      config_.problem.schwarzschild_pairs[pk] = {a, itb->second};
    }
    for (const auto& [pk, b] : schwarz_b_)
      if (!schwarz_a_.count(pk))
        error("pair." + std::to_string(pk.first) + "." + std::to_string(pk.second) + ".a",
              "missing");
    config_.options.validate();
    if (config_.seed && config_.seed->size() != 2 * config_.problem.n)
      error("seed", "needs exactly " + std::to_string(2 * config_.problem.n) + " coordinates");
    if (config_.name == "analysis" && !source_.empty() && source_ != "<text>")
      config_.name = std::filesystem::path(source_).stem().string();
  }

  const std::string& text_;
  std::string source_;
  int line_ = 0;
  AnalysisConfig config_;
  std::map<std::pair<int, int>, double> schwarz_a_, schwarz_b_;
};

}  // namespace

AnalysisConfig parse_config_text(const std::string& text, const std::string& source_name) {
  return ConfigParser(text, source_name).run();
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace slct
