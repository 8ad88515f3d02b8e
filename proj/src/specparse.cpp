// Copyright 2026 The lowregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lowregret/specparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lowregret/bounded.hpp"
#include "lowregret/models.hpp"
#include "lowregret/robustify.hpp"
#include "lowregret/vswitch.hpp"

namespace lowregret {

namespace {

// Recursive-descent reader over one spec string.
class SpecReader {
 public:
  SpecReader(const std::string& text, int horizon, double default_alpha)
      : text_(text), horizon_(horizon), default_alpha_(default_alpha) {}

  ModelPtr read_model_spec() {
    ModelPtr m = read_model();
    skip_ws();
    if (!eof()) fail("trailing characters after model spec");
    return m;
  }

  std::shared_ptr<const AdversaryFactory> read_adversary_spec() {
    auto a = read_adversary();
    skip_ws();
    if (!eof()) fail("trailing characters after adversary spec");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SpecParseError(message, static_cast<int>(pos_));
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::string read_name() {
    skip_ws();
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                      text_[pos_] == '_' || text_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  // number := term ('/' term)?   term := float | 'T'
  double read_number() {
    double value = read_number_term();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      const double denom = read_number_term();
      if (denom == 0.0) fail("division by zero");
      value /= denom;
    }
    return value;
  }

  double read_number_term() {
    skip_ws();
    if (peek() == 'T') {
      ++pos_;
      return static_cast<double>(horizon_);
    }
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc()) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  bool read_bool() {
    const std::size_t at = pos_;
    const std::string word = read_name();
    if (word == "true") return true;
    if (word == "false") return false;
    pos_ = at;
    fail("expected true or false");
  }

  // key '=' suffix for named arguments.
  std::string read_key() {
    const std::string key = read_name();
    expect('=');
    return key;
  }

  ModelPtr read_model() {
    const std::size_t at = pos_;
    const std::string name = read_name();
    if (name == "polya") return std::make_shared<PolyaUrnModel>(2);
    if (name == "const") return read_const();
    if (name == "bernoulli") return read_bernoulli();
    if (name == "drift") return read_drift();
    if (name == "debruijn") return read_debruijn();
    if (name == "windowed") return read_windowed();
    if (name == "robust") return read_robust();
    if (name == "alg2") return read_alg2();
    if (name == "vswitch") return read_vswitch();
    pos_ = at;
    fail("unknown model '" + name + "'");
  }

  ModelPtr read_const() {
    expect('(');
    const double p = read_number();
    expect(')');
    if (!(p >= 0.0 && p <= 1.0)) fail("const probability must lie in [0, 1]");
    return std::make_shared<ConstantModel>(StateDist({1.0 - p, p}));
  }

  ModelPtr read_bernoulli() {
    expect('(');
    std::vector<std::pair<int, double>> schedule;
    do {
      const double p = read_number();
      expect('@');
      const double start = read_number();
      schedule.emplace_back(static_cast<int>(start), p);
    } while (consume(','));
    expect(')');
    return std::make_shared<PiecewiseBernoulliModel>(std::move(schedule));
  }

  ModelPtr read_drift() {
    expect('(');
    if (read_key() != "phi") fail("drift expects phi=");
    const double phi = read_number();
    expect(')');
    return std::make_shared<PeriodicDriftModel>(phi);
  }

  ModelPtr read_debruijn() {
    expect('(');
    int L = 8;
    bool flip = false;
    double eps = 0.0;
    do {
      const std::string key = read_key();
      if (key == "L") L = static_cast<int>(read_number());
      else if (key == "flip") flip = read_bool();
      else if (key == "eps") eps = read_number();
      else fail("debruijn expects L=, flip=, eps=");
    } while (consume(','));
    expect(')');
    return std::make_shared<DeBruijnModel>(L, flip, eps);
  }

  ModelPtr read_windowed() {
    expect('(');
    ModelPtr base = read_model();
    expect(',');
    if (read_key() != "w") fail("windowed expects w=");
    const int w = static_cast<int>(read_number());
    expect(')');
    return std::make_shared<WindowedModel>(std::move(base), w);
  }

  ModelPtr read_robust() {
    expect('(');
    ModelPtr base = read_model();
    double alpha = default_alpha_;
    while (consume(',')) {
      const std::string key = read_key();
      if (key == "alpha") alpha = read_number();
      else if (key == "U") {
        if (read_name() != "match") fail("only U=match is supported");
      } else fail("robust expects alpha=, U=");
    }
    expect(')');
    return std::make_shared<RobustModel>(std::move(base), UtilityMatrix::match(2), horizon_,
                                         alpha);
  }

  ModelPtr read_alg2() {
    expect('(');
    ModelPtr base = read_model();
    int L = 8;
    int Lp = 72;
    double alpha = default_alpha_;
    ContextMode mode = ContextMode::kFullContext;
    while (consume(',')) {
      const std::string key = read_key();
      if (key == "L") L = static_cast<int>(read_number());
      else if (key == "Lp") Lp = static_cast<int>(read_number());
      else if (key == "alpha") alpha = read_number();
      else if (key == "U") {
        if (read_name() != "match") fail("only U=match is supported");
      } else if (key == "mode") {
        const std::string m = read_name();
        if (m == "full") mode = ContextMode::kFullContext;
        else if (m == "suffix") mode = ContextMode::kSuffixOnly;
        else fail("mode must be full or suffix");
      } else fail("alg2 expects L=, Lp=, alpha=, U=, mode=");
    }
    expect(')');
    return std::make_shared<BoundedRobustModel>(std::move(base), UtilityMatrix::match(2), L, Lp,
                                                horizon_, alpha, mode);
  }

  ModelPtr read_vswitch() {
    expect('(');
    ModelPtr base = read_model();
    VScoreParams params = VScoreParams::defaults(horizon_, default_alpha_);
    while (consume(',')) {
      const std::string key = read_key();
      if (key == "eps") {
        if (!consume_auto()) params.eps = read_number();
      } else if (key == "delta") {
        if (!consume_auto()) params.delta = read_number();
      } else if (key == "c") {
        params.c = read_number();
      } else fail("vswitch expects eps=, delta=, c=");
    }
    expect(')');
    return std::make_shared<VSwitchModel>(std::move(base), params, horizon_);
  }

  bool consume_auto() {
    skip_ws();
    if (text_.compare(pos_, 4, "auto") == 0) {
      pos_ += 4;
      return true;
    }
    return false;
  }

  std::shared_ptr<const AdversaryFactory> read_adversary() {
    const std::size_t at = pos_;
    const std::string name = read_name();
    if (name == "flip")
      return std::make_shared<FlipAdversaryFactory>(UtilityMatrix::match(2));
    if (name == "const") {
      expect('(');
      const int s = static_cast<int>(read_number());
      expect(')');
      return std::make_shared<ConstAdversaryFactory>(s, 2);
    }
    if (name == "drift") {
      expect('(');
      if (read_key() != "phi") fail("drift expects phi=");
      const double phi = read_number();
      expect(')');
      return std::make_shared<EnvAdversaryFactory>(std::make_shared<PeriodicDriftModel>(phi));
    }
    if (name == "env") {
      expect('(');
      ModelPtr model = read_model();
      expect(')');
      return std::make_shared<EnvAdversaryFactory>(std::move(model));
    }
    pos_ = at;
    fail("unknown adversary '" + name + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int horizon_;
  double default_alpha_;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ModelPtr parse_model(const std::string& spec, int horizon, double default_alpha) {
  return SpecReader(spec, horizon, default_alpha).read_model_spec();
}

std::shared_ptr<const AdversaryFactory> parse_adversary(const std::string& spec, int horizon,
                                                        double default_alpha) {
  return SpecReader(spec, horizon, default_alpha).read_adversary_spec();
}

double ExperimentConfig::resolved_eta() const {
  if (eta == "auto") return 1.0 / std::sqrt(static_cast<double>(horizon));
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(eta.data(), eta.data() + eta.size(), value);
  if (ec != std::errc() || ptr != eta.data() + eta.size() || !(value > 0.0))
    throw SpecParseError("eta must be 'auto' or a positive number", 0);
  return value;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "adversary=" << adversary << "\n"
     << "alpha=" << format_double(alpha) << "\n"
     << "eta=" << eta << "\n"
     << "horizon=" << horizon << "\n"
     << "model=" << model << "\n"
     << "out=" << out << "\n"
     << "seed=" << seed << "\n"
     << "trials=" << trials << "\n";
  return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig config;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecParseError("config line is not key=value", line_no);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "model") config.model = value;
      else if (key == "adversary") config.adversary = value;
      else if (key == "horizon") config.horizon = std::stoi(value);
      else if (key == "trials") config.trials = std::stoi(value);
      else if (key == "eta") config.eta = value;
      else if (key == "alpha") config.alpha = std::stod(value);
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "out") config.out = value;
      else throw SpecParseError("unknown config key '" + key + "'", line_no);
    } catch (const SpecParseError&) {
      throw;
    } catch (const std::exception&) {
      throw SpecParseError("bad value for config key '" + key + "'", line_no);
    }
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace lowregret
