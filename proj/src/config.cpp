/*
 * Copyright 2026 The stpa-rec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "stpa/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stpa/errors.hpp"
#include "stpa/syntax.hpp"

namespace stpa {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    std::string t = Trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const std::string& why) {
  throw InvalidArgument("config key " + key + " = '" + value + "': " + why);
}

}  // namespace

KeyValues KeyValues::Parse(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string t = Trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key = value");
    }
    std::string key = Trim(std::string_view(t).substr(0, eq));
    if (key.empty()) {
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": empty key");
    }
    kv.Set(key, Trim(std::string_view(t).substr(eq + 1)));
  }
  return kv;
}

KeyValues KeyValues::Load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return Parse(buf.str());
}

void KeyValues::Set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

void KeyValues::SetAssignment(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidArgument("expected key=value, got '" + std::string(assignment) +
                          "'");
  }
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

void KeyValues::Merge(const KeyValues& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> KeyValues::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Scalar KeyValues::GetScalar(const std::string& key,
                            const Scalar& fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  try {
    return Scalar::Parse(*v);
  } catch (const SyntaxError& e) {
    BadValue(key, *v, e.what());
  }
}

std::int64_t KeyValues::GetInt(const std::string& key,
                               std::int64_t fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  char* end = nullptr;
  long long n = std::strtoll(v->c_str(), &end, 10);
  if (v->empty() || *end != '\0') BadValue(key, *v, "not an integer");
  return n;
}

Point KeyValues::GetPoint(const std::string& key, const Point& fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  std::string text = *v;
  if (text.empty() || text.front() != '(') text = "(" + text + ")";
  try {
    return ParsePoint(text);
  } catch (const SyntaxError& e) {
    BadValue(key, *v, e.what());
  }
}

std::vector<std::string> KeyValues::GetList(
    const std::string& key, std::vector<std::string> fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  return SplitList(*v);
}

KeyValues LoadEnvConfig() {
  const char* path = std::getenv("STPA_CONFIG");
  if (path == nullptr || *path == '\0') return {};
  return KeyValues::Load(path);
}

CliConfig CliConfig::FromKeyValues(const KeyValues& kv) {
  CliConfig c;
  c.speed = kv.GetScalar("speed", c.speed);
  if (c.speed.sgn() <= 0) BadValue("speed", c.speed.str(), "must be positive");
  c.depth = static_cast<int>(kv.GetInt("depth", c.depth));
  if (c.depth <= 0) BadValue("depth", std::to_string(c.depth), "must be positive");
  c.unfold_budget = kv.GetInt("unfold_budget", c.unfold_budget);
  if (c.unfold_budget <= 0) {
    BadValue("unfold_budget", std::to_string(c.unfold_budget), "must be positive");
  }
  c.samples = kv.GetInt("samples", c.samples);
  if (c.samples <= 0) {
    BadValue("samples", std::to_string(c.samples), "must be positive");
  }
  c.seed = static_cast<std::uint64_t>(kv.GetInt("seed", 1));
  if (auto f = kv.Get("format")) {
    if (*f == "json" || *f == "json-lines") {
      c.json = true;
    } else if (*f != "text") {
      BadValue("format", *f, "expected text or json");
    }
  }
  return c;
}

ParSetup ParSetupFromKeyValues(const KeyValues& kv) {
  ParSetup s;
  ParParams& p = s.params;
  s.inputs = kv.GetList("data", {"d1", "d2"});
  std::vector<std::string> distinct;
  for (const auto& d : s.inputs) {
    if (std::find(distinct.begin(), distinct.end(), d) == distinct.end()) {
      distinct.push_back(d);
    }
  }
  p.data = kv.GetList("dataset", distinct.empty() ? p.data : distinct);
  p.speed = kv.GetScalar("speed", p.speed);
  p.timeout = kv.GetScalar("timeout", p.timeout);
  p.retransmission_bound = static_cast<int>(
      kv.GetInt("retransmission_bound", p.retransmission_bound));
  p.depth = static_cast<int>(kv.GetInt("depth", p.depth));
  p.xi_s = kv.GetPoint("geometry.S", p.xi_s);
  p.xi_k = kv.GetPoint("geometry.K", p.xi_k);
  p.xi_l = kv.GetPoint("geometry.L", p.xi_l);
  p.xi_r = kv.GetPoint("geometry.R", p.xi_r);
  p.t_s = kv.GetScalar("delays.S", p.t_s);
  p.t_k = kv.GetScalar("delays.K", p.t_k);
  p.t_l = kv.GetScalar("delays.L", p.t_l);
  p.t_r = kv.GetScalar("delays.R", p.t_r);
  p.t_r_ack = kv.GetScalar("delays.R_ack", p.t_r_ack);
  p.Validate();
  return s;
}

}  // namespace stpa
