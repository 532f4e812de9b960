#include "qvirial/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "qvirial/error.hpp"

namespace qvirial {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"oscillator", {"m", "omega0", "gamma", "T", "hbar", "kB"}},
      {"bath", {"kind", "omega_cut"}},
      {"circuit", {"L", "C", "R", "T", "hbar", "kB"}},
      {"series", {"n_terms"}},
      {"quadrature", {"cutoff", "tol"}},
      {"sweep", {"variable", "start", "stop", "steps", "x", "rho", "sigma"}},
      {"langevin", {"dt", "n_steps", "n_burnin", "seed", "Gamma", "x0", "v0"}},
  };
  return s;
}

}  // namespace

ConfigTable ConfigTable::parse(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw Error(ErrorKind::InvalidParameter, std::string("TOML: ") + std::string(e.description()));
  }
  ConfigTable out;
  for (const auto& [section, node] : root) {
    const std::string sec(section.str());
    const auto known = schema().find(sec);
    if (known == schema().end()) throw Error(ErrorKind::InvalidParameter, "unknown section [" + sec + "]");
    const toml::table* tbl = node.as_table();
    if (!tbl) throw Error(ErrorKind::InvalidParameter, "[" + sec + "] must be a table");
    for (const auto& [key, val] : *tbl) {
      const std::string k(key.str());
      if (!known->second.count(k)) throw Error(ErrorKind::InvalidParameter, "unknown key " + sec + "." + k);
      const std::string full = sec + "." + k;
      if (auto d = val.value<double>()) {
        out.values_[full] = *d;
      } else if (auto s = val.value<std::string>()) {
        out.values_[full] = *s;
      } else {
        throw Error(ErrorKind::InvalidParameter, full + " must be a number or a string");
      }
    }
  }
  return out;
}

ConfigTable ConfigTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::optional<double> ConfigTable::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const double* d = std::get_if<double>(&it->second)) return *d;
  throw Error(ErrorKind::InvalidParameter, key + " must be a number");
}

std::optional<std::string> ConfigTable::text(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
  throw Error(ErrorKind::InvalidParameter, key + " must be a string");
}

OscillatorParams oscillator_from(const ConfigTable& cfg, OscillatorParams p) {
  if (auto v = cfg.number("oscillator.m")) p.m = *v;
  if (auto v = cfg.number("oscillator.omega0")) p.omega0 = *v;
  if (auto v = cfg.number("oscillator.gamma")) p.gamma = *v;
  if (auto v = cfg.number("oscillator.T")) p.temperature = *v;
  if (auto v = cfg.number("oscillator.hbar")) p.hbar = *v;
  if (auto v = cfg.number("oscillator.kB")) p.kB = *v;
  return p;
}

BathSpec bath_from(const ConfigTable& cfg, double gamma) {
  const std::string kind = cfg.text("bath.kind").value_or("ohmic");
  if (kind == "ohmic") return BathSpec::ohmic(gamma);
  if (kind == "drude") {
    auto wc = cfg.number("bath.omega_cut");
    if (!wc) throw Error(ErrorKind::InvalidParameter, "bath.omega_cut required for a Drude bath");
    return BathSpec::drude(gamma, *wc);
  }
  throw Error(ErrorKind::InvalidParameter, "bath.kind must be \"ohmic\" or \"drude\"");
}

}  // namespace qvirial
