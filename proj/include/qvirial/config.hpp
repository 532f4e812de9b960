#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "qvirial/bathspec.hpp"
#include "qvirial/params.hpp"

namespace qvirial {

/// Flat view of a TOML configuration: "section.key" -> number or string.
///
/// Recognised sections: [oscillator] m, omega0, gamma, T, hbar, kB;
/// [bath] kind = "ohmic" | "drude", omega_cut; [circuit] L, C, R, T, hbar, kB;
/// [series] n_terms; [quadrature] cutoff, tol; [sweep] variable, start, stop,
/// steps, x, rho, sigma; [langevin] dt, n_steps, n_burnin, seed, Gamma, x0, v0.
/// Anything else is rejected with InvalidParameter.
class ConfigTable {
 public:
  using Value = std::variant<double, std::string>;

  static ConfigTable parse(const std::string& text, const std::string& source = "<string>");
  static ConfigTable load(const std::string& path);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<double> number(const std::string& key) const;
  std::optional<std::string> text(const std::string& key) const;
  const std::map<std::string, Value>& values() const { return values_; }

 private:
  std::map<std::string, Value> values_;
};

/// Fills an OscillatorParams from [oscillator], starting from base.
OscillatorParams oscillator_from(const ConfigTable& cfg, OscillatorParams base = {});

/// Bath from [bath] with the given gamma; Ohmic when the section is absent.
BathSpec bath_from(const ConfigTable& cfg, double gamma);

}  // namespace qvirial
