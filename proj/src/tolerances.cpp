#include "spincomm/tolerances.hpp"

#include <cstdlib>
#include <sstream>

#include "spincomm/errors.hpp"

namespace spincomm {

namespace {

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value >= 0.0))
    throw InvalidArgument("tolerance '" + key + "' has invalid value '" + text + "'");
  return value;
}

}  // namespace

void Tolerances::apply_overrides(const std::string& spec) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("tolerance override '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    const double v = parse_number(key, item.substr(eq + 1));
    if (key == "hermiticity") hermiticity = v;
    else if (key == "unitarity") unitarity = v;
    else if (key == "state_norm") state_norm = v;
    else if (key == "support") support = v;
    else if (key == "degeneracy") degeneracy = v;
    else if (key == "arrival_floor") arrival_floor = v;
    else if (key == "control_zero") control_zero = v;
    else if (key == "control_imag_abort") control_imag_abort = v;
    else if (key == "psd") psd = v;
    else if (key == "max_sector_dimension") max_sector_dimension = static_cast<std::size_t>(v);
    else throw InvalidArgument("unknown tolerance '" + key + "'");
  }
}

Tolerances Tolerances::from_environment() {
  Tolerances t;
  if (const char* env = std::getenv("SPINCOMM_TOLERANCES")) t.apply_overrides(env);
  return t;
}

std::string Tolerances::describe() const {
  std::ostringstream out;
  out << "hermiticity=" << hermiticity << ",unitarity=" << unitarity
      << ",state_norm=" << state_norm << ",support=" << support
      << ",degeneracy=" << degeneracy << ",arrival_floor=" << arrival_floor
      << ",control_zero=" << control_zero << ",control_imag_abort=" << control_imag_abort
      << ",psd=" << psd << ",max_sector_dimension=" << max_sector_dimension;
  return out.str();
}

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

}  // namespace spincomm
