#include "slab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace slab {

const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::exact:
      return "exact";
    case Exactness::approximation:
      return "approximation";
    case Exactness::extrapolated:
      return "extrapolated";
  }
  return "unknown";
}

const char* to_string(QVariant v) {
  return v == QVariant::plain ? "plain" : "shift_adjusted";
}

void SystemConfig::validate() const {
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (!std::isfinite(delta) || delta < 0.0) {
    throw std::invalid_argument("config: delta must be finite and >= 0");
  }
  if (const auto* rep = std::get_if<Replicated>(&scheme)) {
    if (rep->c < 0) throw std::invalid_argument("config: c must be >= 0");
  } else {
    const auto& coded = std::get<Coded>(scheme);
    if (coded.n < k) throw std::invalid_argument("config: n must be >= k");
  }
  // Distribution parameters are validated at construction.
}

}  // namespace slab
