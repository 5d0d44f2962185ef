#pragma once

#include <string>
#include <string_view>

namespace fccfold {

// Which energy function drives a search, and which flavour of
// macro-mutation goes with it.
enum class EnergyModel { Hp, Mj, Mh };

std::string_view model_name(EnergyModel m);
EnergyModel parse_model(std::string_view name);  // throws ConfigError

}  // namespace fccfold
