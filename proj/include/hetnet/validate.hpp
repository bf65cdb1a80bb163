#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

/// Structural constraints a slot decision must satisfy. Demand satisfaction
/// is not among them: it is judged after the fact from realised rates.
enum class Constraint {
  SubchannelReuse,      // a station serves at most one user per subchannel
  MultipleAssociation,  // a user holds at most one link
  SubchannelOutOfPlan,  // subchannel index outside the serving station's plan
  Continuity,           // users not asking for reassociation keep their link
  SwitchPointRange,     // switch point in {1, ..., N_s - 1}
  MacroSync,            // all macro stations share one switch point
};

std::string_view to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks `decision` against the structural constraints. `previous` is the
/// decision executed in the preceding slot and `reassoc` the users allowed to
/// change their link this slot. Pure: equal inputs give equal output.
///
/// Unknown user or station ids are caller bugs and raise InvalidArgument
/// instead of being reported as violations.
std::vector<Violation> validate_decision(const Decision& decision, const NetworkConfig& config,
                                         const Decision& previous, std::span<const int> reassoc,
                                         int user_count);

}  // namespace hetnet
