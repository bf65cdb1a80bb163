#include "hetnet/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hetnet/errors.hpp"

namespace hetnet {

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::SubchannelReuse: return "subchannel-reuse";
    case Constraint::MultipleAssociation: return "multiple-association";
    case Constraint::SubchannelOutOfPlan: return "subchannel-out-of-plan";
    case Constraint::Continuity: return "continuity";
    case Constraint::SwitchPointRange: return "switch-point-range";
    case Constraint::MacroSync: return "macro-sync";
  }
  return "unknown";
}

namespace {

void check_user(int user, int user_count) {
  if (user < 0 || user >= user_count)
    throw InvalidArgument("unknown user id " + std::to_string(user));
}

std::string describe(const Link& l) {
  return "user " + std::to_string(l.user) + " on station " + std::to_string(l.bs) +
         " subchannel " + std::to_string(l.subchannel);
}

}  // namespace

std::vector<Violation> validate_decision(const Decision& decision, const NetworkConfig& config,
                                         const Decision& previous, std::span<const int> reassoc,
                                         int user_count) {
  std::vector<Violation> out;

  for (const Link& l : decision.links) {
    check_user(l.user, user_count);
    config.station(l.bs);
  }
  for (int u : reassoc) check_user(u, user_count);

  std::map<int, int> links_per_user;
  std::map<std::pair<int, int>, int> holder;
  for (const Link& l : decision.links) {
    if (++links_per_user[l.user] == 2)
      out.push_back({Constraint::MultipleAssociation,
                     "user " + std::to_string(l.user) + " holds more than one link"});
    const BaseStation& bs = config.station(l.bs);
    if (l.subchannel < 0 || l.subchannel >= bs.subchannel_count) {
      out.push_back({Constraint::SubchannelOutOfPlan, describe(l)});
      continue;
    }
    auto [it, fresh] = holder.try_emplace({l.bs, l.subchannel}, l.user);
    if (!fresh)
      out.push_back({Constraint::SubchannelReuse,
                     "station " + std::to_string(l.bs) + " subchannel " +
                         std::to_string(l.subchannel) + " serves users " +
                         std::to_string(it->second) + " and " + std::to_string(l.user)});
  }

  const std::set<int> movable(reassoc.begin(), reassoc.end());
  for (int u = 0; u < user_count; ++u) {
    if (movable.count(u)) continue;
    const Link* before = previous.find(u);
    const Link* now = decision.find(u);
    if (before && (!now || !(*now == *before))) {
      out.push_back({Constraint::Continuity,
                     "ongoing " + describe(*before) + " was " + (now ? "moved" : "dropped")});
    } else if (!before && now) {
      out.push_back({Constraint::Continuity, "user " + std::to_string(u) +
                                                 " was associated without requesting it"});
    }
  }

  const int n_s = config.n_subslots;
  if (decision.switch_points.size() != config.stations.size()) {
    out.push_back({Constraint::SwitchPointRange, "switch points do not cover every station"});
  } else {
    std::optional<int> macro_point;
    for (const BaseStation& bs : config.stations) {
      const int n = decision.switch_points[static_cast<std::size_t>(bs.id)];
      if (n < 1 || n > n_s - 1)
        out.push_back({Constraint::SwitchPointRange, "station " + std::to_string(bs.id) +
                                                         " switch point " + std::to_string(n)});
      if (bs.cls != BsClass::Macro) continue;
      if (!macro_point) {
        macro_point = n;
      } else if (*macro_point != n) {
        out.push_back({Constraint::MacroSync, "macro station " + std::to_string(bs.id) +
                                                  " switches at " + std::to_string(n) +
                                                  " instead of " + std::to_string(*macro_point)});
      }
    }
  }
  return out;
}

}  // namespace hetnet
