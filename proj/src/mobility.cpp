#include "hetnet/mobility.hpp"

#include <cmath>
#include <numbers>

#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 2.0))
    throw DomainError("levy exponent must lie in (0, 2), got " + std::to_string(beta));
}

// Folds an unfolded coordinate back into [lo, hi]. Returns true when it lands
// in a mirrored tile, i.e. the direction of travel is reversed.
bool fold(double& x, double lo, double hi) {
  const double span = hi - lo;
  double t = std::fmod(x - lo, 2.0 * span);
  if (t < 0.0) t += 2.0 * span;
  if (t <= span) {
    x = lo + t;
    return false;
  }
  x = hi - (t - span);
  return true;
}

}  // namespace

double sigma_y(double beta) {
  check_beta(beta);
  const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

double levy_length(double y, double z, double beta) {
  check_beta(beta);
  return std::abs(y) / std::pow(std::abs(z), 1.0 / beta);
}

double sample_length(Rng& rng, double beta, double upper) {
  std::normal_distribution<double> ny(0.0, sigma_y(beta));
  std::normal_distribution<double> nz(0.0, 1.0);
  for (;;) {
    const double y = ny(rng);
    const double z = nz(rng);
    if (y == 0.0 || z == 0.0) continue;
    const double l = levy_length(y, z, beta);
    if (!(l > 0.0)) continue;
    return std::min(l, upper);
  }
}

double flight_duration(double length_m, const LevyParams& levy) {
  if (!(length_m > 0.0)) throw DomainError("flight length must be positive");
  const bool short_flight = length_m < levy.flight_cutoff_m;
  const double k = short_flight ? levy.k_short : levy.k_long;
  const double rho = short_flight ? levy.rho_short : levy.rho_long;
  return k * std::pow(length_m, 1.0 - rho);
}

void start_flight(UserState& user, Rng& rng, const Rect& area, const LevyParams& levy) {
  const double length = sample_length(rng, levy.beta_f, area.diagonal());
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double a = angle(rng);
  const double duration = flight_duration(length, levy);
  Flying f{duration, {std::cos(a), std::sin(a)}, length / duration};
  user.phase = f;
  user.velocity = f.heading * f.speed_mps;
}

Vec2 reflect_move(Vec2 position, Vec2& heading, double distance_m, const Rect& area) {
  double x = position.x + heading.x * distance_m;
  double y = position.y + heading.y * distance_m;
  if (fold(x, area.min_x, area.max_x)) heading.x = -heading.x;
  if (fold(y, area.min_y, area.max_y)) heading.y = -heading.y;
  return area.clamp({x, y});
}

void advance(UserState& user, double dt_s, Rng& rng, const Rect& area, const LevyParams& levy) {
  double left = dt_s;
  while (left > 0.0) {
    if (auto* f = std::get_if<Flying>(&user.phase)) {
      const double step = std::min(left, f->remaining_s);
      user.position = reflect_move(user.position, f->heading, f->speed_mps * step, area);
      f->remaining_s -= step;
      left -= step;
      user.velocity = f->heading * f->speed_mps;
      if (f->remaining_s <= 0.0) {
        user.phase = Pausing{sample_length(rng, levy.beta_r, levy.max_pause_s)};
        user.velocity = {};
      }
    } else {
      auto& p = std::get<Pausing>(user.phase);
      const double step = std::min(left, p.remaining_s);
      p.remaining_s -= step;
      left -= step;
      user.velocity = {};
      if (p.remaining_s <= 0.0) start_flight(user, rng, area, levy);
    }
  }
}

}  // namespace hetnet
