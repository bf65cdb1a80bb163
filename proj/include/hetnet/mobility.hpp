#pragma once

#include <random>

#include "hetnet/model.hpp"

namespace hetnet {

using Rng = std::mt19937_64;

/// Scale of the numerator normal in Mantegna's Levy-stable sampler:
/// {Gamma(1+b) sin(pi b/2) / (Gamma((1+b)/2) b 2^((b-1)/2))}^(1/b).
/// Throws DomainError unless 0 < beta < 2.
double sigma_y(double beta);

/// |y| / |z|^(1/beta): the deterministic core of one Levy draw.
double levy_length(double y, double z, double beta);

/// One truncated Levy draw in (0, upper]. y ~ N(0, sigma_y^2), z ~ N(0, 1);
/// zero draws are resampled. Used for flight lengths (metres) and pause
/// times (seconds).
double sample_length(Rng& rng, double beta, double upper);

/// Flight time k * l^(1 - rho) with the short-flight constants below the
/// cutoff and the long-flight constants at or above it.
double flight_duration(double length_m, const LevyParams& levy = {});

/// Starts a new flight: Levy length, uniform heading, duration from the
/// flight-time law.
void start_flight(UserState& user, Rng& rng, const Rect& area, const LevyParams& levy);

/// Advances a user by `dt_s`, chaining flight and pause phases as they expire.
/// Flights reflect specularly off the area boundary.
void advance(UserState& user, double dt_s, Rng& rng, const Rect& area, const LevyParams& levy);

/// Straight-line move with specular reflection; flips `heading` components on
/// each bounce.
Vec2 reflect_move(Vec2 position, Vec2& heading, double distance_m, const Rect& area);

}  // namespace hetnet
