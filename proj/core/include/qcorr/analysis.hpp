#pragma once

// Feature detection on sampled correlation trajectories.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcorr/dephasing.hpp"

namespace qcorr::analysis {

enum class EventKind { kFreezeStart, kFreezeEnd, kSuddenChange, kBirth, kDeath, kRevival };
enum class Measure { kLqu, kTraceDiscord, kConcurrence };

std::string_view to_string(EventKind k);
std::string_view to_string(Measure m);

struct Event {
  EventKind kind;
  double time;
  Measure measure;
  double value;
};

struct TimeTrace {
  std::vector<double> times;
  std::vector<double> lqu;
  std::vector<double> d_t;
  std::vector<double> conc;
  std::vector<Event> features;

  std::span<const double> values(Measure m) const;
  /// Throws ShapeError unless arrays match and times strictly increase.
  void check() const;
};

inline constexpr double kDefaultEpsZero = 1e-4;
inline constexpr double kDefaultEpsFlatRelative = 1e-6;

/// Maximal runs of at least `min_samples` points with every value within
/// eps_flat of the run mean and above max(eps_flat, value_floor). Needs
/// >= 10 samples.
std::vector<Event> detect_freezing(std::span<const double> times, std::span<const double> values,
                                   Measure measure, double eps_flat, int min_samples = 5,
                                   double value_floor = 0.0);

/// Points where the discrete slope jumps by more than `factor` times the
/// median slope jump in the surrounding window. One event per cluster.
std::vector<Event> detect_sudden_change(std::span<const double> times,
                                        std::span<const double> values, Measure measure,
                                        int window = 5, double factor = 10.0);

/// Up- and down-crossings of eps_zero: the first up-crossing is a birth,
/// down-crossings are deaths and later up-crossings are revivals. Crossing
/// times are linearly interpolated. The trace must start below eps_zero.
std::vector<Event> detect_birth_death_revival(std::span<const double> times,
                                              std::span<const double> values, Measure measure,
                                              double eps_zero = kDefaultEpsZero);

/// Earliest time at which a given kind of event occurs for a measure.
std::optional<double> first_event_time(std::span<const Event> events, EventKind kind,
                                       Measure measure);

/// Sorts by time (stable).
void sort_events(std::vector<Event>& events);

/// Time at which gamma(t) reaches ln(|c1| / |c3|), the boundary where the
/// frozen trace discord starts to decay. None when |c1| <= |c3|, c3 = 0, or
/// gamma saturates below the threshold.
std::optional<double> crossing_time(double c1, double c3, const dephasing::ReservoirSpec& r);

}  // namespace qcorr::analysis
