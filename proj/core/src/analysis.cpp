#include "qcorr/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qcorr/errors.hpp"

namespace qcorr::analysis {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::kFreezeStart: return "freeze_start";
    case EventKind::kFreezeEnd: return "freeze_end";
    case EventKind::kSuddenChange: return "sudden_change";
    case EventKind::kBirth: return "birth";
    case EventKind::kDeath: return "death";
    case EventKind::kRevival: return "revival";
  }
  return "unknown";
}

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::kLqu: return "lqu";
    case Measure::kTraceDiscord: return "d_t";
    case Measure::kConcurrence: return "conc";
  }
  return "unknown";
}

std::span<const double> TimeTrace::values(Measure m) const {
  switch (m) {
    case Measure::kLqu: return lqu;
    case Measure::kTraceDiscord: return d_t;
    case Measure::kConcurrence: return conc;
  }
  return {};
}

void TimeTrace::check() const {
  const std::size_t n = times.size();
  if (lqu.size() != n || d_t.size() != n || conc.size() != n)
    throw ShapeError("trace arrays differ in length");
  for (std::size_t i = 1; i < n; ++i)
    if (!(times[i] > times[i - 1])) throw ShapeError("trace times must be strictly increasing");
}

namespace {

void require_same_length(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw ShapeError("times and values differ in length");
}

}  // namespace

std::vector<Event> detect_freezing(std::span<const double> times, std::span<const double> values,
                                   Measure measure, double eps_flat, int min_samples,
                                   double value_floor) {
  require_same_length(times, values);
  if (values.size() < 10) throw PreconditionError("freezing detection needs at least 10 samples");

  std::vector<Event> out;
  const std::size_t n = values.size();
  const double floor = std::max(eps_flat, value_floor);
  std::size_t i = 0;
  while (i < n) {
    if (!(values[i] > floor)) {
      ++i;
      continue;
    }
    double sum = values[i], lo = values[i], hi = values[i];
    std::size_t j = i;
    while (j + 1 < n) {
      const double v = values[j + 1];
      if (!(v > floor)) break;
      const double nsum = sum + v;
      const double mean = nsum / double(j + 2 - i);
      const double nlo = std::min(lo, v), nhi = std::max(hi, v);
      if (nhi - mean >= eps_flat || mean - nlo >= eps_flat) break;
      sum = nsum;
      lo = nlo;
      hi = nhi;
      ++j;
    }
    if (int(j - i + 1) >= min_samples) {
      const double mean = sum / double(j - i + 1);
      out.push_back({EventKind::kFreezeStart, times[i], measure, mean});
      out.push_back({EventKind::kFreezeEnd, times[j], measure, mean});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<Event> detect_sudden_change(std::span<const double> times,
                                        std::span<const double> values, Measure measure,
                                        int window, double factor) {
  require_same_length(times, values);
  const std::size_t n = values.size();
  if (window < 1 || n < std::size_t(2 * window + 1))
    throw PreconditionError("sudden-change detection needs at least 2*window+1 samples");

  std::vector<double> slope(n - 1);
  double max_slope = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    slope[i] = (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
    max_slope = std::max(max_slope, std::abs(slope[i]));
  }
  // jump[i] is the slope change at sample i, for 1 <= i <= n-2.
  std::vector<double> jump(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) jump[i] = std::abs(slope[i] - slope[i - 1]);

  const double floor = std::max(1e-9 * max_slope, 1e-300);
  std::vector<bool> flagged(n, false);
  std::vector<double> local;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t lo = i > std::size_t(window) ? i - window : 1;
    const std::size_t hi = std::min(n - 2, i + window);
    local.clear();
    for (std::size_t j = lo; j <= hi; ++j)
      if (j + 1 < i || j > i + 1) local.push_back(jump[j]);
    if (local.empty()) continue;
    const auto mid = local.begin() + local.size() / 2;
    std::nth_element(local.begin(), mid, local.end());
    const double scale = std::max(*mid, floor);
    flagged[i] = jump[i] > factor * scale;
  }

  std::vector<Event> out;
  for (std::size_t i = 1; i + 1 < n;) {
    if (!flagged[i]) {
      ++i;
      continue;
    }
    std::size_t peak = i;
    while (i + 1 < n && flagged[i]) {
      if (jump[i] > jump[peak]) peak = i;
      ++i;
    }
    out.push_back({EventKind::kSuddenChange, times[peak], measure, values[peak]});
  }
  return out;
}

std::vector<Event> detect_birth_death_revival(std::span<const double> times,
                                              std::span<const double> values, Measure measure,
                                              double eps_zero) {
  require_same_length(times, values);
  std::vector<Event> out;
  if (values.empty()) return out;
  if (!(values[0] < eps_zero))
    throw PreconditionError("birth/death detection needs a trace that starts below eps_zero");

  bool above = false;
  bool born = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool now = values[i] >= eps_zero;
    if (now == above) continue;
    const double v0 = values[i - 1], v1 = values[i];
    const double frac = v1 != v0 ? (eps_zero - v0) / (v1 - v0) : 0.0;
    const double t = times[i - 1] + std::clamp(frac, 0.0, 1.0) * (times[i] - times[i - 1]);
    EventKind kind;
    if (now) {
      kind = born ? EventKind::kRevival : EventKind::kBirth;
      born = true;
    } else {
      kind = EventKind::kDeath;
    }
    out.push_back({kind, t, measure, v1});
    above = now;
  }
  return out;
}

std::optional<double> first_event_time(std::span<const Event> events, EventKind kind,
                                       Measure measure) {
  std::optional<double> best;
  for (const Event& e : events)
    if (e.kind == kind && e.measure == measure && (!best || e.time < *best)) best = e.time;
  return best;
}

void sort_events(std::vector<Event>& events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
}

std::optional<double> crossing_time(double c1, double c3, const dephasing::ReservoirSpec& r) {
  const double a1 = std::abs(c1), a3 = std::abs(c3);
  if (a3 == 0.0 || a1 <= a3 || r.lam == 0.0) return std::nullopt;
  const double target = std::log(a1 / a3);
  if (r.zero_temperature() && dephasing::gamma_zero_temperature_limit(r) <= target)
    return std::nullopt;

  auto excess = [&](double t) { return dephasing::gamma_closed(r, t) - target; };
  double lo = 0.0, hi = 1.0 / r.omega;
  const double horizon = 1e8 / r.omega;
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > horizon) return std::nullopt;
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double e = excess(mid);
    if (std::abs(e) < 1e-13 || hi - lo <= 1e-15 * hi) return mid;
    (e < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcorr::analysis
