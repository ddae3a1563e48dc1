#include "adl/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace adl {

void EpochSchedule::validate() const {
  if (lengths.empty()) throw ConfigError("schedule has no epochs");
  if (lambdas.size() != lengths.size() || radii.size() != lengths.size()) {
    throw ConfigError("schedule lengths, lambdas and radii must have equal counts");
  }
  if (offset < 0) throw ConfigError("schedule offset must be non-negative");
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (lengths[k] <= 0) throw ConfigError("epoch lengths must be positive");
    if (!(lambdas[k] >= 0.0) || !std::isfinite(lambdas[k])) {
      throw ConfigError("epoch lambdas must be finite and non-negative");
    }
    if (!(radii[k] > 0.0) || !std::isfinite(radii[k])) {
      throw ConfigError("epoch radii must be finite and positive");
    }
    if (k > 0 && lambdas[k] > lambdas[k - 1]) throw ConfigError("epoch lambdas must be non-increasing");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw ConfigError("epoch radii must be strictly decreasing");
  }
}

Index EpochSchedule::length(Index epoch) const {
  return lengths[static_cast<std::size_t>(std::min(epoch, epochs() - 1))];
}

double EpochSchedule::lambda(Index epoch) const {
  return lambdas[static_cast<std::size_t>(std::min(epoch, epochs() - 1))];
}

double EpochSchedule::radius(Index epoch) const {
  return radii[static_cast<std::size_t>(std::min(epoch, epochs() - 1))];
}

Index EpochSchedule::boundary(Index epoch) const {
  Index end = offset;
  const Index configured = std::min(epoch, epochs() - 1);
  for (Index k = 0; k <= configured; ++k) end += lengths[static_cast<std::size_t>(k)];
  if (epoch >= epochs()) end += (epoch - epochs() + 1) * lengths.back();
  return end;
}

Index EpochSchedule::first_boundary_at_or_after(Index index) const {
  Index end = offset;
  for (Index k = 0; k < epochs(); ++k) {
    end += lengths[static_cast<std::size_t>(k)];
    if (end >= index) return end;
  }
  const Index tail = lengths.back();
  const Index extra = (index - end + tail - 1) / tail;
  return end + extra * tail;
}

EpochSchedule make_schedule(const ScheduleSpec& spec, Index p, Index offset) {
  if (p < 1) throw ConfigError("dimension must be at least 1");
  if (spec.epochs < 1) throw ConfigError("schedule needs at least one epoch");
  if (!(spec.growth >= 1.0)) throw ConfigError("epoch growth factor must be >= 1");
  if (!(spec.decay > 0.0 && spec.decay < 1.0)) throw ConfigError("decay must lie in (0, 1)");

  const double log_p = std::log(std::max<double>(static_cast<double>(p), 2.0));
  const Index t1 = spec.first_length > 0
                       ? spec.first_length
                       : std::max<Index>(8, static_cast<Index>(std::ceil(spec.length_log_factor * log_p)));
  const double lambda1 = spec.lambda1 >= 0.0 ? spec.lambda1
                                             : spec.lambda_scale * std::sqrt(log_p / static_cast<double>(t1));

  EpochSchedule s;
  s.offset = offset;
  double length = static_cast<double>(t1);
  double lambda = lambda1;
  double radius = spec.radius1;
  for (Index k = 0; k < spec.epochs; ++k) {
    s.lengths.push_back(static_cast<Index>(std::llround(length)));
    s.lambdas.push_back(lambda);
    s.radii.push_back(radius);
    length *= spec.growth;
    lambda *= spec.decay;
    radius *= spec.decay;
    // Past ~1e15 observations the schedule is academic; stop growing to avoid overflow.
    length = std::min(length, 1e15);
  }
  s.validate();
  return s;
}

ResolvedSchedules resolve_schedules(const ScheduleSpec& lasso, const ScheduleSpec& nodewise, Index p) {
  ResolvedSchedules r;
  r.lasso = make_schedule(lasso, p, 0);
  r.n1 = r.lasso.boundary(0);
  r.nodewise = make_schedule(nodewise, p, r.n1);
  r.n1_prime = r.nodewise.boundary(0);
  r.start_index = r.lasso.first_boundary_at_or_after(r.n1_prime);
  return r;
}

namespace {

void dump(std::ostringstream& out, const char* name, const EpochSchedule& s, Index shown) {
  out << name << " (offset " << s.offset << ")\n";
  out << "  k        T_k          n_k       lambda_k       radius_k\n";
  for (Index k = 0; k < std::min(shown, s.epochs()); ++k) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-4lld %10lld %12lld %14.6g %14.6g\n", static_cast<long long>(k + 1),
                  static_cast<long long>(s.length(k)), static_cast<long long>(s.boundary(k)), s.lambda(k),
                  s.radius(k));
    out << line;
  }
}

}  // namespace

std::string describe(const ResolvedSchedules& r, Index shown_epochs) {
  std::ostringstream out;
  dump(out, "lasso schedule", r.lasso, shown_epochs);
  dump(out, "nodewise schedule", r.nodewise, shown_epochs);
  out << "n1 = " << r.n1 << "\n";
  out << "n1' = " << r.n1_prime << "\n";
  out << "n_l = " << r.start_index << "\n";
  return out.str();
}

}  // namespace adl
