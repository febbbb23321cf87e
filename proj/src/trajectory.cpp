#include "flyra/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace flyra {

Trajectory::Trajectory(std::string node_id, std::vector<Segment> segments)
    : node_id_(std::move(node_id)), segments_(std::move(segments))
{
}

double Trajectory::end_time() const
{
    return segments_.empty() ? 0.0 : segments_.back().end_time();
}

Vec3 Trajectory::position_at(double t) const
{
    if (segments_.empty()) {
        throw std::invalid_argument("trajectory '" + node_id_ + "': no segments");
    }
    // Last segment whose start_time <= t; times before the first segment clamp to its origin.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double value, const Segment& s) { return value < s.start_time; });
    if (it == segments_.begin()) {
        return segments_.front().origin;
    }
    return std::prev(it)->position_at(t);
}

} // namespace flyra
