#pragma once

#include "flyra/geometry.hpp"

#include <string>
#include <vector>

namespace flyra {

/// One piecewise-linear motion leg: constant velocity from start_time for duration seconds.
struct Segment {
    double start_time = 0.0; // s
    Vec3 origin;             // position at start_time
    Vec3 velocity;           // m/s
    double duration = 0.0;   // s, >= 0

    double end_time() const { return start_time + duration; }

    /// Position within this segment, clamped to [start_time, end_time].
    Vec3 position_at(double t) const
    {
        double dt = t - start_time;
        if (dt < 0.0) {
            dt = 0.0;
        } else if (dt > duration) {
            dt = duration;
        }
        return origin + velocity * dt;
    }

    Vec3 end_position() const { return origin + velocity * duration; }
};

/**
 * Time-ordered piecewise-linear node trajectory. Position is frozen at the
 * final segment's end once the node has stopped flying.
 */
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::string node_id, std::vector<Segment> segments);

    const std::string& node_id() const { return node_id_; }
    const std::vector<Segment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    double end_time() const;

    /// Position at time t >= 0; throws std::invalid_argument if the trajectory has no segments.
    Vec3 position_at(double t) const;

private:
    std::string node_id_;
    std::vector<Segment> segments_;
};

} // namespace flyra
