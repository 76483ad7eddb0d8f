#ifndef BBTEA_GEOMETRY_HPP
#define BBTEA_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bbtea {

/// Abstract planar position, km.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using Polyline = std::vector<Point>;

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double distance_to_segment(Point p, Point a, Point b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    return distance(p, Point{a.x + t * dx, a.y + t * dy});
}

inline double distance_to_polyline(Point p, const Polyline& line) {
    if (line.empty()) return std::numeric_limits<double>::infinity();
    if (line.size() == 1) return distance(p, line.front());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < line.size(); ++i) {
        best = std::min(best, distance_to_segment(p, line[i - 1], line[i]));
    }
    return best;
}

}  // namespace bbtea

#endif  // BBTEA_GEOMETRY_HPP
