#include "starsec/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace starsec {

namespace {

constexpr double kMinDistance = 1e-9;  // below this, path loss diverges

// Ground links ignore the node's own altitude; only the UAV height enters.
double ground_distance(const Position3D& uav, const Position3D& node) {
    const double dx = node.x - uav.x;
    const double dy = node.y - uav.y;
    return std::sqrt(dx * dx + dy * dy + uav.z * uav.z);
}

double checked(double d, const char* link) {
    if (!(d >= kMinDistance))
        throw std::invalid_argument(std::string("link_distances: degenerate ") + link +
                                    " link (UAV colocated with a node)");
    return d;
}

}  // namespace

double distance(const Position3D& a, const Position3D& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

LinkDistances link_distances(const NodeLayout& layout, const Position3D& uav,
                             std::size_t pair) {
    if (pair >= layout.pairing.size())
        throw std::invalid_argument("link_distances: pair index out of range");
    const PairIndex idx = layout.pairing[pair];
    if (idx.user >= layout.reflect_users.size() ||
        idx.user >= layout.transmit_users.size() ||
        idx.eve >= layout.reflect_eves.size() ||
        idx.eve >= layout.transmit_eves.size())
        throw std::invalid_argument("link_distances: pairing indexes a missing node");

    LinkDistances d;
    d.d_bv = checked(distance(layout.bs, uav), "BS-UAV");
    d.d_vu_r = checked(ground_distance(uav, layout.reflect_users[idx.user]), "UAV-user (reflect)");
    d.d_vu_t = checked(ground_distance(uav, layout.transmit_users[idx.user]), "UAV-user (transmit)");
    d.d_ve_r = checked(ground_distance(uav, layout.reflect_eves[idx.eve]), "UAV-eve (reflect)");
    d.d_ve_t = checked(ground_distance(uav, layout.transmit_eves[idx.eve]), "UAV-eve (transmit)");
    return d;
}

}  // namespace starsec
