#pragma once

#include <cstddef>
#include <vector>

namespace starsec {

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Couples a served user with the eavesdropper contending for its signal.
// The same entry indexes both regions' node lists.
struct PairIndex {
    std::size_t user = 0;
    std::size_t eve = 0;
};

struct NodeLayout {
    Position3D bs;
    std::vector<Position3D> reflect_users;
    std::vector<Position3D> transmit_users;
    std::vector<Position3D> reflect_eves;
    std::vector<Position3D> transmit_eves;
    std::vector<PairIndex> pairing;
};

// Distances for one selected pair. UAV-to-ground links use the UAV altitude
// directly rather than the z difference; ground nodes sit in the z = 0 plane
// and their own altitude never enters the link model.
struct LinkDistances {
    double d_bv = 0.0;
    double d_vu_r = 0.0;
    double d_vu_t = 0.0;
    double d_ve_r = 0.0;
    double d_ve_t = 0.0;
};

double distance(const Position3D& a, const Position3D& b);

// Throws std::invalid_argument on an out-of-range pair or when the UAV is
// colocated with an endpoint (any distance below 1e-9 m).
LinkDistances link_distances(const NodeLayout& layout, const Position3D& uav,
                             std::size_t pair);

}  // namespace starsec
