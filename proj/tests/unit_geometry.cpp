#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "starsec/geometry.hpp"
#include "starsec/rng.hpp"

using namespace starsec;
namespace fz = oracle::frozen;

TEST_SUITE("geometry") {

TEST_CASE("distance handles degenerate and textbook cases") {
    CHECK(distance({0, 0, 0}, {0, 0, 0}) == 0.0);
    CHECK(distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(distance({1, 2, 3}, {1, 2, 3}) == 0.0);
    // BS-to-UAV hop of the reference deployment: sqrt(65.5).
    CHECK(distance({5, 5, 5}, {0.5, 0.5, 10}) ==
          doctest::Approx(fz::d_bv).epsilon(1e-15));
}

TEST_CASE("distance is symmetric and obeys the triangle inequality") {
    Xoshiro256pp rng(7);
    for (int i = 0; i < 200; ++i) {
        const Position3D a{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 10)};
        const Position3D b{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 10)};
        const Position3D c{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(0, 10)};
        CHECK(distance(a, b) == distance(b, a));
        CHECK(distance(a, b) <= distance(a, c) + distance(c, b) + 1e-12);
    }
}

namespace {

NodeLayout single_pair_layout() {
    NodeLayout layout;
    layout.bs = {5, 5, 5};
    layout.reflect_users = {{1, 1, 0}};
    layout.transmit_users = {{-1, -1, 0}};
    layout.reflect_eves = {{2, 2, 0}};
    layout.transmit_eves = {{-2, -2, 0}};
    layout.pairing = {{0, 0}};
    return layout;
}

}  // namespace

TEST_CASE("reference pair distances match the frozen values") {
    const LinkDistances d = link_distances(single_pair_layout(), {0.5, 0.5, 10}, 0);
    CHECK(d.d_bv == doctest::Approx(fz::d_bv).epsilon(1e-15));
    CHECK(d.d_vu_r == doctest::Approx(fz::d_vu_r).epsilon(1e-15));
    CHECK(d.d_vu_t == doctest::Approx(fz::d_vu_t).epsilon(1e-15));
    CHECK(d.d_ve_r == doctest::Approx(fz::d_ve_r).epsilon(1e-15));
    CHECK(d.d_ve_t == doctest::Approx(fz::d_ve_t).epsilon(1e-15));
}

TEST_CASE("ground links use the UAV altitude, not the node altitude") {
    NodeLayout layout = single_pair_layout();
    layout.reflect_users = {{0, 0, 0}};
    LinkDistances d = link_distances(layout, {0, 0, 1}, 0);
    CHECK(d.d_vu_r == doctest::Approx(1.0).epsilon(1e-15));

    layout.reflect_users = {{3, 4, 0}};
    d = link_distances(layout, {0, 0, 1}, 0);
    CHECK(d.d_vu_r == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));

    // A nonzero node altitude must not change the link length.
    layout.reflect_users = {{3, 4, 7}};
    d = link_distances(layout, {0, 0, 1}, 0);
    CHECK(d.d_vu_r == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
}

TEST_CASE("link distances are invariant under horizontal translation") {
    const NodeLayout layout = single_pair_layout();
    const Position3D uav{0.5, 0.5, 10};
    const LinkDistances base = link_distances(layout, uav, 0);

    const double dx = 3.7, dy = -1.2;
    NodeLayout moved = layout;
    const auto shift = [&](Position3D& p) {
        p.x += dx;
        p.y += dy;
    };
    shift(moved.bs);
    for (auto* group : {&moved.reflect_users, &moved.transmit_users,
                        &moved.reflect_eves, &moved.transmit_eves})
        for (auto& p : *group) shift(p);
    const LinkDistances shifted =
        link_distances(moved, {uav.x + dx, uav.y + dy, uav.z}, 0);

    CHECK(shifted.d_bv == doctest::Approx(base.d_bv).epsilon(1e-12));
    CHECK(shifted.d_vu_r == doctest::Approx(base.d_vu_r).epsilon(1e-12));
    CHECK(shifted.d_vu_t == doctest::Approx(base.d_vu_t).epsilon(1e-12));
    CHECK(shifted.d_ve_r == doctest::Approx(base.d_ve_r).epsilon(1e-12));
    CHECK(shifted.d_ve_t == doctest::Approx(base.d_ve_t).epsilon(1e-12));
}

TEST_CASE("out-of-range pair index is rejected") {
    const NodeLayout layout = single_pair_layout();
    CHECK_THROWS_AS(link_distances(layout, {0.5, 0.5, 10}, 1), std::invalid_argument);
}

TEST_CASE("colocated endpoints are rejected") {
    const NodeLayout layout = single_pair_layout();
    // UAV on top of the BS collapses the backhaul link.
    CHECK_THROWS_AS(link_distances(layout, {5, 5, 5}, 0), std::invalid_argument);
    const std::string msg = oracle::message_of<std::invalid_argument>(
        [&] { link_distances(layout, {5, 5, 5}, 0); });
    CHECK(msg.find("BS-UAV") != std::string::npos);
}

}  // TEST_SUITE
