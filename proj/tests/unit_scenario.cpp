#include <string>

#include <doctest.h>

#include "oracles.hpp"
#include "starsec/scenario.hpp"

using namespace starsec;

namespace {

const char* kMinimal = R"(
[nodes]
bs = [0, 0, 5]
uav = [0, 0, 10]
reflect_users = [[1, 1, 0]]
transmit_users = [[-1, -1, 0]]
reflect_eves = [[2, 2, 0]]
transmit_eves = [[-2, -2, 0]]
pairing = [(0, 0)]

[fading]
m_bv = 2
m_vu_r = 2
m_vu_t = 2
m_ve_r = 2
m_ve_t = 2

[power]
ps_dbm = 35
rho = 0.3
zeta = 0.2

[phase]
kappa = 20

[surface]
elements = 20
)";

// Loads kMinimal with one "key = value" line replaced (or appended when the
// original line is absent).
std::string minimal_with(const std::string& find, const std::string& replace) {
    std::string text = kMinimal;
    const auto at = text.find(find);
    if (at == std::string::npos) return text + "\n" + replace + "\n";
    return text.replace(at, find.size(), replace);
}

std::string error_of(const std::string& text) {
    return oracle::message_of<ConfigError>(
        [&] { (void)load_config_text(text, "test"); });
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("the reference scenario file loads with all fields resolved") {
    const ScenarioConfig cfg = load_config(SCENARIO_DIR "/baseline.cfg");
    const ScenarioConfig want = oracle::make_baseline();

    CHECK(cfg.layout.bs.x == want.layout.bs.x);
    CHECK(cfg.layout.bs.z == want.layout.bs.z);
    CHECK(cfg.uav.x == want.uav.x);
    CHECK(cfg.uav.z == want.uav.z);
    REQUIRE(cfg.layout.reflect_users.size() == 3);
    REQUIRE(cfg.layout.pairing.size() == 3);
    CHECK(cfg.layout.reflect_users[2].x == 2.0);
    CHECK(cfg.layout.transmit_eves[1].y == -0.25);
    CHECK(cfg.layout.pairing[2].user == 2);
    CHECK(cfg.layout.pairing[2].eve == 2);

    CHECK(cfg.fading.m_bv == 2.0);
    CHECK(cfg.power.ps_dbm == 35.0);
    CHECK(cfg.power.n0_dbm == 0.0);
    CHECK(cfg.power.rho == 0.3);
    CHECK(cfg.power.zeta == 0.2);
    CHECK(cfg.power.alpha_pl == 2.0);
    CHECK(cfg.phase.kappa == 20.0);
    CHECK(cfg.elements == 20);
    CHECK(cfg.w1 == 0.45);
    CHECK(cfg.w2 == 0.55);
    CHECK(cfg.quad_order == 64);  // [quadrature] omitted: default applies
    CHECK(cfg.mc.trials == 100000);
    CHECK(cfg.mc.seed == 20260818);
    CHECK(cfg.mc.eve_phase_model == EvePhaseModel::ExactUniform);
    CHECK(cfg.mc.threads == 0);

    REQUIRE(cfg.sweep.has_value());
    CHECK(cfg.sweep->variable == SweepVariable::PsDbm);
    REQUIRE(cfg.sweep->values.size() == 11);  // 0:5:50
    CHECK(cfg.sweep->values.front() == 0.0);
    CHECK(cfg.sweep->values.back() == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(cfg.sweep->outputs.size() == 8);
    CHECK(cfg.sweep->kappas == std::vector<double>{10.0, 15.0, 20.0});
    CHECK(cfg.sweep->powers_dbm.empty());

    REQUIRE(cfg.optimize.has_value());
    CHECK(cfg.optimize->box.x_min == -2.0);
    CHECK(cfg.optimize->box.z_max == 12.0);
    CHECK(cfg.optimize->box.step == 1.0);
    CHECK(cfg.optimize->settings.eps_position == 0.001);
    CHECK(cfg.optimize->settings.k_max == 50);
    CHECK(cfg.optimize->settings.eps_zeta == 0.0001);
    CHECK(cfg.optimize->settings.n_max_gss == 100);
    // Optimizer weights mirror the scenario weights.
    CHECK(cfg.optimize->settings.w1 == 0.45);
    CHECK(cfg.optimize->settings.w2 == 0.55);
}

TEST_CASE("a minimal scenario gets the documented defaults") {
    const ScenarioConfig cfg = load_config_text(kMinimal, "test");
    CHECK(cfg.power.n0_dbm == -100.0);
    CHECK(cfg.power.alpha_pl == 2.0);
    CHECK(cfg.w1 == 0.45);
    CHECK(cfg.w2 == 0.55);
    CHECK(cfg.quad_order == 64);
    CHECK(cfg.mc.trials == 100000);
    CHECK(cfg.mc.seed == 1);
    CHECK(cfg.mc.eve_phase_model == EvePhaseModel::ExactUniform);
    CHECK(cfg.mc.threads == 0);
    CHECK(!cfg.sweep.has_value());
    CHECK(!cfg.optimize.has_value());
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(load_config("/nonexistent/nowhere.cfg"), IoError);
}

TEST_CASE("inline comments and blank lines are ignored") {
    const std::string text = minimal_with("elements = 20", "elements = 20  # count");
    CHECK(load_config_text(text, "test").elements == 20);
}

TEST_CASE("range violations name the offending field") {
    CHECK(error_of(minimal_with("rho = 0.3", "rho = 1.3")).find("power.rho") !=
          std::string::npos);
    CHECK(error_of(minimal_with("zeta = 0.2", "zeta = -0.1")).find("power.zeta") !=
          std::string::npos);
    CHECK(error_of(minimal_with("kappa = 20", "kappa = -1")).find("phase.kappa") !=
          std::string::npos);
    CHECK(error_of(minimal_with("m_bv = 2", "m_bv = 0.3")).find("fading.m_bv") !=
          std::string::npos);
    CHECK(error_of(minimal_with("elements = 20", "elements = 0"))
              .find("surface.elements") != std::string::npos);
    CHECK(error_of(minimal_with("elements = 20", "elements = 2.5"))
              .find("integer") != std::string::npos);
    CHECK(error_of(minimal_with("uav = [0, 0, 10]", "uav = [0, 0, 0]"))
              .find("UAV altitude") != std::string::npos);
}

TEST_CASE("structural problems are reported with location context") {
    // Missing required section.
    std::string text = kMinimal;
    const auto at = text.find("[phase]");
    text.erase(at, text.find("[surface]") - at);
    CHECK(error_of(text).find("missing required section [phase]") != std::string::npos);

    // Missing required key.
    CHECK(error_of(minimal_with("rho = 0.3", "")).find("power.rho") !=
          std::string::npos);

    // Unknown key carries the origin and line prefix.
    const std::string unknown =
        error_of(minimal_with("ps_dbm = 35", "ps_dbm = 35\nbogus = 1"));
    CHECK(unknown.find("unknown key 'power.bogus'") != std::string::npos);
    CHECK(unknown.find("test:") != std::string::npos);

    CHECK(error_of(std::string(kMinimal) + "\n[extra]\nx = 1\n")
              .find("unknown section [extra]") != std::string::npos);
    CHECK(error_of(minimal_with("ps_dbm = 35", "ps_dbm = 35\nps_dbm = 36"))
              .find("duplicate key 'power.ps_dbm'") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "\n[power]\nps_dbm = 1\n")
              .find("duplicate section [power]") != std::string::npos);
    CHECK(error_of(minimal_with("rho = 0.3", "rho = abc")).find("not a number") !=
          std::string::npos);
}

TEST_CASE("layout cross-checks") {
    CHECK(error_of(minimal_with("pairing = [(0, 0)]", "pairing = [(0, 1)]"))
              .find("eve index out of range") != std::string::npos);
    CHECK(error_of(minimal_with("pairing = [(0, 0)]", "pairing = []"))
              .find("at least one pair") != std::string::npos);
    CHECK(error_of(minimal_with("reflect_users = [[1, 1, 0]]",
                                "reflect_users = [[1, 1, 0], [1, 1, 0]]"))
              .find("share coordinates") != std::string::npos);
    // An eavesdropper may sit exactly on a user: that is a modeled threat,
    // not a config mistake.
    CHECK_NOTHROW(load_config_text(
        minimal_with("reflect_eves = [[2, 2, 0]]", "reflect_eves = [[1, 1, 0]]"),
        "test"));
}

TEST_CASE("weight constraints") {
    const std::string flipped = minimal_with(
        "[phase]", "[weights]\nw1 = 0.6\nw2 = 0.4\n\n[phase]");
    CHECK(error_of(flipped).find("weights.w1") != std::string::npos);
    const std::string off_sum = minimal_with(
        "[phase]", "[weights]\nw1 = 0.5\nw2 = 0.6\n\n[phase]");
    CHECK(error_of(off_sum).find("w1 + w2") != std::string::npos);
}

TEST_CASE("sweep section constraints") {
    const std::string base = std::string(kMinimal) +
                             "\n[sweep]\nvariable = ps_dbm\noutputs = [wssr]\n";
    CHECK(error_of(base + "values = [1, 2]\nfrom = 0\nstep = 1\nto = 2\n")
              .find("conflicts") != std::string::npos);
    CHECK(error_of(base).find("give either values or from/step/to") !=
          std::string::npos);
    CHECK(error_of(base + "from = 5\nstep = 1\nto = 2\n").find("sweep.from") !=
          std::string::npos);
    CHECK(error_of(base + "from = 0\nstep = -1\nto = 2\n").find("sweep.step") !=
          std::string::npos);
    CHECK(error_of(std::string(kMinimal) +
                   "\n[sweep]\nvariable = bogus\nvalues = [1]\noutputs = [wssr]\n")
              .find("unknown sweep variable") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) +
                   "\n[sweep]\nvariable = zeta\nvalues = [0.5]\noutputs = [nope]\n")
              .find("unknown output") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) +
                   "\n[sweep]\nvariable = zeta\nvalues = [1.5]\noutputs = [wssr]\n")
              .find("zeta must lie in [0, 1]") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) +
                   "\n[sweep]\nvariable = elements\nvalues = [2.5]\noutputs = [wssr]\n")
              .find("integers >= 1") != std::string::npos);

    const ScenarioConfig range = load_config_text(
        std::string(kMinimal) +
            "\n[sweep]\nvariable = kappa\nfrom = 5\nstep = 5\nto = 20\noutputs = [wssr]\n",
        "test");
    REQUIRE(range.sweep.has_value());
    CHECK(range.sweep->values == std::vector<double>{5.0, 10.0, 15.0, 20.0});
    CHECK(range.sweep->variable == SweepVariable::Kappa);
}

TEST_CASE("mc and quadrature overrides") {
    CHECK(error_of(std::string(kMinimal) + "\n[quadrature]\norder = 0\n")
              .find("quadrature.order") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "\n[quadrature]\norder = 201\n")
              .find("quadrature.order") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "\n[mc]\ntrials = 0\n").find("mc.trials") !=
          std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "\n[mc]\neve_model = sometimes\n")
              .find("unknown eve model") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "\n[mc]\nseed = -3\n")
              .find("nonnegative integer") != std::string::npos);

    const ScenarioConfig cfg = load_config_text(
        std::string(kMinimal) +
            "\n[quadrature]\norder = 32\n\n[mc]\ntrials = 5000\nseed = 9\neve_model = approx\nthreads = 2\n",
        "test");
    CHECK(cfg.quad_order == 32);
    CHECK(cfg.mc.trials == 5000);
    CHECK(cfg.mc.seed == 9);
    CHECK(cfg.mc.eve_phase_model == EvePhaseModel::WrappedNormalApprox);
    CHECK(cfg.mc.threads == 2);
}

TEST_CASE("serialization is a fixed point of parsing") {
    const ScenarioConfig minimal = load_config_text(kMinimal, "test");
    const std::string s1 = serialize_config(minimal);
    const std::string s2 = serialize_config(load_config_text(s1, "round1"));
    CHECK(s1 == s2);

    const ScenarioConfig full = load_config(SCENARIO_DIR "/baseline.cfg");
    const std::string f1 = serialize_config(full);
    const std::string f2 = serialize_config(load_config_text(f1, "round1"));
    CHECK(f1 == f2);
}

TEST_CASE("serialization round-trips awkward numbers exactly") {
    ScenarioConfig cfg = load_config_text(kMinimal, "test");
    cfg.power.rho = 0.1;
    cfg.power.zeta = 1e-9;
    cfg.phase.kappa = 12.345678901234567;
    cfg.power.ps_dbm = -3.7;
    const ScenarioConfig back = load_config_text(serialize_config(cfg), "round");
    CHECK(back.power.rho == 0.1);
    CHECK(back.power.zeta == 1e-9);
    CHECK(back.phase.kappa == 12.345678901234567);
    CHECK(back.power.ps_dbm == -3.7);
}

TEST_CASE("enum names") {
    CHECK(std::string(to_string(SweepVariable::PsDbm)) == "ps_dbm");
    CHECK(std::string(to_string(SweepVariable::M)) == "elements");
    CHECK(std::string(to_string(SweepVariable::Kappa)) == "kappa");
    CHECK(std::string(to_string(SweepVariable::Zeta)) == "zeta");
    CHECK(std::string(to_string(EvePhaseModel::ExactUniform)) == "exact");
    CHECK(std::string(to_string(EvePhaseModel::WrappedNormalApprox)) == "approx");
}

}  // TEST_SUITE
