#include "starsec/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <utility>

namespace starsec {

namespace {

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_field(const std::string& field, const std::string& msg) {
    throw ConfigError("field " + field + ": " + msg);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// ---- value grammar: scalar tokens, [..]-lists, (..)-tuples, nested ----

struct Item {
    bool is_list = false;
    std::string scalar;
    std::vector<Item> items;
};

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    const std::string& origin;
    int line;
};

void skip_ws(Cursor& c) {
    while (c.pos < c.text.size() && (c.text[c.pos] == ' ' || c.text[c.pos] == '\t')) ++c.pos;
}

Item parse_item(Cursor& c) {
    skip_ws(c);
    if (c.pos >= c.text.size()) fail_at(c.origin, c.line, "value ends unexpectedly");
    const char open = c.text[c.pos];
    if (open == '[' || open == '(') {
        const char close = open == '[' ? ']' : ')';
        ++c.pos;
        Item it;
        it.is_list = true;
        skip_ws(c);
        if (c.pos < c.text.size() && c.text[c.pos] == close) {
            ++c.pos;
            return it;
        }
        for (;;) {
            it.items.push_back(parse_item(c));
            skip_ws(c);
            if (c.pos >= c.text.size())
                fail_at(c.origin, c.line, std::string("missing '") + close + "'");
            const char ch = c.text[c.pos];
            if (ch == ',') {
                ++c.pos;
                continue;
            }
            if (ch == close) {
                ++c.pos;
                return it;
            }
            fail_at(c.origin, c.line,
                    std::string("expected ',' or '") + close + "' in list");
        }
    }
    const std::size_t start = c.pos;
    while (c.pos < c.text.size() &&
           std::string_view(",[]() \t").find(c.text[c.pos]) == std::string_view::npos)
        ++c.pos;
    if (c.pos == start) fail_at(c.origin, c.line, "empty value element");
    Item it;
    it.scalar = c.text.substr(start, c.pos - start);
    return it;
}

Item parse_value(const std::string& text, const std::string& origin, int line) {
    Cursor c{text, 0, origin, line};
    Item it = parse_item(c);
    skip_ws(c);
    if (c.pos != text.size()) fail_at(origin, line, "trailing characters after value");
    return it;
}

// ---- typed accessors; `field` is the dotted name used in error messages ----

double as_number(const Item& it, const std::string& field) {
    if (it.is_list) fail_field(field, "expected a number, got a list");
    const char* begin = it.scalar.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + it.scalar.size() || it.scalar.empty())
        fail_field(field, "not a number: '" + it.scalar + "'");
    return v;
}

long long as_integer(const Item& it, const std::string& field) {
    const double v = as_number(it, field);
    if (std::floor(v) != v || std::abs(v) > 9.007199254740992e15)
        fail_field(field, "expected an integer, got " + it.scalar);
    return static_cast<long long>(v);
}

std::uint64_t as_uint64(const Item& it, const std::string& field) {
    if (it.is_list) fail_field(field, "expected an integer, got a list");
    if (it.scalar.empty() || it.scalar[0] == '-')
        fail_field(field, "expected a nonnegative integer, got '" + it.scalar + "'");
    const char* begin = it.scalar.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end != begin + it.scalar.size())
        fail_field(field, "expected a nonnegative integer, got '" + it.scalar + "'");
    return v;
}

std::string as_token(const Item& it, const std::string& field) {
    if (it.is_list) fail_field(field, "expected a word, got a list");
    return it.scalar;
}

Position3D as_triple(const Item& it, const std::string& field) {
    if (!it.is_list || it.items.size() != 3)
        fail_field(field, "expected [x, y, z]");
    return {as_number(it.items[0], field), as_number(it.items[1], field),
            as_number(it.items[2], field)};
}

std::vector<Position3D> as_triple_list(const Item& it, const std::string& field) {
    if (!it.is_list) fail_field(field, "expected a list of [x, y, z] triples");
    std::vector<Position3D> out;
    out.reserve(it.items.size());
    for (std::size_t i = 0; i < it.items.size(); ++i)
        out.push_back(as_triple(it.items[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<PairIndex> as_pair_list(const Item& it, const std::string& field) {
    if (!it.is_list) fail_field(field, "expected a list of (user, eve) pairs");
    std::vector<PairIndex> out;
    out.reserve(it.items.size());
    for (std::size_t i = 0; i < it.items.size(); ++i) {
        const std::string elem = field + "[" + std::to_string(i) + "]";
        const Item& p = it.items[i];
        if (!p.is_list || p.items.size() != 2) fail_field(elem, "expected (user, eve)");
        const long long u = as_integer(p.items[0], elem);
        const long long e = as_integer(p.items[1], elem);
        if (u < 0 || e < 0) fail_field(elem, "pair indices must be nonnegative");
        out.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(e)});
    }
    return out;
}

std::vector<double> as_number_list(const Item& it, const std::string& field) {
    if (!it.is_list) fail_field(field, "expected a list of numbers");
    std::vector<double> out;
    out.reserve(it.items.size());
    for (std::size_t i = 0; i < it.items.size(); ++i)
        out.push_back(as_number(it.items[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::string> as_token_list(const Item& it, const std::string& field) {
    if (!it.is_list) fail_field(field, "expected a list of names");
    std::vector<std::string> out;
    out.reserve(it.items.size());
    for (std::size_t i = 0; i < it.items.size(); ++i)
        out.push_back(as_token(it.items[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

// ---- raw file structure ----

struct RawValue {
    std::string text;
    int line = 0;
};

struct RawSection {
    std::map<std::string, RawValue> keys;
    int line = 0;
};

using RawConfig = std::map<std::string, RawSection>;

RawConfig lex(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '[' && body.back() == ']') {
            current = trim(std::string_view(body).substr(1, body.size() - 2));
            if (current.empty()) fail_at(origin, lineno, "empty section name");
            if (raw.count(current))
                fail_at(origin, lineno, "duplicate section [" + current + "]");
            raw[current].line = lineno;
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            fail_at(origin, lineno, "expected 'key = value' or '[section]'");
        if (current.empty())
            fail_at(origin, lineno, "key outside of any section");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        if (key.empty()) fail_at(origin, lineno, "empty key");
        auto& sec = raw[current];
        if (sec.keys.count(key))
            fail_at(origin, lineno, "duplicate key '" + current + "." + key + "'");
        sec.keys[key] = {trim(std::string_view(body).substr(eq + 1)), lineno};
    }
    return raw;
}

// Hands out a section's keys one by one and flags leftovers as unknown.
class SectionReader {
  public:
    SectionReader(RawSection sec, std::string name, const std::string& origin)
        : sec_(std::move(sec)), name_(std::move(name)), origin_(origin) {}

    std::optional<Item> take(const std::string& key) {
        const auto it = sec_.keys.find(key);
        if (it == sec_.keys.end()) return std::nullopt;
        Item item = parse_value(it->second.text, origin_, it->second.line);
        sec_.keys.erase(it);
        return item;
    }

    Item need(const std::string& key) {
        auto item = take(key);
        if (!item) fail_field(name_ + "." + key, "missing required key");
        return std::move(*item);
    }

    std::string field(const std::string& key) const { return name_ + "." + key; }

    void finish() const {
        if (!sec_.keys.empty()) {
            const auto& [key, value] = *sec_.keys.begin();
            fail_at(origin_, value.line, "unknown key '" + name_ + "." + key + "'");
        }
    }

  private:
    RawSection sec_;
    std::string name_;
    const std::string& origin_;
};

SweepVariable sweep_variable_from(const std::string& token, const std::string& field) {
    if (token == "ps_dbm") return SweepVariable::PsDbm;
    if (token == "elements") return SweepVariable::M;
    if (token == "kappa") return SweepVariable::Kappa;
    if (token == "zeta") return SweepVariable::Zeta;
    fail_field(field, "unknown sweep variable '" + token +
                          "' (expected ps_dbm, elements, kappa or zeta)");
}

EvePhaseModel eve_model_from(const std::string& token, const std::string& field) {
    if (token == "exact") return EvePhaseModel::ExactUniform;
    if (token == "approx") return EvePhaseModel::WrappedNormalApprox;
    fail_field(field, "unknown eve model '" + token + "' (expected exact or approx)");
}

const std::vector<std::string>& known_outputs() {
    static const std::vector<std::string> names = {
        "c_user_r", "c_eve_r", "c_user_t", "c_eve_t",
        "r_sec_r",  "r_sec_t", "r_sec_sum", "wssr"};
    return names;
}

// ---- semantic validation; every failure names the offending field ----

void check_finite_triple(const Position3D& p, const std::string& field) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        fail_field(field, "coordinates must be finite");
}

void check_node_list(const std::vector<Position3D>& nodes, const std::string& field) {
    if (nodes.empty()) fail_field(field, "needs at least one node");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string elem = field + "[" + std::to_string(i) + "]";
        check_finite_triple(nodes[i], elem);
        if (nodes[i].z < 0.0) fail_field(elem, "ground nodes need z >= 0");
    }
}

void check_no_duplicates(const std::vector<Position3D>& a, const std::vector<Position3D>& b,
                         const std::string& what) {
    std::vector<Position3D> all(a);
    all.insert(all.end(), b.begin(), b.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].x == all[j].x && all[i].y == all[j].y && all[i].z == all[j].z)
                fail_field(what, "two nodes share coordinates");
}

void check_unit_range(double v, const std::string& field) {
    if (!(v >= 0.0 && v <= 1.0))
        fail_field(field, "out of range (expected 0 <= value <= 1)");
}

void check_fading(double m, const std::string& field) {
    if (!(m >= 0.5) || !std::isfinite(m))
        fail_field(field, "Nakagami shape must be >= 0.5");
}

void validate(const ScenarioConfig& cfg) {
    check_finite_triple(cfg.layout.bs, "nodes.bs");
    check_finite_triple(cfg.uav, "nodes.uav");
    if (cfg.layout.bs.z < 0.0) fail_field("nodes.bs", "ground nodes need z >= 0");
    if (!(cfg.uav.z > 0.0)) fail_field("nodes.uav", "UAV altitude must be > 0");
    check_node_list(cfg.layout.reflect_users, "nodes.reflect_users");
    check_node_list(cfg.layout.transmit_users, "nodes.transmit_users");
    check_node_list(cfg.layout.reflect_eves, "nodes.reflect_eves");
    check_node_list(cfg.layout.transmit_eves, "nodes.transmit_eves");
    check_no_duplicates(cfg.layout.reflect_users, cfg.layout.transmit_users,
                        "nodes.reflect_users/transmit_users");
    check_no_duplicates(cfg.layout.reflect_eves, cfg.layout.transmit_eves,
                        "nodes.reflect_eves/transmit_eves");
    if (cfg.layout.pairing.empty()) fail_field("nodes.pairing", "needs at least one pair");
    for (std::size_t i = 0; i < cfg.layout.pairing.size(); ++i) {
        const PairIndex& p = cfg.layout.pairing[i];
        const std::string elem = "nodes.pairing[" + std::to_string(i) + "]";
        if (p.user >= cfg.layout.reflect_users.size() ||
            p.user >= cfg.layout.transmit_users.size())
            fail_field(elem, "user index out of range");
        if (p.eve >= cfg.layout.reflect_eves.size() ||
            p.eve >= cfg.layout.transmit_eves.size())
            fail_field(elem, "eve index out of range");
    }

    check_fading(cfg.fading.m_bv, "fading.m_bv");
    check_fading(cfg.fading.m_vu_r, "fading.m_vu_r");
    check_fading(cfg.fading.m_vu_t, "fading.m_vu_t");
    check_fading(cfg.fading.m_ve_r, "fading.m_ve_r");
    check_fading(cfg.fading.m_ve_t, "fading.m_ve_t");

    if (!std::isfinite(cfg.power.ps_dbm)) fail_field("power.ps_dbm", "must be finite");
    if (!std::isfinite(cfg.power.n0_dbm)) fail_field("power.n0_dbm", "must be finite");
    check_unit_range(cfg.power.rho, "power.rho");
    check_unit_range(cfg.power.zeta, "power.zeta");
    if (!(cfg.power.alpha_pl > 0.0)) fail_field("power.alpha_pl", "must be > 0");

    if (!(cfg.phase.kappa >= 0.0)) fail_field("phase.kappa", "must be >= 0");
    if (cfg.elements < 1) fail_field("surface.elements", "must be >= 1");

    check_unit_range(cfg.w1, "weights.w1");
    check_unit_range(cfg.w2, "weights.w2");
    if (std::abs(cfg.w1 + cfg.w2 - 1.0) > 1e-12)
        fail_field("weights.w1", "w1 + w2 must equal 1");
    if (cfg.w1 > cfg.w2) fail_field("weights.w1", "w1 must not exceed w2");

    if (cfg.quad_order < 1 || cfg.quad_order > 200)
        fail_field("quadrature.order", "out of range (expected 1 <= order <= 200)");
    if (cfg.mc.trials < 1) fail_field("mc.trials", "must be >= 1");

    if (cfg.sweep) {
        const SweepSpec& s = *cfg.sweep;
        if (s.values.empty()) fail_field("sweep.values", "needs at least one value");
        if (s.outputs.empty()) fail_field("sweep.outputs", "needs at least one name");
        for (std::size_t i = 0; i < s.outputs.size(); ++i) {
            const auto& names = known_outputs();
            if (std::find(names.begin(), names.end(), s.outputs[i]) == names.end())
                fail_field("sweep.outputs[" + std::to_string(i) + "]",
                           "unknown output '" + s.outputs[i] + "'");
        }
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double v = s.values[i];
            const std::string elem = "sweep.values[" + std::to_string(i) + "]";
            if (!std::isfinite(v)) fail_field(elem, "must be finite");
            if (s.variable == SweepVariable::M && (std::floor(v) != v || v < 1.0))
                fail_field(elem, "element counts must be integers >= 1");
            if (s.variable == SweepVariable::Kappa && v < 0.0)
                fail_field(elem, "kappa must be >= 0");
            if (s.variable == SweepVariable::Zeta && !(v >= 0.0 && v <= 1.0))
                fail_field(elem, "zeta must lie in [0, 1]");
        }
        for (std::size_t i = 0; i < s.kappas.size(); ++i)
            if (!(s.kappas[i] >= 0.0))
                fail_field("sweep.kappas[" + std::to_string(i) + "]", "must be >= 0");
        for (std::size_t i = 0; i < s.powers_dbm.size(); ++i)
            if (!std::isfinite(s.powers_dbm[i]))
                fail_field("sweep.powers_dbm[" + std::to_string(i) + "]",
                           "must be finite");
    }

    if (cfg.optimize) {
        const SearchBox& b = cfg.optimize->box;
        const OptimizerSettings& s = cfg.optimize->settings;
        if (b.x_min > b.x_max) fail_field("optimize.x_min", "exceeds optimize.x_max");
        if (b.y_min > b.y_max) fail_field("optimize.y_min", "exceeds optimize.y_max");
        if (b.z_min > b.z_max) fail_field("optimize.z_min", "exceeds optimize.z_max");
        if (!(b.step > 0.0)) fail_field("optimize.step", "must be > 0");
        if (!(s.eps_position > 0.0)) fail_field("optimize.eps_position", "must be > 0");
        if (!(s.eps_zeta > 0.0)) fail_field("optimize.eps_zeta", "must be > 0");
        if (s.k_max < 1) fail_field("optimize.k_max", "must be >= 1");
        if (s.n_max_gss < 1) fail_field("optimize.n_max_gss", "must be >= 1");
    }
}

ScenarioConfig build(RawConfig raw, const std::string& origin) {
    ScenarioConfig cfg;

    auto pop = [&](const char* name) -> std::optional<RawSection> {
        const auto it = raw.find(name);
        if (it == raw.end()) return std::nullopt;
        RawSection sec = std::move(it->second);
        raw.erase(it);
        return sec;
    };
    auto pop_required = [&](const char* name) -> RawSection {
        auto sec = pop(name);
        if (!sec) throw ConfigError(origin + ": missing required section [" +
                                    std::string(name) + "]");
        return std::move(*sec);
    };

    {
        SectionReader r(pop_required("nodes"), "nodes", origin);
        cfg.layout.bs = as_triple(r.need("bs"), r.field("bs"));
        cfg.uav = as_triple(r.need("uav"), r.field("uav"));
        cfg.layout.reflect_users =
            as_triple_list(r.need("reflect_users"), r.field("reflect_users"));
        cfg.layout.transmit_users =
            as_triple_list(r.need("transmit_users"), r.field("transmit_users"));
        cfg.layout.reflect_eves =
            as_triple_list(r.need("reflect_eves"), r.field("reflect_eves"));
        cfg.layout.transmit_eves =
            as_triple_list(r.need("transmit_eves"), r.field("transmit_eves"));
        cfg.layout.pairing = as_pair_list(r.need("pairing"), r.field("pairing"));
        r.finish();
    }
    {
        SectionReader r(pop_required("fading"), "fading", origin);
        cfg.fading.m_bv = as_number(r.need("m_bv"), r.field("m_bv"));
        cfg.fading.m_vu_r = as_number(r.need("m_vu_r"), r.field("m_vu_r"));
        cfg.fading.m_vu_t = as_number(r.need("m_vu_t"), r.field("m_vu_t"));
        cfg.fading.m_ve_r = as_number(r.need("m_ve_r"), r.field("m_ve_r"));
        cfg.fading.m_ve_t = as_number(r.need("m_ve_t"), r.field("m_ve_t"));
        r.finish();
    }
    {
        SectionReader r(pop_required("power"), "power", origin);
        cfg.power.ps_dbm = as_number(r.need("ps_dbm"), r.field("ps_dbm"));
        if (auto v = r.take("n0_dbm")) cfg.power.n0_dbm = as_number(*v, r.field("n0_dbm"));
        cfg.power.rho = as_number(r.need("rho"), r.field("rho"));
        cfg.power.zeta = as_number(r.need("zeta"), r.field("zeta"));
        if (auto v = r.take("alpha_pl"))
            cfg.power.alpha_pl = as_number(*v, r.field("alpha_pl"));
        r.finish();
    }
    {
        SectionReader r(pop_required("phase"), "phase", origin);
        cfg.phase.kappa = as_number(r.need("kappa"), r.field("kappa"));
        r.finish();
    }
    {
        SectionReader r(pop_required("surface"), "surface", origin);
        const long long m = as_integer(r.need("elements"), r.field("elements"));
        if (m < 1 || m > 1000000) fail_field("surface.elements", "out of range");
        cfg.elements = static_cast<int>(m);
        r.finish();
    }
    if (auto sec = pop("weights")) {
        SectionReader r(std::move(*sec), "weights", origin);
        cfg.w1 = as_number(r.need("w1"), r.field("w1"));
        cfg.w2 = as_number(r.need("w2"), r.field("w2"));
        r.finish();
    }
    if (auto sec = pop("quadrature")) {
        SectionReader r(std::move(*sec), "quadrature", origin);
        const long long n = as_integer(r.need("order"), r.field("order"));
        if (n < 1 || n > 200)
            fail_field("quadrature.order", "out of range (expected 1 <= order <= 200)");
        cfg.quad_order = static_cast<int>(n);
        r.finish();
    }
    if (auto sec = pop("mc")) {
        SectionReader r(std::move(*sec), "mc", origin);
        if (auto v = r.take("trials")) cfg.mc.trials = as_uint64(*v, r.field("trials"));
        if (auto v = r.take("seed")) cfg.mc.seed = as_uint64(*v, r.field("seed"));
        if (auto v = r.take("eve_model"))
            cfg.mc.eve_phase_model =
                eve_model_from(as_token(*v, r.field("eve_model")), r.field("eve_model"));
        if (auto v = r.take("threads")) {
            const std::uint64_t t = as_uint64(*v, r.field("threads"));
            if (t > 1024) fail_field("mc.threads", "out of range");
            cfg.mc.threads = static_cast<unsigned>(t);
        }
        r.finish();
    }
    if (auto sec = pop("sweep")) {
        SectionReader r(std::move(*sec), "sweep", origin);
        SweepSpec spec;
        spec.variable =
            sweep_variable_from(as_token(r.need("variable"), r.field("variable")),
                                r.field("variable"));
        auto values = r.take("values");
        auto from = r.take("from");
        auto step = r.take("step");
        auto to = r.take("to");
        if (values && (from || step || to))
            fail_field("sweep.values", "conflicts with sweep.from/step/to");
        if (values) {
            spec.values = as_number_list(*values, r.field("values"));
        } else if (from && step && to) {
            const double lo = as_number(*from, r.field("from"));
            const double inc = as_number(*step, r.field("step"));
            const double hi = as_number(*to, r.field("to"));
            if (!(inc > 0.0)) fail_field("sweep.step", "must be > 0");
            if (lo > hi) fail_field("sweep.from", "exceeds sweep.to");
            for (double v = lo; v <= hi + inc * 1e-9; v += inc) spec.values.push_back(v);
        } else {
            fail_field("sweep.values", "give either values or from/step/to");
        }
        spec.outputs = as_token_list(r.need("outputs"), r.field("outputs"));
        if (auto v = r.take("kappas"))
            spec.kappas = as_number_list(*v, r.field("kappas"));
        if (auto v = r.take("powers_dbm"))
            spec.powers_dbm = as_number_list(*v, r.field("powers_dbm"));
        cfg.sweep = std::move(spec);
        r.finish();
    }
    if (auto sec = pop("optimize")) {
        SectionReader r(std::move(*sec), "optimize", origin);
        OptimizeSpec spec;
        if (auto v = r.take("x_min")) spec.box.x_min = as_number(*v, r.field("x_min"));
        if (auto v = r.take("x_max")) spec.box.x_max = as_number(*v, r.field("x_max"));
        if (auto v = r.take("y_min")) spec.box.y_min = as_number(*v, r.field("y_min"));
        if (auto v = r.take("y_max")) spec.box.y_max = as_number(*v, r.field("y_max"));
        if (auto v = r.take("z_min")) spec.box.z_min = as_number(*v, r.field("z_min"));
        if (auto v = r.take("z_max")) spec.box.z_max = as_number(*v, r.field("z_max"));
        if (auto v = r.take("step")) spec.box.step = as_number(*v, r.field("step"));
        if (auto v = r.take("eps_position"))
            spec.settings.eps_position = as_number(*v, r.field("eps_position"));
        if (auto v = r.take("k_max")) {
            const long long k = as_integer(*v, r.field("k_max"));
            if (k < 1 || k > 1000000) fail_field("optimize.k_max", "out of range");
            spec.settings.k_max = static_cast<int>(k);
        }
        if (auto v = r.take("eps_zeta"))
            spec.settings.eps_zeta = as_number(*v, r.field("eps_zeta"));
        if (auto v = r.take("n_max_gss")) {
            const long long n = as_integer(*v, r.field("n_max_gss"));
            if (n < 1 || n > 1000000) fail_field("optimize.n_max_gss", "out of range");
            spec.settings.n_max_gss = static_cast<int>(n);
        }
        cfg.optimize = std::move(spec);
        r.finish();
    }

    if (!raw.empty()) {
        const auto& [name, sec] = *raw.begin();
        fail_at(origin, sec.line, "unknown section [" + name + "]");
    }

    // The optimizer weights mirror the scenario weights; they are not
    // configured separately.
    if (cfg.optimize) {
        cfg.optimize->settings.w1 = cfg.w1;
        cfg.optimize->settings.w2 = cfg.w2;
    }

    validate(cfg);
    return cfg;
}

// ---- canonical serialization ----

std::string fmt(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt(const Position3D& p) {
    return "[" + fmt(p.x) + ", " + fmt(p.y) + ", " + fmt(p.z) + "]";
}

std::string fmt(const std::vector<Position3D>& nodes) {
    std::string out = "[";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += ", ";
        out += fmt(nodes[i]);
    }
    return out + "]";
}

std::string fmt(const std::vector<PairIndex>& pairs) {
    std::string out = "[";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) out += ", ";
        out += "(" + std::to_string(pairs[i].user) + ", " + std::to_string(pairs[i].eve) + ")";
    }
    return out + "]";
}

std::string fmt(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += fmt(values[i]);
    }
    return out + "]";
}

std::string fmt(const std::vector<std::string>& names) {
    std::string out = "[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out + "]";
}

}  // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file: " + path);
    return load_config_text(buf.str(), path);
}

ScenarioConfig load_config_text(const std::string& text, const std::string& origin) {
    return build(lex(text, origin), origin);
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "[nodes]\n";
    out << "bs = " << fmt(cfg.layout.bs) << "\n";
    out << "uav = " << fmt(cfg.uav) << "\n";
    out << "reflect_users = " << fmt(cfg.layout.reflect_users) << "\n";
    out << "transmit_users = " << fmt(cfg.layout.transmit_users) << "\n";
    out << "reflect_eves = " << fmt(cfg.layout.reflect_eves) << "\n";
    out << "transmit_eves = " << fmt(cfg.layout.transmit_eves) << "\n";
    out << "pairing = " << fmt(cfg.layout.pairing) << "\n";
    out << "\n[fading]\n";
    out << "m_bv = " << fmt(cfg.fading.m_bv) << "\n";
    out << "m_vu_r = " << fmt(cfg.fading.m_vu_r) << "\n";
    out << "m_vu_t = " << fmt(cfg.fading.m_vu_t) << "\n";
    out << "m_ve_r = " << fmt(cfg.fading.m_ve_r) << "\n";
    out << "m_ve_t = " << fmt(cfg.fading.m_ve_t) << "\n";
    out << "\n[power]\n";
    out << "ps_dbm = " << fmt(cfg.power.ps_dbm) << "\n";
    out << "n0_dbm = " << fmt(cfg.power.n0_dbm) << "\n";
    out << "rho = " << fmt(cfg.power.rho) << "\n";
    out << "zeta = " << fmt(cfg.power.zeta) << "\n";
    out << "alpha_pl = " << fmt(cfg.power.alpha_pl) << "\n";
    out << "\n[phase]\n";
    out << "kappa = " << fmt(cfg.phase.kappa) << "\n";
    out << "\n[surface]\n";
    out << "elements = " << cfg.elements << "\n";
    out << "\n[weights]\n";
    out << "w1 = " << fmt(cfg.w1) << "\n";
    out << "w2 = " << fmt(cfg.w2) << "\n";
    out << "\n[quadrature]\n";
    out << "order = " << cfg.quad_order << "\n";
    out << "\n[mc]\n";
    out << "trials = " << cfg.mc.trials << "\n";
    out << "seed = " << cfg.mc.seed << "\n";
    out << "eve_model = " << to_string(cfg.mc.eve_phase_model) << "\n";
    out << "threads = " << cfg.mc.threads << "\n";
    if (cfg.sweep) {
        const SweepSpec& s = *cfg.sweep;
        out << "\n[sweep]\n";
        out << "variable = " << to_string(s.variable) << "\n";
        out << "values = " << fmt(s.values) << "\n";
        out << "outputs = " << fmt(s.outputs) << "\n";
        out << "kappas = " << fmt(s.kappas) << "\n";
        out << "powers_dbm = " << fmt(s.powers_dbm) << "\n";
    }
    if (cfg.optimize) {
        const SearchBox& b = cfg.optimize->box;
        const OptimizerSettings& s = cfg.optimize->settings;
        out << "\n[optimize]\n";
        out << "x_min = " << fmt(b.x_min) << "\n";
        out << "x_max = " << fmt(b.x_max) << "\n";
        out << "y_min = " << fmt(b.y_min) << "\n";
        out << "y_max = " << fmt(b.y_max) << "\n";
        out << "z_min = " << fmt(b.z_min) << "\n";
        out << "z_max = " << fmt(b.z_max) << "\n";
        out << "step = " << fmt(b.step) << "\n";
        out << "eps_position = " << fmt(s.eps_position) << "\n";
        out << "k_max = " << s.k_max << "\n";
        out << "eps_zeta = " << fmt(s.eps_zeta) << "\n";
        out << "n_max_gss = " << s.n_max_gss << "\n";
    }
    return out.str();
}

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::PsDbm: return "ps_dbm";
        case SweepVariable::M: return "elements";
        case SweepVariable::Kappa: return "kappa";
        case SweepVariable::Zeta: return "zeta";
    }
    return "?";
}

const char* to_string(EvePhaseModel m) {
    return m == EvePhaseModel::ExactUniform ? "exact" : "approx";
}

}  // namespace starsec
