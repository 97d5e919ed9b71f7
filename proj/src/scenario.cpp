#include "hsbnet/scenario.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hsbnet/error.hpp"
#include "hsbnet/rng.hpp"

namespace hsbnet {

namespace {

// Stream tags for generate_scenario.
constexpr std::uint64_t kStationStream = 1;
constexpr std::uint64_t kUserPlacementStream = 2;
constexpr std::uint64_t kUserParamStream = 3;
constexpr std::uint64_t kLinkStream = 4;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

void check_range(const Range& r, const std::string& name) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
        throw ConfigError("range " + name + " is empty or non-finite");
    }
}

double draw(const Range& r, Rng& rng) { return r.lo + (r.hi - r.lo) * uniform01(rng); }

Position draw_in_disk(double radius, Rng& rng) {
    const double r = radius * std::sqrt(uniform01(rng));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

B2MFunction make_b2m(const GenerationConfig& cfg, double sigma) {
    if (cfg.b2m_kind == B2MFunction::Kind::Linear) {
        return B2MFunction::linear(sigma);
    }
    std::vector<B2MFunction::Breakpoint> pts{{0.0, 0.0}};
    double slope = sigma;
    double prev = 0.0;
    for (double knee : cfg.b2m_knees) {
        pts.push_back({knee, pts.back().msg_rate + slope * (knee - prev)});
        prev = knee;
        slope *= 0.5;
    }
    return B2MFunction::piecewise(std::move(pts));
}

void check_generation(const GenerationConfig& cfg) {
    if (cfg.num_users < 1) throw ConfigError("num_users must be >= 1");
    if (cfg.num_stations < 1) throw ConfigError("num_stations must be >= 1");
    if (!(cfg.radius > 0.0) || !std::isfinite(cfg.radius)) throw ConfigError("radius must be > 0");
    if (!(cfg.bandwidth > 0.0)) throw ConfigError("bandwidth must be > 0");
    if (!(cfg.sinr_std_db >= 0.0)) throw ConfigError("sinr_std_db must be >= 0");
    if (!(cfg.interference_factor >= 0.0)) throw ConfigError("interference_factor must be >= 0");
    check_range(cfg.tau, "tau");
    check_range(cfg.min_rate, "min_rate");
    check_range(cfg.rho, "rho");
    check_range(cfg.b2m_sigma, "b2m_sigma");
    if (cfg.tau.lo < 0.0 || cfg.tau.hi > 1.0) throw ConfigError("tau range must lie in [0, 1]");
    if (cfg.rho.lo <= 0.0 || cfg.rho.hi >= 1.0) throw ConfigError("rho range must lie in (0, 1)");
    if (cfg.b2m_sigma.lo <= 0.0) throw ConfigError("b2m_sigma must be > 0");
    if (cfg.min_rate.lo < 0.0) throw ConfigError("min_rate must be >= 0");
    if (cfg.b2m_kind == B2MFunction::Kind::PiecewiseLinear && cfg.b2m_knees.empty()) {
        throw ConfigError("piecewise B2M needs at least one knee");
    }
}

}  // namespace

double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double LinkModel::mean_sinr_linear() const { return std::pow(10.0, mean_sinr_db / 10.0); }

double LinkModel::spectral_efficiency() const { return std::log2(1.0 + mean_sinr_linear()); }

double path_loss_db(double distance_m) { return 34.0 + 40.0 * std::log10(std::max(distance_m, 1.0)); }

Grid<double> mean_sinr_db(const std::vector<MobileUser>& users, const std::vector<BaseStation>& stations,
                          double noise_power_dbm, double interference_factor) {
    const std::size_t U = users.size();
    const std::size_t J = stations.size();
    Grid<double> received(U, J);  // mW
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const double pl = path_loss_db(distance(users[i].position, stations[j].position));
            received(i, j) = dbm_to_mw(users[i].transmit_power_dbm - pl);
        }
    }
    const double noise = dbm_to_mw(noise_power_dbm);
    Grid<double> out(U, J);
    for (std::size_t j = 0; j < J; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < U; ++i) total += received(i, j);
        for (std::size_t i = 0; i < U; ++i) {
            const double interference = interference_factor * (total - received(i, j));
            out(i, j) = 10.0 * std::log10(received(i, j) / (noise + std::max(interference, 0.0)));
        }
    }
    return out;
}

Scenario generate_scenario(const GenerationConfig& cfg) {
    check_generation(cfg);

    Scenario s;
    s.system = cfg.system;
    s.rng_seed = cfg.seed;
    s.optimizer = cfg.optimizer;

    Rng station_rng = make_stream(cfg.seed, {kStationStream});
    for (int j = 0; j < cfg.num_stations; ++j) {
        BaseStation bs;
        bs.id = j;
        bs.position = draw_in_disk(cfg.radius, station_rng);
        bs.bandwidth = cfg.bandwidth;
        s.stations.push_back(bs);
    }

    Rng place_rng = make_stream(cfg.seed, {kUserPlacementStream});
    Rng param_rng = make_stream(cfg.seed, {kUserParamStream});
    for (int i = 0; i < cfg.num_users; ++i) {
        MobileUser mu;
        mu.id = i;
        mu.position = draw_in_disk(cfg.radius, place_rng);
        mu.arrival_rate = cfg.arrival_rate;
        mu.mu_match = cfg.mu_match;
        mu.mu_mismatch = cfg.mu_mismatch;
        mu.transmit_power_dbm = cfg.transmit_power_dbm;
        mu.beta_std = cfg.beta_std;
        mu.tau = draw(cfg.tau, param_rng);
        mu.min_rate = draw(cfg.min_rate, param_rng);
        s.users.push_back(mu);
    }

    const Grid<double> sinr = mean_sinr_db(s.users, s.stations, cfg.noise_power_dbm, cfg.interference_factor);
    s.links = Grid<LinkModel>(s.users.size(), s.stations.size());
    for (std::size_t j = 0; j < s.stations.size(); ++j) {
        // One stream per station keeps link draws stable when stations are added.
        Rng link_rng = make_stream(cfg.seed, {kLinkStream, j});
        for (std::size_t i = 0; i < s.users.size(); ++i) {
            LinkModel& l = s.links(i, j);
            l.mu_id = s.users[i].id;
            l.bs_id = s.stations[j].id;
            l.mean_sinr_db = sinr(i, j);
            l.sinr_std_db = cfg.sinr_std_db;
            l.rho = draw(cfg.rho, link_rng);
            l.b2m = make_b2m(cfg, draw(cfg.b2m_sigma, link_rng));
        }
    }

    validate(s);
    return s;
}

void validate(const Scenario& s) {
    const auto& sys = s.system;
    if (!(sys.slot_length > 0.0)) throw ValidationError("system.slot_length", "must be > 0");
    if (!(sys.packet_bits > 0.0)) throw ValidationError("system.packet_bits", "must be > 0");
    if (sys.buffer_size < 1) throw ValidationError("system.buffer_size", "must be >= 1");
    if (!(sys.latency_budget > 0.0)) throw ValidationError("system.latency_budget", "must be > 0");
    if (!(sys.loss_budget > 0.0 && sys.loss_budget < 1.0)) {
        throw ValidationError("system.loss_budget", "must lie in (0, 1)");
    }
    if (sys.num_slots < 1) throw ValidationError("system.num_slots", "must be >= 1");

    if (s.users.empty()) throw ValidationError("users", "at least one user required");
    if (s.stations.empty()) throw ValidationError("stations", "at least one station required");

    std::set<int> ids;
    for (std::size_t i = 0; i < s.users.size(); ++i) {
        const auto& u = s.users[i];
        const std::string at = "users[" + std::to_string(i) + "].";
        if (!ids.insert(u.id).second) throw ValidationError(at + "id", "duplicate id");
        if (!(u.arrival_rate > 0.0)) throw ValidationError(at + "arrival_rate", "must be > 0");
        if (!(u.tau >= 0.0 && u.tau <= 1.0)) throw ValidationError(at + "tau", "must lie in [0, 1]");
        if (!(u.mu_mismatch > 0.0)) throw ValidationError(at + "mu_mismatch", "must be > 0");
        if (!(u.mu_match > u.mu_mismatch)) {
            throw ValidationError(at + "mu_match", "must exceed mu_mismatch");
        }
        if (!(u.min_rate >= 0.0)) throw ValidationError(at + "min_rate", "must be >= 0");
        if (!(u.beta_std >= 0.0)) throw ValidationError(at + "beta_std", "must be >= 0");
        if (!std::isfinite(u.transmit_power_dbm)) throw ValidationError(at + "transmit_power_dbm", "not finite");
    }
    ids.clear();
    for (std::size_t j = 0; j < s.stations.size(); ++j) {
        const auto& b = s.stations[j];
        const std::string at = "stations[" + std::to_string(j) + "].";
        if (!ids.insert(b.id).second) throw ValidationError(at + "id", "duplicate id");
        if (!(b.bandwidth > 0.0) || !std::isfinite(b.bandwidth)) throw ValidationError(at + "bandwidth", "must be > 0");
    }

    if (s.links.rows() != s.users.size() || s.links.cols() != s.stations.size()) {
        throw ValidationError("links", "must cover every (user, station) pair exactly once");
    }
    for (std::size_t i = 0; i < s.users.size(); ++i) {
        for (std::size_t j = 0; j < s.stations.size(); ++j) {
            const auto& l = s.links(i, j);
            const std::string at = "links[" + std::to_string(i) + "][" + std::to_string(j) + "].";
            if (l.mu_id != s.users[i].id) throw ValidationError(at + "mu_id", "does not match user");
            if (l.bs_id != s.stations[j].id) throw ValidationError(at + "bs_id", "does not match station");
            if (!std::isfinite(l.mean_sinr_db)) throw ValidationError(at + "mean_sinr_db", "not finite");
            if (!(l.sinr_std_db >= 0.0)) throw ValidationError(at + "sinr_std_db", "must be >= 0");
            if (!(l.rho > 0.0 && l.rho < 1.0)) throw ValidationError(at + "rho", "must lie in (0, 1)");
        }
    }

    const auto& opt = s.optimizer;
    if (opt.max_iterations < 1) throw ValidationError("optimizer.max_iterations", "must be >= 1");
    if (!(opt.stepsize_scale > 0.0)) throw ValidationError("optimizer.stepsize_scale", "must be > 0");
    if (!(opt.tolerance >= 0.0)) throw ValidationError("optimizer.tolerance", "must be >= 0");
    if (!(opt.bisection_resolution_hz > 0.0)) {
        throw ValidationError("optimizer.bisection_resolution_hz", "must be > 0");
    }
    if (!(opt.bracket_factor >= 1.0)) throw ValidationError("optimizer.bracket_factor", "must be >= 1");
    if (opt.local_search_passes < 0) throw ValidationError("optimizer.local_search_passes", "must be >= 0");
}

}  // namespace hsbnet
