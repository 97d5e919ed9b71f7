#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "hsbnet/error.hpp"
#include "hsbnet/scenario.hpp"

namespace hsbnet {

using nlohmann::json;

namespace {

const char* variance_name(VarianceModel m) { return m == VarianceModel::Mixture ? "mixture" : "weighted-sum"; }

json b2m_to_json(const B2MFunction& f) {
    if (f.kind() == B2MFunction::Kind::Linear) {
        return {{"kind", "linear"}, {"sigma", f.sigma()}};
    }
    json pts = json::array();
    for (const auto& p : f.breakpoints()) pts.push_back({p.bit_rate, p.msg_rate});
    return {{"kind", "piecewise"}, {"breakpoints", pts}};
}

// Typed field access that reports the JSON pointer of whatever is wrong.
const json& field(const json& obj, const std::string& key, const std::string& at) {
    if (!obj.is_object()) throw ParseError(at, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(at + "/" + key, "missing field");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& at) {
    const json& v = field(obj, key, at);
    if (!v.is_number()) throw ParseError(at + "/" + key, "expected a number");
    return v.get<double>();
}

template <class Int>
Int integer(const json& obj, const std::string& key, const std::string& at) {
    const json& v = field(obj, key, at);
    if (!v.is_number_integer()) throw ParseError(at + "/" + key, "expected an integer");
    return v.get<Int>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& at) {
    return obj.contains(key) ? number(obj, key, at) : fallback;
}

B2MFunction b2m_from_json(const json& j, const std::string& at) {
    const json& kind = field(j, "kind", at);
    if (!kind.is_string()) throw ParseError(at + "/kind", "expected a string");
    if (kind == "linear") {
        return B2MFunction::linear(number(j, "sigma", at));
    }
    if (kind == "piecewise") {
        const json& arr = field(j, "breakpoints", at);
        if (!arr.is_array()) throw ParseError(at + "/breakpoints", "expected an array");
        std::vector<B2MFunction::Breakpoint> pts;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const json& p = arr[k];
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                throw ParseError(at + "/breakpoints/" + std::to_string(k), "expected [bit_rate, msg_rate]");
            }
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return B2MFunction::piecewise(std::move(pts));
    }
    throw ParseError(at + "/kind", "unknown B2M kind '" + kind.get<std::string>() + "'");
}

OptimizerConfig optimizer_from_json(const json& j, const std::string& at) {
    OptimizerConfig c;
    if (j.contains("max_iterations")) c.max_iterations = integer<int>(j, "max_iterations", at);
    c.stepsize_scale = number_or(j, "stepsize_scale", c.stepsize_scale, at);
    c.tolerance = number_or(j, "tolerance", c.tolerance, at);
    c.bisection_resolution_hz = number_or(j, "bisection_resolution_hz", c.bisection_resolution_hz, at);
    c.bracket_factor = number_or(j, "bracket_factor", c.bracket_factor, at);
    c.tau_threshold = number_or(j, "tau_threshold", c.tau_threshold, at);
    c.sinr_threshold_db = number_or(j, "sinr_threshold_db", c.sinr_threshold_db, at);
    if (j.contains("local_search_passes")) c.local_search_passes = integer<int>(j, "local_search_passes", at);
    if (j.contains("variance_model")) {
        const json& v = j["variance_model"];
        if (v == "mixture") {
            c.variance_model = VarianceModel::Mixture;
        } else if (v == "weighted-sum") {
            c.variance_model = VarianceModel::WeightedSum;
        } else {
            throw ParseError(at + "/variance_model", "expected \"mixture\" or \"weighted-sum\"");
        }
    }
    return c;
}

// Approximate line number of a byte offset, for nlohmann's syntax errors.
std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') ++line;
    }
    return line;
}

}  // namespace

std::string to_json_string(const Scenario& s) {
    json doc;
    doc["seed"] = s.rng_seed;
    doc["system"] = {
        {"slot_length", s.system.slot_length},       {"packet_bits", s.system.packet_bits},
        {"buffer_size", s.system.buffer_size},       {"latency_budget", s.system.latency_budget},
        {"loss_budget", s.system.loss_budget},       {"num_slots", s.system.num_slots},
    };
    json users = json::array();
    for (const auto& u : s.users) {
        users.push_back({
            {"id", u.id},
            {"x", u.position.x},
            {"y", u.position.y},
            {"arrival_rate", u.arrival_rate},
            {"tau", u.tau},
            {"mu_match", u.mu_match},
            {"mu_mismatch", u.mu_mismatch},
            {"min_rate", u.min_rate},
            {"transmit_power_dbm", u.transmit_power_dbm},
            {"beta_std", u.beta_std},
        });
    }
    doc["users"] = users;
    json stations = json::array();
    for (const auto& b : s.stations) {
        stations.push_back({{"id", b.id}, {"x", b.position.x}, {"y", b.position.y}, {"bandwidth", b.bandwidth}});
    }
    doc["stations"] = stations;
    json links = json::array();
    for (std::size_t i = 0; i < s.links.rows(); ++i) {
        for (std::size_t j = 0; j < s.links.cols(); ++j) {
            const auto& l = s.links(i, j);
            links.push_back({
                {"mu", l.mu_id},
                {"bs", l.bs_id},
                {"mean_sinr_db", l.mean_sinr_db},
                {"sinr_std_db", l.sinr_std_db},
                {"rho", l.rho},
                {"b2m", b2m_to_json(l.b2m)},
            });
        }
    }
    doc["links"] = links;
    const auto& o = s.optimizer;
    doc["optimizer"] = {
        {"max_iterations", o.max_iterations},
        {"stepsize_scale", o.stepsize_scale},
        {"tolerance", o.tolerance},
        {"bisection_resolution_hz", o.bisection_resolution_hz},
        {"bracket_factor", o.bracket_factor},
        {"tau_threshold", o.tau_threshold},
        {"sinr_threshold_db", o.sinr_threshold_db},
        {"variance_model", variance_name(o.variance_model)},
        {"local_search_passes", o.local_search_passes},
    };
    return doc.dump(2) + "\n";
}

Scenario from_json_string(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte)), e.what());
    }
    if (!doc.is_object()) throw ParseError("/", "expected a JSON object");

    Scenario s;
    if (doc.contains("seed")) s.rng_seed = integer<std::uint64_t>(doc, "seed", "");

    const json& sys = field(doc, "system", "");
    s.system.slot_length = number(sys, "slot_length", "/system");
    s.system.packet_bits = number(sys, "packet_bits", "/system");
    s.system.buffer_size = integer<int>(sys, "buffer_size", "/system");
    s.system.latency_budget = number(sys, "latency_budget", "/system");
    s.system.loss_budget = number(sys, "loss_budget", "/system");
    if (sys.contains("num_slots")) s.system.num_slots = integer<long long>(sys, "num_slots", "/system");

    const json& users = field(doc, "users", "");
    if (!users.is_array()) throw ParseError("/users", "expected an array");
    for (std::size_t i = 0; i < users.size(); ++i) {
        const std::string at = "/users/" + std::to_string(i);
        const json& u = users[i];
        MobileUser mu;
        mu.id = integer<int>(u, "id", at);
        mu.position = {number(u, "x", at), number(u, "y", at)};
        mu.arrival_rate = number(u, "arrival_rate", at);
        mu.tau = number(u, "tau", at);
        mu.mu_match = number(u, "mu_match", at);
        mu.mu_mismatch = number(u, "mu_mismatch", at);
        mu.min_rate = number(u, "min_rate", at);
        mu.transmit_power_dbm = number_or(u, "transmit_power_dbm", mu.transmit_power_dbm, at);
        mu.beta_std = number_or(u, "beta_std", mu.beta_std, at);
        s.users.push_back(mu);
    }

    const json& stations = field(doc, "stations", "");
    if (!stations.is_array()) throw ParseError("/stations", "expected an array");
    for (std::size_t j = 0; j < stations.size(); ++j) {
        const std::string at = "/stations/" + std::to_string(j);
        const json& b = stations[j];
        BaseStation bs;
        bs.id = integer<int>(b, "id", at);
        bs.position = {number(b, "x", at), number(b, "y", at)};
        bs.bandwidth = number(b, "bandwidth", at);
        s.stations.push_back(bs);
    }

    std::map<int, std::size_t> user_index;
    std::map<int, std::size_t> station_index;
    for (std::size_t i = 0; i < s.users.size(); ++i) user_index[s.users[i].id] = i;
    for (std::size_t j = 0; j < s.stations.size(); ++j) station_index[s.stations[j].id] = j;

    const json& links = field(doc, "links", "");
    if (!links.is_array()) throw ParseError("/links", "expected an array");
    s.links = Grid<LinkModel>(s.users.size(), s.stations.size());
    Grid<char> seen(s.users.size(), s.stations.size(), 0);
    for (std::size_t k = 0; k < links.size(); ++k) {
        const std::string at = "/links/" + std::to_string(k);
        const json& l = links[k];
        LinkModel lm;
        lm.mu_id = integer<int>(l, "mu", at);
        lm.bs_id = integer<int>(l, "bs", at);
        auto ui = user_index.find(lm.mu_id);
        auto bj = station_index.find(lm.bs_id);
        if (ui == user_index.end()) throw ValidationError("links[" + std::to_string(k) + "].mu", "unknown user id");
        if (bj == station_index.end()) throw ValidationError("links[" + std::to_string(k) + "].bs", "unknown station id");
        if (seen(ui->second, bj->second)) {
            throw ValidationError("links[" + std::to_string(k) + "]", "duplicate (mu, bs) pair");
        }
        seen(ui->second, bj->second) = 1;
        lm.mean_sinr_db = number(l, "mean_sinr_db", at);
        lm.sinr_std_db = number(l, "sinr_std_db", at);
        lm.rho = number(l, "rho", at);
        lm.b2m = b2m_from_json(field(l, "b2m", at), at + "/b2m");
        s.links(ui->second, bj->second) = lm;
    }
    for (std::size_t i = 0; i < s.users.size(); ++i) {
        for (std::size_t j = 0; j < s.stations.size(); ++j) {
            if (!seen(i, j)) {
                throw ValidationError("links", "missing pair (mu " + std::to_string(s.users[i].id) + ", bs " +
                                                   std::to_string(s.stations[j].id) + ")");
            }
        }
    }

    if (doc.contains("optimizer")) s.optimizer = optimizer_from_json(doc["optimizer"], "/optimizer");

    validate(s);
    return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << to_json_string(s);
    if (!out) throw Error("failed writing " + path.string());
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

}  // namespace hsbnet
