#include "skinchain/config.hpp"
#include "skinchain/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace skinchain::config {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for " + key + ": '" + value + "'");
    }
}

// "[1, 11]" or "1 11" -> {1, 11}
std::vector<int> to_int_list(const std::string& key, std::string value) {
    if (!value.empty() && value.front() == '[' && value.back() == ']')
        value = value.substr(1, value.size() - 2);
    for (char& c : value)
        if (c == ',') c = ' ';
    std::vector<int> out;
    std::stringstream ss(value);
    std::string tok;
    while (ss >> tok) out.push_back(to_int(key, tok));
    if (out.empty())
        throw ConfigError("config: empty list for " + key);
    return out;
}

} // namespace

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);

    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));

        if (key == "chain.L") cfg.chain.L = to_int(key, value);
        else if (key == "chain.J") cfg.chain.J = to_double(key, value);
        else if (key == "chain.eps") cfg.chain.eps = to_double(key, value);
        else if (key == "chain.J_R") cfg.chain.J_R = to_double(key, value);
        else if (key == "chain.J_L") cfg.chain.J_L = to_double(key, value);
        else if (key == "protocol.kind") cfg.kind = value;
        else if (key == "protocol.initial_sites") cfg.initial_sites = to_int_list(key, value);
        else if (key == "protocol.tau") cfg.tau = to_double(key, value);
        else if (key == "protocol.eps1") cfg.eps1 = to_double(key, value);
        else if (key == "protocol.tau_min") cfg.tau_min = to_double(key, value);
        else if (key == "protocol.tau_max") cfg.tau_max = to_double(key, value);
        else if (key == "protocol.tau_step") cfg.tau_step = to_double(key, value);
        else if (key == "numerics.threshold") cfg.threshold = to_double(key, value);
        else if (key == "numerics.dt") cfg.dt = to_double(key, value);
        else if (key == "numerics.horizon") cfg.horizon = to_double(key, value);
        else if (key == "numerics.integrator_tol") cfg.integrator_tol = to_double(key, value);
        else if (key == "numerics.trel_mode") cfg.trel_mode = value;
        else if (key == "output.dir") cfg.out_dir = value;
        else if (key == "output.format") cfg.format = value;
        else if (key == "output.seed") cfg.seed = static_cast<std::uint64_t>(
                     std::stoull(value));
        else throw ConfigError("config: unknown key '" + key + "' at line " +
                               std::to_string(lineno));
    }
}

void RunConfig::validate() const {
    try {
        chain.validate(true);
    } catch (const ContractViolation& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (kind != "direct" && kind != "pontus" && kind != "both")
        throw ConfigError("config: protocol.kind must be direct, pontus or both");
    if (initial_sites.empty())
        throw ConfigError("config: protocol.initial_sites must not be empty");
    for (int s : initial_sites)
        if (s < 1 || s > chain.L)
            throw ConfigError("config: initial site out of range");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("config: numerics.threshold must lie in (0, 1)");
    if (!(dt > 0.0))
        throw ConfigError("config: numerics.dt must be positive");
    if (!(horizon > 0.0))
        throw ConfigError("config: numerics.horizon must be positive");
    if (!(integrator_tol > 0.0))
        throw ConfigError("config: numerics.integrator_tol must be positive");
    if (trel_mode != "settling" && trel_mode != "first-crossing")
        throw ConfigError("config: numerics.trel_mode must be settling or first-crossing");
    if (format != "csv" && format != "json")
        throw ConfigError("config: output.format must be csv or json");
    if (tau < 0.0 || eps1 < 0.0)
        throw ConfigError("config: protocol.tau and protocol.eps1 must be nonnegative");
}

dynamics::TrelMode RunConfig::parsed_trel_mode() const {
    return trel_mode == "first-crossing" ? dynamics::TrelMode::first_crossing
                                         : dynamics::TrelMode::settling;
}

dynamics::ProtocolOptions RunConfig::protocol_options(bool early_stop) const {
    dynamics::ProtocolOptions opts;
    opts.dt = dt;
    opts.horizon = horizon;
    opts.integrator_tol = integrator_tol;
    opts.early_stop = early_stop;
    opts.trel_mode = parsed_trel_mode();
    return opts;
}

std::vector<double> RunConfig::sweep_tau_grid() const {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min) || !(tau_step > 0.0))
        throw ConfigError("config: sweep requires 0 < tau_min <= tau_max and tau_step > 0");
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((tau_max - tau_min) / tau_step + 1e-9)) + 1;
    grid.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid.push_back(tau_min + tau_step * i);
    return grid;
}

double RunConfig::effective_eps1() const {
    if (eps1 > 0.0) return eps1;
    if (!(tau > 0.0))
        throw ConfigError("config: pontus needs protocol.tau or protocol.eps1");
    return std::numbers::pi / (2.0 * tau);
}

} // namespace skinchain::config
