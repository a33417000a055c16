#include "visco/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace visco {

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> values;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad number '" + tok + "' for key " + key);
        }
    }
    if (values.empty()) throw std::invalid_argument("config: empty list for key " + key);
    return values;
}

std::string format_list(const std::vector<double>& values) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ",";
        os << values[i];
    }
    return os.str();
}

const std::set<std::string> kModes = {"run", "sweep-rates", "ensemble", "homogenize", "compare",
                                      "check"};

}  // namespace

void ExperimentConfig::validate() const {
    table.validate();
    if (eps_list.empty()) throw std::invalid_argument("config: eps_list must be nonempty");
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 1.0))
            throw std::invalid_argument("config: epsilon must be in (0, 1]");
    if (delta_list.empty()) throw std::invalid_argument("config: delta_list must be nonempty");
    for (double d : delta_list)
        if (!(d > 0.0)) throw std::invalid_argument("config: delta must be > 0");
    if (periods < 1) throw std::invalid_argument("config: periods must be >= 1");
    if (steps_per_period < 1)
        throw std::invalid_argument("config: steps_per_period must be >= 1");
    if (n_realizations < 1) throw std::invalid_argument("config: n_realizations must be >= 1");
    if (!(secant_tol > 0.0)) throw std::invalid_argument("config: secant_tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
    if (stride < 1) throw std::invalid_argument("config: stride must be >= 1");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    if (steps_per_period % stride != 0)
        throw std::invalid_argument("config: stride must divide steps_per_period");
    if (!kModes.count(mode)) throw std::invalid_argument("config: unknown mode '" + mode + "'");
    if (mode == "ensemble" && n_realizations < 2)
        throw std::invalid_argument("config: ensemble mode needs n_realizations >= 2");
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os.precision(17);
    os << "mode = " << mode << "\n";
    os << "table.a = " << format_list(table.a_values) << "\n";
    os << "table.mu = " << format_list(table.mu_values) << "\n";
    os << "table.nu = " << format_list(table.nu_values) << "\n";
    if (!table.a_weights.empty()) os << "table.a_weights = " << format_list(table.a_weights) << "\n";
    if (!table.mu_weights.empty())
        os << "table.mu_weights = " << format_list(table.mu_weights) << "\n";
    if (!table.nu_weights.empty())
        os << "table.nu_weights = " << format_list(table.nu_weights) << "\n";
    os << "eps_list = " << format_list(eps_list) << "\n";
    os << "delta_list = " << format_list(delta_list) << "\n";
    os << "periods = " << periods << "\n";
    os << "steps_per_period = " << steps_per_period << "\n";
    os << "n_realizations = " << n_realizations << "\n";
    os << "base_seed = " << base_seed << "\n";
    os << "secant_tol = " << secant_tol << "\n";
    os << "max_iter = " << max_iter << "\n";
    os << "observable_time = " << observable_time << "\n";
    os << "stride = " << stride << "\n";
    os << "output_dir = " << output_dir << "\n";
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a over the serialized form. jobs and output_dir are excluded: they
    // must not affect results, only where and how fast they are produced.
    std::istringstream lines(serialize());
    std::uint64_t h = 0xCBF29CE484222325ull;
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("output_dir", 0) == 0) continue;
        line += '\n';
        for (unsigned char c : line) {
            h ^= c;
            h *= 0x100000001B3ull;
        }
    }
    return h;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "mode") cfg.mode = value;
            else if (key == "table.a") cfg.table.a_values = parse_list(value, key);
            else if (key == "table.mu") cfg.table.mu_values = parse_list(value, key);
            else if (key == "table.nu") cfg.table.nu_values = parse_list(value, key);
            else if (key == "table.a_weights") cfg.table.a_weights = parse_list(value, key);
            else if (key == "table.mu_weights") cfg.table.mu_weights = parse_list(value, key);
            else if (key == "table.nu_weights") cfg.table.nu_weights = parse_list(value, key);
            else if (key == "epsilon" || key == "eps_list") cfg.eps_list = parse_list(value, key);
            else if (key == "delta" || key == "delta_list") cfg.delta_list = parse_list(value, key);
            else if (key == "periods") cfg.periods = std::stoi(value);
            else if (key == "steps_per_period") cfg.steps_per_period = std::stoi(value);
            else if (key == "n_realizations") cfg.n_realizations = std::stoi(value);
            else if (key == "base_seed") cfg.base_seed = std::stoull(value);
            else if (key == "secant_tol") cfg.secant_tol = std::stod(value);
            else if (key == "max_iter") cfg.max_iter = std::stoi(value);
            else if (key == "observable_time") cfg.observable_time = std::stod(value);
            else if (key == "stride") cfg.stride = std::stoi(value);
            else if (key == "jobs") cfg.jobs = std::stoi(value);
            else if (key == "output_dir") cfg.output_dir = value;
            else
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": bad value for key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return parse(in);
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "figure2" || name == "figure2-full") {
        cfg.mode = "sweep-rates";
        cfg.eps_list = {1.0 / 200};
        cfg.delta_list = {1.0, 0.25, 0.0625, 0.015625, 0.00390625};  // {1, 2^-2, ..., 2^-8}
        if (name == "figure2") cfg.steps_per_period = 1000;
    } else if (name == "figure3" || name == "figure3-full") {
        cfg.mode = "ensemble";
        cfg.eps_list = {1.0 / 1600};
        cfg.delta_list = {0.1};
        if (name == "figure3") {
            cfg.eps_list = {1.0 / 400};
            cfg.n_realizations = 20;
            cfg.steps_per_period = 1000;
        }
    } else if (name == "figure4" || name == "figure4-full") {
        cfg.mode = "ensemble";
        cfg.eps_list = {1.0 / 100, 1.0 / 200, 1.0 / 400, 1.0 / 800, 1.0 / 1600};
        cfg.delta_list = {0.1};
        if (name == "figure4") {
            cfg.eps_list = {1.0 / 100, 1.0 / 200, 1.0 / 400, 1.0 / 800};
            cfg.n_realizations = 30;
            cfg.periods = 1;
            cfg.steps_per_period = 1000;
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return cfg;
}

}  // namespace visco
