#include "visco/environment.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace visco {

namespace {

void check_weights(const std::vector<double>& values, const std::vector<double>& weights,
                   const char* what) {
    if (weights.empty()) return;
    if (weights.size() != values.size())
        throw std::invalid_argument(std::string("ParameterTable: ") + what +
                                    " weights size mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("ParameterTable: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument(std::string("ParameterTable: ") + what +
                                    " weights must sum to 1");
}

// Weighted (or uniform) pick from a finite list, driven by one uniform draw.
template <typename T>
std::size_t pick(const std::vector<T>& values, const std::vector<double>& weights, double u) {
    if (weights.empty())
        return std::min<std::size_t>(static_cast<std::size_t>(u * values.size()),
                                     values.size() - 1);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
        acc += weights[k];
        if (u < acc) return k;
    }
    return weights.size() - 1;
}

// Streams for the per-realization random draws.
enum : std::uint64_t { kShiftStream = 0, kAStream = 1, kMuStream = 2, kNuStream = 3 };

}  // namespace

void ParameterTable::validate() const {
    if (a_values.empty() || mu_values.empty() || nu_values.empty())
        throw std::invalid_argument("ParameterTable: empty value list");
    for (double a : a_values)
        if (!(a > 0.0)) throw std::invalid_argument("ParameterTable: a values must be > 0");
    for (double m : mu_values)
        if (!(m >= 0.0)) throw std::invalid_argument("ParameterTable: mu values must be >= 0");
    for (double n : nu_values)
        if (!(n > 0.0)) throw std::invalid_argument("ParameterTable: nu values must be > 0");
    check_weights(a_values, a_weights, "a");
    check_weights(mu_values, mu_weights, "mu");
    check_weights(nu_values, nu_weights, "nu");
}

double ParameterTable::min_nu() const { return *std::min_element(nu_values.begin(), nu_values.end()); }
double ParameterTable::max_nu() const { return *std::max_element(nu_values.begin(), nu_values.end()); }
double ParameterTable::max_mu() const { return *std::max_element(mu_values.begin(), mu_values.end()); }
double ParameterTable::min_mu() const { return *std::min_element(mu_values.begin(), mu_values.end()); }
double ParameterTable::max_a() const { return *std::max_element(a_values.begin(), a_values.end()); }

bool ParameterTable::is_viscous() const { return max_mu() == 0.0; }

double ParameterTable::growth_C() const {
    return std::max({0.5 * max_nu() + max_mu(), max_mu(), 1.0});
}

double ParameterTable::mean_a() const {
    if (a_weights.empty())
        return std::accumulate(a_values.begin(), a_values.end(), 0.0) /
               static_cast<double>(a_values.size());
    double m = 0.0;
    for (std::size_t k = 0; k < a_values.size(); ++k) m += a_weights[k] * a_values[k];
    return m;
}

ParameterTable ParameterTable::reference() {
    ParameterTable t;
    t.a_values = {1.0, 3.0};
    t.mu_values = {0.0, 0.4, 0.7};
    t.nu_values = {0.05, 0.1};
    return t;
}

ParameterTable ParameterTable::reference_viscous() {
    ParameterTable t = reference();
    t.mu_values = {0.0};
    return t;
}

ParameterTable ParameterTable::reference_sticky() {
    ParameterTable t = reference();
    t.mu_values = {0.4, 0.7};
    return t;
}

double Environment::total_weight() const {
    double s = 0.0;
    for (const Cell& c : cells) s += c.weight;
    return s;
}

namespace {

// Cell weights for a lattice with shift p at scale eps: cell i occupies
// [eps(p+i), eps(p+i+1)) and contributes its overlap with [0,1].
std::vector<double> cell_weights(double epsilon, double shift, std::size_t& n_out) {
    const std::size_t n = static_cast<std::size_t>(std::ceil(1.0 / epsilon));
    n_out = n;
    std::vector<double> w(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double lo = std::max(0.0, epsilon * (shift + static_cast<double>(i)));
        const double hi = std::min(1.0, epsilon * (shift + static_cast<double>(i) + 1.0));
        w[i] = std::max(0.0, hi - lo);
    }
    return w;
}

}  // namespace

Environment sample_environment(const ParameterTable& table, double epsilon, Seed seed) {
    table.validate();
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("sample_environment: epsilon must be in (0, 1]");

    const rng::Key key = seed.key();
    // shift uniform in (-1, 0]
    const double shift = -key.uniform01(kShiftStream, 0);

    Environment env;
    env.epsilon = epsilon;
    env.shift = shift;
    env.seed = seed;

    std::size_t n = 0;
    const std::vector<double> w = cell_weights(epsilon, shift, n);
    env.cells.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        Cell& c = env.cells[i];
        c.weight = w[i];
        c.elastic.a = table.a_values[pick(table.a_values, table.a_weights,
                                          key.uniform01(kAStream, i))];
        c.dissipation.mu = table.mu_values[pick(table.mu_values, table.mu_weights,
                                                key.uniform01(kMuStream, i))];
        c.dissipation.nu = table.nu_values[pick(table.nu_values, table.nu_weights,
                                                key.uniform01(kNuStream, i))];
    }
    return env;
}

Environment periodic_environment(
    const std::vector<std::pair<ElasticParams, DissipationParams>>& profile, double epsilon,
    double shift) {
    if (profile.empty()) throw std::invalid_argument("periodic_environment: empty profile");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("periodic_environment: epsilon must be in (0, 1]");
    if (!(shift > -1.0 && shift <= 0.0))
        throw std::invalid_argument("periodic_environment: shift must be in (-1, 0]");

    Environment env;
    env.epsilon = epsilon;
    env.shift = shift;

    std::size_t n = 0;
    const std::vector<double> w = cell_weights(epsilon, shift, n);
    env.cells.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const auto& [e, d] = profile[i % profile.size()];
        env.cells[i] = Cell{w[i], e, d};
    }
    return env;
}

void Environment::save(std::ostream& out) const {
    out.precision(17);
    out << "# visco environment\n";
    out << "epsilon " << epsilon << "\n";
    out << "shift " << shift << "\n";
    out << "seed " << seed.value << " " << seed.realization_index << "\n";
    out << "cells " << cells.size() << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        out << i << " " << c.weight << " " << c.elastic.a << " " << c.dissipation.mu << " "
            << c.dissipation.nu << "\n";
    }
}

Environment Environment::load(std::istream& in) {
    Environment env;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# visco environment", 0) != 0)
        throw std::runtime_error("Environment::load: bad header");
    std::string tag;
    std::size_t count = 0;
    in >> tag >> env.epsilon;
    if (tag != "epsilon") throw std::runtime_error("Environment::load: expected epsilon");
    in >> tag >> env.shift;
    if (tag != "shift") throw std::runtime_error("Environment::load: expected shift");
    in >> tag >> env.seed.value >> env.seed.realization_index;
    if (tag != "seed") throw std::runtime_error("Environment::load: expected seed");
    in >> tag >> count;
    if (tag != "cells") throw std::runtime_error("Environment::load: expected cells");
    env.cells.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx = 0;
        Cell& c = env.cells[i];
        in >> idx >> c.weight >> c.elastic.a >> c.dissipation.mu >> c.dissipation.nu;
        if (!in || idx != i) throw std::runtime_error("Environment::load: bad cell record");
    }
    return env;
}

}  // namespace visco
