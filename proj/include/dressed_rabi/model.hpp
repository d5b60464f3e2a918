#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rabi {

/// Physical inputs of the two-level-plus-oscillator model.
/// All energies are in units of hbar*omega0 = 1; n is kept as a real so the
/// large-n regime (1e8 and beyond) is representable, and operations that use
/// it as a Fock index validate integrality at the call site.
struct ModelParams {
    double delta_e; // two-level splitting
    double omega0 = 1.0;
    double u;       // coupling energy
    double n;       // mean / reference photon number

    ModelParams(double delta_e_, double u_, double n_, double omega0_ = 1.0)
        : delta_e(delta_e_), omega0(omega0_), u(u_), n(n_)
    {
        if (!(delta_e > 0.0) || !std::isfinite(delta_e))
            throw std::invalid_argument("ModelParams: delta_e must be > 0");
        if (!(omega0 > 0.0) || !std::isfinite(omega0))
            throw std::invalid_argument("ModelParams: omega0 must be > 0");
        if (!(u >= 0.0) || !std::isfinite(u))
            throw std::invalid_argument("ModelParams: u must be >= 0");
        if (!(n >= 0.0) || !std::isfinite(n))
            throw std::invalid_argument("ModelParams: n must be >= 0");
    }
};

struct Coupling {
    double g; // dimensionless, g = U sqrt(n) / dE
};

inline Coupling coupling_g(const ModelParams& p)
{
    return {p.u * std::sqrt(p.n) / p.delta_e};
}

/// Inverse of coupling_g: build params from (dE, n, g).
inline ModelParams params_with_g(double delta_e, double n, double g)
{
    if (!(n > 0.0))
        throw std::invalid_argument("params_with_g: n must be > 0");
    if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("params_with_g: g must be >= 0");
    return ModelParams(delta_e, g * delta_e / std::sqrt(n), n);
}

// Requires n to be a non-negative integer when used as a Fock index.
inline long fock_index(double n)
{
    long k = std::lround(n);
    if (k < 0 || std::abs(n - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("photon number is not a non-negative integer Fock index");
    return k;
}

/// Plain-text key=value config ("delta_e", "u", "n", "g"); '#' starts a
/// comment. Specifying both u and g is an error.
inline ModelParams load_params(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                trimmed += c;
        if (trimmed.empty())
            continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trimmed.substr(0, eq);
        double value = 0;
        std::istringstream vs(trimmed.substr(eq + 1));
        if (!(vs >> value))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number for " + key);
        if (key != "delta_e" && key != "u" && key != "n" && key != "g")
            throw std::runtime_error(path + ": unknown key '" + key + "'");
        if (kv.count(key))
            throw std::runtime_error(path + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    if (!kv.count("delta_e") || !kv.count("n"))
        throw std::runtime_error(path + ": delta_e and n are required");
    if (kv.count("u") && kv.count("g"))
        throw std::runtime_error(path + ": specify either u or g, not both");
    if (kv.count("g"))
        return params_with_g(kv["delta_e"], kv["n"], kv["g"]);
    if (kv.count("u"))
        return ModelParams(kv["delta_e"], kv["u"], kv["n"]);
    throw std::runtime_error(path + ": one of u or g is required");
}

} // namespace rabi
