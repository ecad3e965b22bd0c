#include "vortexlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vortexlab/fft.hpp"

namespace vlab {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for key '" + key + "': " + v, line);
    }
}

int to_int(const std::string& v, const std::string& key, int line) {
    double d = to_double(v, key, line);
    if (d != std::floor(d)) throw ConfigError("config: key '" + key + "' must be an integer", line);
    return static_cast<int>(d);
}

bool to_switch(const std::string& v, const std::string& key, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' must be on/off", line);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ScenarioConfig ScenarioConfig::parse(const std::string& text) {
    ScenarioConfig cfg;
    cfg.kernels = {KernelSpec{}};
    cfg.lambdas = {7.0};

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected 'key = value': " + raw, lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "p") cfg.solver.p = to_double(value, key, lineno);
        else if (key == "T") cfg.solver.T = to_double(value, key, lineno);
        else if (key == "grid.n") cfg.solver.n = to_int(value, key, lineno);
        else if (key == "grid.L") cfg.solver.L = to_double(value, key, lineno);
        else if (key == "grid.M") cfg.solver.M = to_int(value, key, lineno);
        else if (key == "grid.gamma") cfg.solver.grid_gamma = to_double(value, key, lineno);
        else if (key == "noise.N") cfg.noise_N = to_int(value, key, lineno);
        else if (key == "noise.kernel") {
            cfg.kernels.clear();
            for (const auto& item : split(value, ';')) {
                try {
                    cfg.kernels.push_back(KernelSpec::parse(item));
                } catch (const std::exception& e) {
                    throw ConfigError(std::string("config: ") + e.what(), lineno);
                }
            }
            if (cfg.kernels.empty()) throw ConfigError("config: noise.kernel is empty", lineno);
        } else if (key == "noise.lambda") {
            cfg.lambdas.clear();
            for (const auto& item : split(value, ';'))
                cfg.lambdas.push_back(to_double(item, key, lineno));
            if (cfg.lambdas.empty()) throw ConfigError("config: noise.lambda is empty", lineno);
        } else if (key == "u0.preset") cfg.u0_preset = value;
        else if (key == "u0.norm32") cfg.u0_norm32 = to_double(value, key, lineno);
        else if (key == "picard.tol") cfg.solver.tol = to_double(value, key, lineno);
        else if (key == "picard.max_iter") cfg.solver.max_iter = to_int(value, key, lineno);
        else if (key == "picard.nonlinearity") cfg.solver.nonlinearity_enabled = to_switch(value, key, lineno);
        else if (key == "constants.C1") cfg.solver.C1 = to_double(value, key, lineno);
        else if (key == "constants.C2") cfg.solver.C2 = to_double(value, key, lineno);
        else if (key == "constants.Cstar") cfg.solver.Cstar = to_double(value, key, lineno);
        else if (key == "snapshots") {
            cfg.snapshot_times.clear();
            for (const auto& item : split(value, ',')) cfg.snapshot_times.push_back(to_double(item, key, lineno));
        } else if (key == "pairing.modes") {
            cfg.pairing_modes.clear();
            for (const auto& triple : split(value, ';')) {
                std::istringstream ts(triple);
                std::array<int, 3> m{};
                if (!(ts >> m[0] >> m[1] >> m[2]))
                    throw ConfigError("config: pairing.modes entries are integer triples", lineno);
                cfg.pairing_modes.push_back(m);
            }
        } else if (key == "mc.mode") {
            if (value != "solve" && value != "hitting")
                throw ConfigError("config: mc.mode must be solve|hitting", lineno);
            cfg.mc_mode = value;
        } else if (key == "mc.nu") cfg.mc_nu = to_double(value, key, lineno);
        else if (key == "mc.r") cfg.mc_r = to_double(value, key, lineno);
        else if (key == "mc.tmax") cfg.mc_tmax = to_double(value, key, lineno);
        else if (key == "mc.dt") cfg.mc_dt = to_double(value, key, lineno);
        else throw ConfigError("config: unknown key '" + key + "'", lineno);
    }

    // broadcast single kernel/lambda across channels, then cross-check
    if (cfg.noise_N < 0) throw ConfigError("config: noise.N must be >= 0", 0);
    auto n = static_cast<std::size_t>(cfg.noise_N);
    if (cfg.kernels.size() == 1 && n > 1) cfg.kernels.assign(n, cfg.kernels[0]);
    if (cfg.lambdas.size() == 1 && n > 1) cfg.lambdas.assign(n, cfg.lambdas[0]);
    if (cfg.noise_N == 0) {
        cfg.kernels.clear();
        cfg.lambdas.clear();
    }
    if (cfg.kernels.size() != n || cfg.lambdas.size() != n)
        throw ConfigError("config: noise.kernel/noise.lambda count must match noise.N", 0);

    try {
        cfg.solver.validate();
        (void)cfg.make_grid();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what(), 0);
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ScenarioConfig::effective() const {
    std::ostringstream os;
    os << "p = " << fmt(solver.p) << "\n";
    os << "T = " << fmt(solver.T) << "\n";
    os << "grid.n = " << solver.n << "\n";
    os << "grid.L = " << fmt(solver.L) << "\n";
    os << "grid.M = " << solver.M << "\n";
    os << "grid.gamma = " << fmt(solver.grid_gamma) << "\n";
    os << "noise.N = " << noise_N << "\n";
    if (!kernels.empty()) {
        os << "noise.kernel = ";
        for (std::size_t i = 0; i < kernels.size(); ++i)
            os << (i ? "; " : "") << kernels[i].str();
        os << "\n";
        os << "noise.lambda = ";
        for (std::size_t i = 0; i < lambdas.size(); ++i) os << (i ? "; " : "") << fmt(lambdas[i]);
        os << "\n";
    }
    os << "u0.preset = " << u0_preset << "\n";
    os << "u0.norm32 = " << fmt(u0_norm32) << "\n";
    os << "picard.tol = " << fmt(solver.tol) << "\n";
    os << "picard.max_iter = " << solver.max_iter << "\n";
    os << "picard.nonlinearity = " << (solver.nonlinearity_enabled ? "on" : "off") << "\n";
    os << "constants.C1 = " << fmt(solver.C1) << "\n";
    os << "constants.C2 = " << fmt(solver.C2) << "\n";
    os << "constants.Cstar = " << fmt(solver.Cstar) << "\n";
    if (!snapshot_times.empty()) {
        os << "snapshots = ";
        for (std::size_t i = 0; i < snapshot_times.size(); ++i)
            os << (i ? ", " : "") << fmt(snapshot_times[i]);
        os << "\n";
    }
    os << "pairing.modes = ";
    for (std::size_t i = 0; i < pairing_modes.size(); ++i)
        os << (i ? "; " : "") << pairing_modes[i][0] << ' ' << pairing_modes[i][1] << ' '
           << pairing_modes[i][2];
    os << "\n";
    os << "mc.mode = " << mc_mode << "\n";
    os << "mc.nu = " << fmt(mc_nu) << "\n";
    os << "mc.r = " << fmt(mc_r) << "\n";
    os << "mc.tmax = " << fmt(mc_tmax) << "\n";
    os << "mc.dt = " << fmt(mc_dt) << "\n";
    os << "# derived: q = " << fmt(solver.q()) << ", r1 = " << fmt(solver.r1())
       << ", q' = " << fmt(solver.qprime()) << "\n";
    os << "# effective: C1 = " << fmt(solver.c1()) << ", C2 = " << fmt(solver.c2())
       << ", C* = " << fmt(solver.cstar()) << "\n";
    return os.str();
}

NoiseModel ScenarioConfig::make_noise(const GridSpec& grid) const {
    return NoiseModel(grid, kernels, lambdas);
}

std::vector<SpectralVectorField> ScenarioConfig::pairing_functions(const GridSpec& grid) const {
    std::vector<SpectralVectorField> out;
    for (const auto& mode : pairing_modes) {
        PhysicalVectorField phi(grid);
        double kx = 2.0 * M_PI / grid.L * mode[0];
        double ky = 2.0 * M_PI / grid.L * mode[1];
        double kz = 2.0 * M_PI / grid.L * mode[2];
        std::size_t idx = 0;
        for (int ix = 0; ix < grid.n; ++ix) {
            for (int iy = 0; iy < grid.n; ++iy) {
                for (int iz = 0; iz < grid.n; ++iz, ++idx) {
                    double arg = kx * grid.coord(ix) + ky * grid.coord(iy) + kz * grid.coord(iz);
                    phi.comp[0][idx] = std::cos(arg);
                    phi.comp[1][idx] = std::sin(arg);
                }
            }
        }
        out.push_back(to_spectral(phi));
    }
    return out;
}

} // namespace vlab
