#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "conint/csv.hpp"
#include "conint/experiment.hpp"

namespace conint {

std::string find_data_file(const std::string& relative) {
    namespace fs = std::filesystem;
    if (fs::exists(relative)) return relative;
    const fs::path local = fs::path("data") / relative;
    if (fs::exists(local)) return local.string();
#ifdef CONINT_SOURCE_DATA_DIR
    const fs::path source = fs::path(CONINT_SOURCE_DATA_DIR) / relative;
    if (fs::exists(source)) return source.string();
#endif
    return relative;  // let the open fail with the plain name
}

namespace {

double parse_field(const std::string& field, const std::string& column, int line,
                   const std::string& path) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::runtime_error(path + " line " + std::to_string(line) + ": column '" +
                                 column + "' is not a number ('" + field + "')");
    }
}

}  // namespace

BodySet load_bodies(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_bodies: cannot open " + path);

    BodySet set;
    std::string raw;
    int line = 0;
    std::vector<std::string> header;

    while (std::getline(in, raw)) {
        ++line;
        if (raw.empty() || raw == "\r") continue;
        if (raw[0] == '#') {
            // metadata: "# key: value"
            const auto colon = raw.find(':');
            if (colon == std::string::npos) continue;
            std::string key = raw.substr(1, colon - 1);
            std::string value = raw.substr(colon + 1);
            auto strip = [](std::string& s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
                while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
            };
            strip(key);
            strip(value);
            if (key == "G") {
                set.G = parse_field(value, "G", line, path);
                set.has_G = true;
            } else if (key == "dim") {
                set.dim = static_cast<int>(parse_field(value, "dim", line, path));
            } else if (key == "units") {
                set.units = value;
            }
            continue;
        }
        if (header.empty()) {
            header = split_csv_line(raw);
            // label,mass,{position},{velocity}
            std::vector<std::string> expected = {"label", "mass"};
            const char* pos2[] = {"x", "y"};
            const char* pos3[] = {"x", "y", "z"};
            const char* vel2[] = {"vx", "vy"};
            const char* vel3[] = {"vx", "vy", "vz"};
            for (int d = 0; d < set.dim; ++d)
                expected.push_back(set.dim == 2 ? pos2[d] : pos3[d]);
            for (int d = 0; d < set.dim; ++d)
                expected.push_back(set.dim == 2 ? vel2[d] : vel3[d]);
            if (header.size() != expected.size())
                throw std::runtime_error(path + ": header has " +
                                         std::to_string(header.size()) + " columns, expected " +
                                         std::to_string(expected.size()) + " for dim " +
                                         std::to_string(set.dim));
            for (std::size_t c = 0; c < expected.size(); ++c)
                if (header[c] != expected[c])
                    throw std::runtime_error(path + ": missing or misplaced column '" +
                                             expected[c] + "' (found '" + header[c] + "')");
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(raw);
        if (fields.size() != header.size())
            throw std::runtime_error(path + " line " + std::to_string(line) + ": expected " +
                                     std::to_string(header.size()) + " fields");
        BodyRecord body;
        body.label = fields[0];
        body.mass = parse_field(fields[1], "mass", line, path);
        if (!(body.mass > 0.0))
            throw std::runtime_error(path + " line " + std::to_string(line) +
                                     ": mass must be > 0");
        for (int d = 0; d < set.dim; ++d)
            body.position[static_cast<std::size_t>(d)] =
                parse_field(fields[2 + static_cast<std::size_t>(d)], header[2 + d], line, path);
        for (int d = 0; d < set.dim; ++d)
            body.velocity[static_cast<std::size_t>(d)] = parse_field(
                fields[2 + set.dim + static_cast<std::size_t>(d)], header[2 + set.dim + d],
                line, path);
        set.bodies.push_back(std::move(body));
    }
    if (header.empty()) throw std::runtime_error(path + ": missing header row");
    if (set.bodies.empty()) throw std::runtime_error(path + ": no body records");
    return set;
}

void save_bodies(const BodySet& set, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_bodies: cannot open " + path);
    if (!set.units.empty()) out << "# units: " << set.units << "\n";
    if (set.has_G) out << "# G: " << format_full(set.G) << "\n";
    out << "# dim: " << set.dim << "\n";
    out << "label,mass";
    out << (set.dim == 2 ? ",x,y,vx,vy" : ",x,y,z,vx,vy,vz");
    out << "\n";
    for (const auto& b : set.bodies) {
        out << csv_escape(b.label) << ',' << format_full(b.mass);
        for (int d = 0; d < set.dim; ++d)
            out << ',' << format_full(b.position[static_cast<std::size_t>(d)]);
        for (int d = 0; d < set.dim; ++d)
            out << ',' << format_full(b.velocity[static_cast<std::size_t>(d)]);
        out << '\n';
    }
}

std::pair<NBodySystem, PhaseState> assemble_nbody(const BodySet& set,
                                                  const RadialPotential& potential) {
    NBodySystem sys;
    sys.n = set.bodies.size();
    sys.dim = set.dim;
    sys.potential = potential;
    sys.masses.reserve(sys.n);
    for (const auto& b : set.bodies) sys.masses.push_back(b.mass);
    sys.validate();

    PhaseState state(sys.phase_dim());
    const auto dim = static_cast<std::size_t>(set.dim);
    for (std::size_t i = 0; i < sys.n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            state[i * dim + d] = set.bodies[i].position[d];
            state[(sys.n + i) * dim + d] = set.bodies[i].mass * set.bodies[i].velocity[d];
        }
    }
    return {std::move(sys), std::move(state)};
}

VortexEnsemble load_ensemble(const std::string& path, bool sphere) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_ensemble: cannot open " + path);
    const std::size_t coords = sphere ? 3 : 2;

    std::string raw;
    int line = 0;
    std::vector<std::string> header;
    std::vector<double> gamma;
    std::vector<std::array<double, 3>> points;
    while (std::getline(in, raw)) {
        ++line;
        if (raw.empty() || raw == "\r" || raw[0] == '#') continue;
        if (header.empty()) {
            header = split_csv_line(raw);
            const std::vector<std::string> expected =
                sphere ? std::vector<std::string>{"gamma", "x", "y", "z"}
                       : std::vector<std::string>{"gamma", "x", "y"};
            if (header != expected)
                throw std::runtime_error(path + ": ensemble header must be gamma,x,y" +
                                         std::string(sphere ? ",z" : ""));
            continue;
        }
        const auto fields = split_csv_line(raw);
        if (fields.size() != coords + 1)
            throw std::runtime_error(path + " line " + std::to_string(line) +
                                     ": wrong field count");
        gamma.push_back(parse_field(fields[0], "gamma", line, path));
        std::array<double, 3> p{};
        for (std::size_t c = 0; c < coords; ++c)
            p[c] = parse_field(fields[1 + c], header[1 + c], line, path);
        points.push_back(p);
    }
    if (points.empty()) throw std::runtime_error(path + ": no vortex records");

    VortexEnsemble ens;
    const std::size_t n = points.size();
    ens.gamma = std::move(gamma);
    ens.state.assign(coords * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (sphere) {
            ens.state[3 * i] = points[i][0];
            ens.state[3 * i + 1] = points[i][1];
            ens.state[3 * i + 2] = points[i][2];
        } else {
            ens.state[i] = points[i][0];
            ens.state[n + i] = points[i][1];
        }
    }
    return ens;
}

void save_ensemble(const VortexEnsemble& ensemble, bool sphere, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_ensemble: cannot open " + path);
    const std::size_t n = ensemble.gamma.size();
    out << (sphere ? "gamma,x,y,z" : "gamma,x,y") << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << format_full(ensemble.gamma[i]);
        if (sphere) {
            out << ',' << format_full(ensemble.state[3 * i]) << ','
                << format_full(ensemble.state[3 * i + 1]) << ','
                << format_full(ensemble.state[3 * i + 2]);
        } else {
            out << ',' << format_full(ensemble.state[i]) << ','
                << format_full(ensemble.state[n + i]);
        }
        out << '\n';
    }
}

}  // namespace conint
