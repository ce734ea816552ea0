#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmcwave/duhamel.hpp"
#include "cmcwave/polar.hpp"
#include "cmcwave/spectral.hpp"

namespace cmcwave {

using json = nlohmann::json;

namespace io_detail {

inline void write_doubles(const std::string& path, const std::vector<double>& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

inline std::vector<double> read_doubles(const std::string& path, size_t count) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> v(count);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw std::runtime_error("short read from " + path);
    return v;
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace io_detail

// Row-major float64 binary with a JSON sidecar. Physical fields store the
// real samples; spectral fields store interleaved re/im pairs.
inline void write_field(const std::string& base, const VectorField& f) {
    const Grid& g = f.grid();
    const bool spectral = f.representation() == Representation::spectral;
    std::vector<double> flat;
    flat.reserve(f[0].size() * 3 * (spectral ? 2 : 1));
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < f[c].size(); ++i) {
            flat.push_back(f[c][i].real());
            if (spectral) flat.push_back(f[c][i].imag());
        }
    io_detail::write_doubles(base + ".bin", flat);
    json side = {{"n", g.n},
                 {"box_length", g.box_length},
                 {"representation", spectral ? "spectral" : "physical"},
                 {"component_order", {"u1", "u2", "u3"}},
                 {"dtype", spectral ? "complex128" : "float64"},
                 {"layout", "row-major"}};
    io_detail::write_json(base + ".json", side);
}

inline VectorField read_field(const std::string& base) {
    const json side = io_detail::read_json(base + ".json");
    const Grid g(side.at("n").get<int>(), side.at("box_length").get<double>());
    const bool spectral = side.at("representation") == "spectral";
    VectorField f(g, spectral ? Representation::spectral : Representation::physical);
    const size_t per = g.size() * (spectral ? 2 : 1);
    const std::vector<double> flat = io_detail::read_doubles(base + ".bin", 3 * per);
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < g.size(); ++i) {
            if (spectral)
                f[c][i] = cd(flat[c * per + 2 * i], flat[c * per + 2 * i + 1]);
            else
                f[c][i] = cd(flat[c * per + i], 0.0);
        }
    return f;
}

// CSV export of a physical field, one row per grid point (small grids only).
inline void write_field_csv(const std::string& path, const VectorField& field) {
    VectorField f = field.as(Representation::physical);
    const Grid& g = f.grid();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "x,y,u1,u2,u3\n";
    out.precision(17);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            out << g.x(ix) << ',' << g.x(iy) << ',' << f[0].at(iy, ix).real()
                << ',' << f[1].at(iy, ix).real() << ','
                << f[2].at(iy, ix).real() << "\n";
}

inline void write_ledger_csv(const std::string& path, const ContractionLedger& led) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "k,diff_norm,wedge_norm,wedge_diff_norm\n";
    out.precision(17);
    for (const auto& rec : led)
        out << rec.k << ',' << rec.diff_norm << ',' << rec.wedge_norm << ','
            << rec.wedge_diff_norm << "\n";
}

inline void write_profile(const std::string& base, const SelfSimilarProfile& v) {
    std::vector<double> flat;
    flat.reserve(v.comp[0].size() * 3);
    for (int c = 0; c < 3; ++c)
        flat.insert(flat.end(), v.comp[c].begin(), v.comp[c].end());
    io_detail::write_doubles(base + ".bin", flat);
    json side = {{"n_rho", v.Nr},
                 {"n_theta", v.Nt},
                 {"parametrization",
                  v.param == RadialCoordinate::rho ? "rho" : "sigma"},
                 {"component_order", {"v1", "v2", "v3"}},
                 {"dtype", "float64"},
                 {"layout", "radial-major"}};
    io_detail::write_json(base + ".json", side);
}

inline SelfSimilarProfile read_profile(const std::string& base) {
    const json side = io_detail::read_json(base + ".json");
    SelfSimilarProfile v(side.at("n_rho").get<int>(), side.at("n_theta").get<int>(),
                         side.at("parametrization") == "rho"
                             ? RadialCoordinate::rho
                             : RadialCoordinate::sigma);
    const size_t per = v.comp[0].size();
    const std::vector<double> flat = io_detail::read_doubles(base + ".bin", 3 * per);
    for (int c = 0; c < 3; ++c)
        std::copy(flat.begin() + c * per, flat.begin() + (c + 1) * per,
                  v.comp[c].begin());
    return v;
}

}  // namespace cmcwave
