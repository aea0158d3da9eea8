#include "symplab/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace symplab {

using nlohmann::json;

namespace {

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::istream& in, size_t count) {
    std::vector<double> v(count);
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw IoError("truncated binary payload");
    return v;
}

void save_components(const std::string& base, const char* kind,
                     const std::vector<const ScalarGrid*>& comps) {
    const TorusGrid g = comps.front()->grid;
    json sidecar = {{"kind", kind},
                    {"N_x", g.nx},
                    {"N_y", g.ny},
                    {"components", static_cast<int>(comps.size())}};
    std::ofstream js(base + ".json");
    if (!js) throw IoError("cannot write " + base + ".json");
    js << sidecar.dump(2) << "\n";
    std::ofstream bin(base + ".bin", std::ios::binary);
    if (!bin) throw IoError("cannot write " + base + ".bin");
    for (const ScalarGrid* c : comps) write_doubles(bin, c->v);
}

std::vector<ScalarGrid> load_components(const std::string& base, const char* kind,
                                        int expected) {
    std::ifstream js(base + ".json");
    if (!js) throw IoError("cannot read " + base + ".json");
    json sidecar = json::parse(js);
    if (sidecar.at("kind").get<std::string>() != kind)
        throw IoError(base + ": expected kind '" + kind + "', found '" +
                      sidecar.at("kind").get<std::string>() + "'");
    const int nx = sidecar.at("N_x").get<int>();
    const int ny = sidecar.at("N_y").get<int>();
    const int comps = sidecar.at("components").get<int>();
    if (comps != expected) throw IoError(base + ": unexpected component count");
    std::ifstream bin(base + ".bin", std::ios::binary);
    if (!bin) throw IoError("cannot read " + base + ".bin");
    std::vector<ScalarGrid> out;
    TorusGrid g(nx, ny);
    for (int c = 0; c < comps; ++c) {
        ScalarGrid f(g);
        f.v = read_doubles(bin, static_cast<size_t>(g.size()));
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

void save_scalar_field(const std::string& base, const ScalarGrid& f) {
    save_components(base, "scalar", {&f});
}
void save_one_form(const std::string& base, const OneFormGrid& f) {
    save_components(base, "one_form", {&f.a, &f.b});
}
void save_two_form(const std::string& base, const TwoFormGrid& f) {
    save_components(base, "two_form", {&f.density});
}
void save_surface_field(const std::string& base, const SurfaceField& f) {
    save_components(base, "surface_field", {&f.x1, &f.x2});
}

ScalarGrid load_scalar_field(const std::string& base) {
    return load_components(base, "scalar", 1)[0];
}
OneFormGrid load_one_form(const std::string& base) {
    auto c = load_components(base, "one_form", 2);
    return OneFormGrid(std::move(c[0]), std::move(c[1]));
}
TwoFormGrid load_two_form(const std::string& base) {
    return TwoFormGrid(load_components(base, "two_form", 1)[0]);
}
SurfaceField load_surface_field(const std::string& base) {
    auto c = load_components(base, "surface_field", 2);
    return SurfaceField(std::move(c[0]), std::move(c[1]));
}

void save_embedding(const std::string& path, const Embedding& f) {
    json header;
    header["n"] = f.model().half_dim();
    header["N_x"] = f.grid().nx;
    header["N_y"] = f.grid().ny;
    json winding = json::array();
    for (int r = 0; r < f.winding().rows(); ++r)
        winding.push_back({f.winding()(r, 0), f.winding()(r, 1)});
    header["winding"] = winding;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << header.dump() << "\n";
    write_doubles(out, f.lift());
}

Embedding load_embedding(const std::string& path,
                         std::shared_ptr<const AmbientModel> model) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": missing header line");
    json header = json::parse(line);
    const int n = header.at("n").get<int>();
    if (n != model->half_dim())
        throw IoError(path + ": header n does not match the ambient model");
    TorusGrid g(header.at("N_x").get<int>(), header.at("N_y").get<int>());
    const json& wj = header.at("winding");
    if (static_cast<int>(wj.size()) != 2 * n) throw IoError(path + ": bad winding matrix");
    Eigen::MatrixXi w(2 * n, 2);
    for (int r = 0; r < 2 * n; ++r) {
        w(r, 0) = wj[static_cast<size_t>(r)][0].get<int>();
        w(r, 1) = wj[static_cast<size_t>(r)][1].get<int>();
    }
    std::vector<double> lift =
        read_doubles(in, static_cast<size_t>(g.size()) * 2 * static_cast<size_t>(n));
    return Embedding(std::move(model), g, std::move(w), std::move(lift));
}

std::string digest_bytes(const void* data, size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 14695981039346656037ull;
    for (size_t k = 0; k < size; ++k) {
        h ^= p[k];
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) out << ((h >> shift) & 0xF);
    return out.str();
}

std::string digest_doubles(const std::vector<double>& v) {
    return digest_bytes(v.data(), v.size() * sizeof(double));
}

} // namespace symplab
