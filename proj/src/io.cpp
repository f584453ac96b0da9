#include "hive/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hive::io {

using nlohmann::json;

std::string config_hash(const std::string& text) {
    // FNV-1a, enough to fingerprint a config line
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json meta_json(const Meta& m) {
    return json{{"version", m.version}, {"seed", m.seed}, {"config_hash", m.config_hash}, {"kind", m.kind}};
}

} // namespace

std::string matrix_to_json(const HermitianMatrix& H) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < H.n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < H.n; ++j) {
            rrow.push_back(H(i, j).real());
            irow.push_back(H(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"n", H.n}, {"re", re}, {"im", im}}.dump();
}

HermitianMatrix matrix_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int n = j.at("n").get<int>();
    HermitianMatrix H(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            H.at(i, k) = cplx(j.at("re")[i][k].get<double>(), j.at("im")[i][k].get<double>());
    if (H.max_hermiticity_defect() > 0.0) {
        throw std::runtime_error("matrix_from_json: matrix is not Hermitian");
    }
    return H;
}

std::string spectrum_to_json(const Spectrum& s) {
    return json{{"n", s.n()}, {"values", s.values}, {"trace_zero", s.trace_zero}}.dump();
}

Spectrum spectrum_from_json(const std::string& text) {
    const json j = json::parse(text);
    Spectrum s(j.at("values").get<std::vector<double>>(), j.value("trace_zero", false));
    return s;
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::ostringstream os;
    os.precision(17);
    for (double v : s.values) os << v << "\n";
    return os.str();
}

namespace {

json square_values_json(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

// Triangle values embedded in a (n+1)^2 row-major array with nulls outside.
json triangle_values_json(const Hive& h) {
    json arr = json::array();
    for (int i = 0; i <= h.n; ++i)
        for (int j = 0; j <= h.n; ++j)
            if (i <= j) arr.push_back(h(i, j)); else arr.push_back(nullptr);
    return arr;
}

} // namespace

std::string hive_to_json(const Hive& h, const Meta& meta) {
    return json{{"meta", meta_json(meta)}, {"n", h.n}, {"layout", "triangle"},
                {"values", triangle_values_json(h)}}.dump();
}

Hive hive_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("layout") != "triangle") throw std::runtime_error("hive_from_json: wrong layout");
    const int n = j.at("n").get<int>();
    Hive h(n);
    const auto& arr = j.at("values");
    for (int i = 0; i <= n; ++i)
        for (int jj = i; jj <= n; ++jj) h.at(i, jj) = arr[static_cast<size_t>(i) * (n + 1) + jj].get<double>();
    return h;
}

std::string augmented_to_json(const AugmentedHive& a, const Meta& meta) {
    return json{{"meta", meta_json(meta)}, {"n", a.n}, {"layout", "square"},
                {"values", square_values_json(a.v)}}.dump();
}

AugmentedHive augmented_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("layout") != "square") throw std::runtime_error("augmented_from_json: wrong layout");
    AugmentedHive a(j.at("n").get<int>());
    const auto& arr = j.at("values");
    for (size_t k = 0; k < a.v.size(); ++k) a.v[k] = arr[k].get<double>();
    return a;
}

std::string double_hive_to_json(const DoubleHive& d, const Meta& meta) {
    return json{{"meta", meta_json(meta)}, {"n", d.n}, {"layout", "square"},
                {"glue", d.glue == DoubleHive::Glue::main ? "main" : "anti"},
                {"values", square_values_json(d.v)}}.dump();
}

DoubleHive double_hive_from_json(const std::string& text) {
    const json j = json::parse(text);
    DoubleHive d(j.at("n").get<int>(),
                 j.value("glue", "main") == std::string("main") ? DoubleHive::Glue::main
                                                                : DoubleHive::Glue::anti);
    const auto& arr = j.at("values");
    for (size_t k = 0; k < d.v.size(); ++k) d.v[k] = arr[k].get<double>();
    return d;
}

std::string grid_to_csv(const std::vector<double>& values, int n) {
    std::ostringstream os;
    os.precision(17);
    for (int j = n; j >= 0; --j) {
        for (int i = 0; i <= n; ++i) {
            if (i) os << ",";
            os << values[static_cast<size_t>(i) * (n + 1) + j];
        }
        os << "\n";
    }
    return os.str();
}

std::string hive_to_csv(const Hive& h) {
    std::ostringstream os;
    os.precision(17);
    for (int j = h.n; j >= 0; --j) {
        for (int i = 0; i <= h.n; ++i) {
            if (i) os << ",";
            if (i <= j) os << h(i, j);
        }
        os << "\n";
    }
    return os.str();
}

std::string tiling_to_json(const Tiling& t, const Meta& meta) {
    json loz = json::array(), tri = json::array();
    for (const auto& l : t.lozenges) loz.push_back(json{{"o", l.o}, {"i", l.i}, {"j", l.j}});
    for (const auto& tr : t.triangles) tri.push_back(json{{"up", tr.up}, {"i", tr.i}, {"j", tr.j}});
    return json{{"meta", meta_json(meta)}, {"n", t.n}, {"lozenges", loz}, {"triangles", tri}}.dump();
}

Tiling tiling_from_json(const std::string& text) {
    const json j = json::parse(text);
    Tiling t;
    t.n = j.at("n").get<int>();
    for (const auto& l : j.at("lozenges"))
        t.lozenges.push_back({l.at("o").get<int>(), l.at("i").get<int>(), l.at("j").get<int>()});
    for (const auto& tr : j.at("triangles"))
        t.triangles.push_back({tr.at("up").get<int>(), tr.at("i").get<int>(), tr.at("j").get<int>()});
    return t;
}

std::string sigma_grid_to_csv(const SigmaGrid& g) {
    std::ostringstream os;
    os.precision(17);
    os << "k0,k1,k2,m,sigma_hat\n";
    for (int k0 = 0; k0 <= g.m; ++k0)
        for (int k1 = 0; k0 + k1 <= g.m; ++k1)
            os << k0 << "," << k1 << "," << (g.m - k0 - k1) << "," << g.m << ","
               << g.node(k0, k1) << "\n";
    return os.str();
}

SigmaGrid sigma_grid_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);  // header
    SigmaGrid g;
    bool sized = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int k0, k1, k2, m;
        double v;
        if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%lf", &k0, &k1, &k2, &m, &v) != 5) {
            throw std::runtime_error("sigma_grid_from_csv: bad row");
        }
        if (!sized) {
            g = SigmaGrid(m);
            sized = true;
        }
        g.node_at(k0, k1) = v;
    }
    return g;
}

std::string sigma_heatmap_svg(const SigmaGrid& g) {
    const int m = g.m;
    double lo = 1e300, hi = -1e300;
    for (int k0 = 0; k0 <= m; ++k0)
        for (int k1 = 0; k0 + k1 <= m; ++k1) {
            const double e = std::exp(-g.node(k0, k1));
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    const double span = hi > lo ? hi - lo : 1.0;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    const double sq3h = 0.8660254037844386;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.05 -0.05 1.2 " << (sq3h + 0.1)
       << "\">\n";
    auto px = [&](double a, double b) { return a + 0.5 * b; };
    auto py = [&](double b) { return sq3h * (1.0 - b); };
    auto color = [&](double e) {
        const double t = (e - lo) / span;
        const int r = static_cast<int>(255 * t);
        const int b = static_cast<int>(255 * (1.0 - t));
        std::ostringstream c;
        c << "rgb(" << r << ",64," << b << ")";
        return c.str();
    };
    auto emit = [&](double a0, double b0, double a1, double b1, double a2, double b2, double e) {
        os << "<polygon points=\"" << px(a0, b0) << "," << py(b0) << " " << px(a1, b1) << ","
           << py(b1) << " " << px(a2, b2) << "," << py(b2) << "\" fill=\"" << color(e)
           << "\" stroke=\"none\"/>\n";
    };
    const double d = 1.0 / m;
    for (int k0 = 0; k0 < m; ++k0) {
        for (int k1 = 0; k0 + k1 < m; ++k1) {
            const double a = k0 * d, b = k1 * d;
            double e = std::exp(-(g.node(k0, k1) + g.node(k0 + 1, k1) + g.node(k0, k1 + 1)) / 3.0);
            emit(a, b, a + d, b, a, b + d, e);
            if (k0 + k1 < m - 1) {
                e = std::exp(-(g.node(k0 + 1, k1) + g.node(k0, k1 + 1) + g.node(k0 + 1, k1 + 1)) / 3.0);
                emit(a + d, b, a, b + d, a + d, b + d, e);
            }
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_tetrahedron(const TetrahedronField& t, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_tetrahedron: cannot open " + path);
    const char magic[8] = {'H', 'I', 'V', 'E', 'T', 'E', 'T', '1'};
    os.write(magic, 8);
    const std::int64_t n = t.n();
    const std::int64_t count = static_cast<std::int64_t>(t.size());
    const std::int64_t flags = t.excavated() ? 1 : 0;
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&count), 8);
    os.write(reinterpret_cast<const char*>(&flags), 8);
    for (int x = 0; x <= t.n(); ++x)
        for (int y = 0; x + y <= t.n(); ++y)
            for (int z = 0; x + y + z <= t.n(); ++z) {
                const double v = t(x, y, z, t.n() - x - y - z);
                os.write(reinterpret_cast<const char*>(&v), 8);
                const std::uint8_t b = t.bit(x, y, z, t.n() - x - y - z);
                os.write(reinterpret_cast<const char*>(&b), 1);
            }
}

TetrahedronField read_tetrahedron(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_tetrahedron: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (std::string(magic, 8) != "HIVETET1") throw std::runtime_error("read_tetrahedron: bad magic");
    std::int64_t n = 0, count = 0, flags = 0;
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&count), 8);
    is.read(reinterpret_cast<char*>(&flags), 8);
    TetrahedronField t(static_cast<int>(n));
    if (static_cast<std::int64_t>(t.size()) != count) {
        throw std::runtime_error("read_tetrahedron: size mismatch");
    }
    for (int x = 0; x <= t.n(); ++x)
        for (int y = 0; x + y <= t.n(); ++y)
            for (int z = 0; x + y + z <= t.n(); ++z) {
                double v;
                std::uint8_t b;
                is.read(reinterpret_cast<char*>(&v), 8);
                is.read(reinterpret_cast<char*>(&b), 1);
                const int w = t.n() - x - y - z;
                t.at(x, y, z, w) = v;
                t.bit_at(x, y, z, w) = b;
            }
    if (flags & 1) t.mark_excavated();
    return t;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    os << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace hive::io
