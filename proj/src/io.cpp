#include "kslant/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kslant/frames.hpp"

namespace kslant {

std::string format_double(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "NaN" : (v > 0 ? "Infinity" : "-Infinity");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

void emit(std::ostringstream& os, const nlohmann::ordered_json& j, int indent, int depth) {
    const std::string pad(static_cast<size_t>(indent) * (depth + 1), ' ');
    const std::string close(static_cast<size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::number_float: {
            const double v = j.get<double>();
            os << (std::isfinite(v) ? format_double(v) : "null");
            return;
        }
        case nlohmann::json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                os << pad << nlohmann::json(it.key()).dump() << ": ";
                emit(os, it.value(), indent, depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            os << close << "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            const bool flat = std::none_of(j.begin(), j.end(), [](const auto& e) { return e.is_structured(); });
            if (flat) {
                os << "[";
                for (size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    emit(os, j[i], indent, depth + 1);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                os << pad;
                emit(os, j[i], indent, depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            os << close << "]";
            return;
        }
        default:
            os << j.dump();
    }
}

double to_double(const std::string& s) {
    double v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw Error(ErrorCode::BadParams, "not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
    std::ostringstream os;
    emit(os, j, indent, 0);
    os << "\n";
    return os.str();
}

nlohmann::ordered_json meta_to_json(const CurveMeta& m) {
    nlohmann::ordered_json j;
    j["seed"] = m.seed;
    j["operator"] = m.op;
    j["level"] = m.level;
    j["theta"] = m.phases;
    j["parameter"] = m.parameter;
    j["cusps"] = m.cusps;
    for (auto it = m.extra.begin(); it != m.extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

CurveMeta meta_from_json(const nlohmann::json& j) {
    CurveMeta m;
    if (!j.is_object()) return m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "seed") m.seed = it->get<std::string>();
        else if (k == "operator") m.op = it->get<std::string>();
        else if (k == "level") m.level = it->get<int>();
        else if (k == "theta") m.phases = it->get<std::vector<double>>();
        else if (k == "parameter") m.parameter = it->get<std::string>();
        else if (k == "cusps") m.cusps = it->get<std::vector<double>>();
        else m.extra[k] = *it;
    }
    return m;
}

nlohmann::ordered_json to_json(const SampledCurve& c) {
    nlohmann::ordered_json j;
    j["meta"] = meta_to_json(c.meta);
    j["grid"] = c.grid;
    j["points"] = nlohmann::ordered_json::array();
    for (const Vec3& p : c.points) j["points"].push_back({p.x, p.y, p.z});
    return j;
}

SampledCurve sampled_from_json(const nlohmann::json& j) {
    SampledCurve c;
    try {
        c.meta = meta_from_json(j.value("meta", nlohmann::json::object()));
        c.grid = j.at("grid").get<std::vector<double>>();
        for (const auto& p : j.at("points")) {
            const auto v = p.get<std::vector<double>>();
            if (v.size() != 3) throw Error(ErrorCode::BadParams, "points must have three coordinates");
            c.points.push_back({v[0], v[1], v[2]});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadParams, std::string("malformed curve JSON: ") + e.what());
    }
    c.validate();
    return c;
}

std::vector<SampledCurve> parse_curves_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadParams, std::string("invalid JSON: ") + e.what());
    }
    std::vector<SampledCurve> out;
    if (j.is_array())
        for (const auto& e : j) out.push_back(sampled_from_json(e));
    else
        out.push_back(sampled_from_json(j));
    return out;
}

std::string write_csv(const SampledCurve& c, const CsvOptions& opt) {
    std::ostringstream os;
    os << (c.meta.parameter.empty() ? "t" : c.meta.parameter) << ",x,y,z";
    if (opt.frames) os << ",T_x,T_y,T_z,N_x,N_y,N_z,B_x,B_y,B_z,kappa,tau";
    os << "\n";
    Curve3 curve;
    if (opt.frames) curve = from_samples(c);
    auto cells = [&](const std::optional<Vec3>& v) {
        if (v) os << "," << format_double(v->x) << "," << format_double(v->y) << "," << format_double(v->z);
        else os << ",,,";
    };
    for (size_t i = 0; i < c.grid.size(); ++i) {
        const Vec3& p = c.points[i];
        os << format_double(c.grid[i]) << "," << format_double(p.x) << "," << format_double(p.y) << ","
           << format_double(p.z);
        if (opt.frames) {
            std::optional<FrenetData> f;
            if (available_order(curve, c.grid[i]) >= 3) {
                try {
                    f = frenet_apparatus(curve, c.grid[i]);
                } catch (const Error&) {
                }
            }
            if (f) {
                cells(f->T);
                cells(f->N);
                cells(f->B);
                os << "," << format_double(f->kappa) << "," << (f->tau ? format_double(*f->tau) : "");
            } else {
                os << ",,,,,,,,,,,";
            }
        }
        os << "\n";
    }
    if (opt.meta) os << "# meta " << nlohmann::ordered_json(meta_to_json(c.meta)).dump() << "\n";
    return os.str();
}

SampledCurve parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    SampledCurve c;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# meta ", 0) == 0) {
            try {
                const CurveMeta m = meta_from_json(nlohmann::json::parse(line.substr(7)));
                const std::string param = c.meta.parameter;
                c.meta = m;
                if (!param.empty()) c.meta.parameter = param;
            } catch (const nlohmann::json::exception&) {
                throw Error(ErrorCode::BadParams, "malformed meta line in CSV");
            }
            continue;
        }
        if (line[0] == '#') continue;
        const auto f = split(line, ',');
        if (!header) {
            if (f.size() < 4 || f[1] != "x" || f[2] != "y" || f[3] != "z")
                throw Error(ErrorCode::BadParams, "CSV header must start with <parameter>,x,y,z");
            c.meta.parameter = f[0];
            header = true;
            continue;
        }
        if (f.size() < 4) throw Error(ErrorCode::BadParams, "CSV row has fewer than four columns");
        c.grid.push_back(to_double(f[0]));
        c.points.push_back({to_double(f[1]), to_double(f[2]), to_double(f[3])});
    }
    if (!header) throw Error(ErrorCode::BadParams, "CSV has no header");
    c.validate();
    return c;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::BadParams, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file_atomic(const std::string& path, const std::string& data) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::BadParams, "cannot write " + path);
        out << data;
        if (!out) throw Error(ErrorCode::BadParams, "write failed for " + path);
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace kslant
