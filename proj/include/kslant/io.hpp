#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kslant/curve.hpp"

namespace kslant {

// Shortest decimal that parses back to the same double.
std::string format_double(double v);
// JSON text with every float written by format_double.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

nlohmann::ordered_json meta_to_json(const CurveMeta& m);
CurveMeta meta_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const SampledCurve& c);
SampledCurve sampled_from_json(const nlohmann::json& j);
// Accepts a single SampledCurve object or an array of them.
std::vector<SampledCurve> parse_curves_json(const std::string& text);

struct CsvOptions {
    bool frames = false;   // append T_x..B_z,kappa,tau
    bool meta = true;      // trailing "# meta {...}" line
};
// Header: <parameter>,x,y,z[,T_x,...,tau]. Frame cells are empty where undefined.
std::string write_csv(const SampledCurve& c, const CsvOptions& opt = {});
SampledCurve parse_csv(const std::string& text);

std::string read_file(const std::string& path);
// Writes through a temporary file so a failure never leaves a partial file.
void write_file_atomic(const std::string& path, const std::string& data);

}  // namespace kslant
