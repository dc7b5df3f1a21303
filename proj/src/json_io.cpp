#include "selfaffine/json_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace selfaffine {

namespace {

double require_number(const json& j, const char* what) {
    if (!j.is_number()) throw std::invalid_argument(std::string("expected number for ") + what);
    return j.get<double>();
}

SelfAffineSystem preset_from_json(const json& j) {
    std::string name = j.at("preset").get<std::string>();
    auto param = [&](const char* key) {
        if (!j.contains(key))
            throw std::invalid_argument("preset '" + name + "' needs parameter '" + key + "'");
        return require_number(j.at(key), key);
    };
    if (name == "polya") {
        double theta = j.contains("theta_deg") ? param("theta_deg") * std::acos(-1.0) / 180.0
                                               : param("theta");
        return preset_polya(theta);
    }
    if (name == "okamoto") return preset_okamoto(param("a"));
    if (name == "riesz_nagy") return preset_riesz_nagy(param("a"));
    if (name == "gray") return preset_gray(param("a"));
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace

json system_to_json(const SelfAffineSystem& sys) {
    json j;
    j["d"] = sys.d;
    j["m"] = sys.m;
    j["c"] = sys.c;
    j["epsilon"] = sys.epsilon;
    json maps = json::array();
    for (const Similitude& S : sys.maps) {
        json jm;
        jm["scale"] = S.scale;
        jm["rotation"] = S.rotation;
        jm["translation"] = S.translation;
        maps.push_back(jm);
    }
    j["maps"] = maps;
    return j;
}

SelfAffineSystem system_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("system JSON must be an object");
    if (j.contains("preset")) return preset_from_json(j);
    if (j.contains("measure")) return from_measure(measure_from_json(j.at("measure")));
    SelfAffineSystem sys;
    try {
        sys.d = j.at("d").get<std::size_t>();
        sys.m = j.at("m").get<std::size_t>();
        sys.c = j.at("c").get<std::vector<double>>();
        sys.epsilon = j.at("epsilon").get<std::vector<int>>();
        for (const json& jm : j.at("maps")) {
            Similitude S;
            S.scale = require_number(jm.at("scale"), "scale");
            S.rotation = jm.at("rotation").get<Mat>();
            S.translation = jm.at("translation").get<Vec>();
            sys.maps.push_back(S);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed system JSON: ") + e.what());
    }
    return sys;
}

json measure_to_json(const MeasureSpec& spec) {
    json j;
    j["intervals"] = spec.intervals;
    j["orientations"] = spec.orientations;
    j["weights"] = spec.weights;
    return j;
}

MeasureSpec measure_from_json(const json& j) {
    MeasureSpec spec;
    try {
        spec.intervals = j.at("intervals").get<std::vector<std::array<double, 2>>>();
        spec.orientations = j.at("orientations").get<std::vector<int>>();
        spec.weights = j.at("weights").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed measure JSON: ") + e.what());
    }
    return spec;
}

SelfAffineSystem load_system(const std::string& path_or_json) {
    std::size_t pos = 0;
    while (pos < path_or_json.size() && std::isspace(static_cast<unsigned char>(path_or_json[pos])))
        ++pos;
    std::string text;
    if (pos < path_or_json.size() && path_or_json[pos] == '{') {
        text = path_or_json;
    } else {
        std::ifstream in(path_or_json);
        if (!in) throw std::invalid_argument("cannot open system file '" + path_or_json + "'");
        std::ostringstream os;
        os << in.rdbuf();
        text = os.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    return system_from_json(j);
}

}  // namespace selfaffine
