#include "kappa/sim_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "kappa/errors.hpp"

namespace kappa {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

template <typename T>
T parse_as(const std::string& value, const std::string& key, const std::string& source) {
    T out{};
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw InputError(source + ": bad value '" + value + "' for key '" + key + "'");
    }
    return out;
}

Generator parse_generator(const std::string& value, const std::string& source) {
    if (value == "continuousGaussian") return Generator::ContinuousGaussian;
    if (value == "discreteUniformK") return Generator::DiscreteUniformK;
    if (value == "mixedTied") return Generator::MixedTied;
    if (value == "bivariateGaussianRho") return Generator::BivariateGaussianRho;
    throw InputError(source + ": unknown generator '" + value + "'");
}

}  // namespace

SimStudy parse_sim_config(std::istream& in, const std::string& source) {
    SimStudy s;
    std::string line;
    std::size_t lineNo = 0;
    bool sawGrid = false;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string stripped = line.substr(0, line.find('#'));
        if (trim(stripped).empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InputError(source + ": line " + std::to_string(lineNo) +
                             ": expected 'key = value'");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key == "study") {
            if (value != "calibrate" && value != "size-power" && value != "concentration") {
                throw InputError(source + ": unknown study '" + value + "'");
            }
            s.study = value;
        } else if (key == "generator") {
            s.config.generator = parse_generator(value, source);
        } else if (key == "kLevels") {
            s.config.kLevels = parse_as<unsigned>(value, key, source);
        } else if (key == "rho") {
            // from_chars<double> handles this, but keep one code path for doubles
            try {
                std::size_t used = 0;
                s.config.rho = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw InputError(source + ": bad value '" + value + "' for key 'rho'");
            }
        } else if (key == "alpha") {
            try {
                std::size_t used = 0;
                s.config.alpha = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw InputError(source + ": bad value '" + value + "' for key 'alpha'");
            }
        } else if (key == "nGrid") {
            s.config.nGrid.clear();
            std::stringstream parts(value);
            std::string item;
            while (std::getline(parts, item, ',')) {
                s.config.nGrid.push_back(parse_as<std::size_t>(trim(item), key, source));
            }
            sawGrid = true;
        } else if (key == "replicates") {
            s.config.replicates = parse_as<std::size_t>(value, key, source);
        } else if (key == "seed") {
            s.config.seed = parse_as<std::uint64_t>(value, key, source);
        } else {
            throw InputError(source + ": unknown key '" + key + "'");
        }
    }
    if (!sawGrid) throw InputError(source + ": missing required key 'nGrid'");
    validate(s.config);
    return s;
}

SimStudy load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file: " + path);
    return parse_sim_config(in, path);
}

}  // namespace kappa
