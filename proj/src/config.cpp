#include "oscat/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace oscat {

using nlohmann::json;

cplx parse_complex(const std::string& text) {
    const auto fail = [&text]() -> cplx {
        throw std::invalid_argument("cannot parse complex number '" + text +
                                    "': expected a+bi with a signed "
                                    "imaginary part");
    };
    if (text.empty() || text.back() != 'i') return fail();

    // The imaginary part starts at the last sign that is not an exponent
    // sign and not the leading sign of the real part.
    std::size_t split = std::string::npos;
    for (std::size_t i = text.size() - 1; i > 0; --i) {
        const char c = text[i];
        if ((c == '+' || c == '-') && text[i - 1] != 'e' &&
            text[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return fail();

    try {
        std::size_t used = 0;
        const std::string re_text = text.substr(0, split);
        const double re = std::stod(re_text, &used);
        if (used != re_text.size()) return fail();
        const std::string im_text =
            text.substr(split, text.size() - split - 1);
        const double im = std::stod(im_text, &used);
        if (used != im_text.size()) return fail();
        return {re, im};
    } catch (const std::exception&) {
        return fail();
    }
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, comma - start));
        start = comma + 1;
    }
    return parts;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const std::string& part : split_commas(text)) {
        std::size_t used = 0;
        const int v = std::stoi(part, &used);
        if (used != part.size())
            throw std::invalid_argument("bad integer list entry '" + part +
                                        "'");
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : split_commas(text)) {
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size())
            throw std::invalid_argument("bad number list entry '" + part +
                                        "'");
        out.push_back(v);
    }
    return out;
}

DomainSpec resolve_domain(const std::string& source) {
    if (source == "square" || source == "lshape")
        return builtin_domain(source);

    std::ifstream in(source);
    if (!in)
        throw std::invalid_argument(
            "domain '" + source +
            "' is neither a built-in name (square, lshape) nor a readable "
            "file");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("domain file '" + source +
                                    "' is not valid JSON: " + e.what());
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw std::invalid_argument("domain file '" + source +
                                    "' lacks a \"vertices\" array");
    std::vector<Point> vertices;
    for (const json& v : doc["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
            !v[1].is_number())
            throw std::invalid_argument("domain file '" + source +
                                        "': each vertex must be [x, y]");
        vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return build_domain(std::move(vertices));
}

RunConfig load_config_json(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file '" + path +
                                    "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("config file '" + path +
                                    "' must hold a JSON object");

    RunConfig cfg = base;
    try {
        if (doc.contains("domain")) cfg.domain = doc["domain"].get<std::string>();
        if (doc.contains("n")) {
            if (doc["n"].is_array())
                cfg.sizes = doc["n"].get<std::vector<int>>();
            else
                cfg.sizes = {doc["n"].get<int>()};
        }
        if (doc.contains("margin")) cfg.margin = doc["margin"].get<double>();
        if (doc.contains("theta")) cfg.theta = doc["theta"].get<double>();
        if (doc.contains("k")) {
            cfg.wave_numbers.clear();
            if (doc["k"].is_array())
                for (const json& item : doc["k"])
                    cfg.wave_numbers.push_back(
                        parse_complex(item.get<std::string>()));
            else
                cfg.wave_numbers.push_back(
                    parse_complex(doc["k"].get<std::string>()));
        }
        if (doc.contains("k_moduli"))
            cfg.k_moduli = doc["k_moduli"].get<std::vector<double>>();
        if (doc.contains("k_phase")) cfg.k_phase = doc["k_phase"].get<double>();
        if (doc.contains("p")) cfg.p = doc["p"].get<double>();
        if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
        if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
        if (doc.contains("seed")) cfg.seed = doc["seed"].get<unsigned>();
        if (doc.contains("out")) cfg.out_dir = doc["out"].get<std::string>();
        if (doc.contains("u")) cfg.u_kind = doc["u"].get<std::string>();
        if (doc.contains("tol")) cfg.tol_identity = doc["tol"].get<double>();
        if (doc.contains("slope_bracket")) {
            const auto br = doc["slope_bracket"].get<std::vector<double>>();
            if (br.size() != 2)
                throw std::invalid_argument(
                    "slope_bracket must hold two numbers");
            cfg.slope_min = br[0];
            cfg.slope_max = br[1];
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument("config file '" + path +
                                    "': " + e.what());
    }
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.sizes.empty())
        throw std::invalid_argument("need at least one grid size");
    for (int n : cfg.sizes)
        if (n < 8)
            throw std::invalid_argument(
                "grid size " + std::to_string(n) + " is below the minimum 8");
    if (!(cfg.margin >= 1.0))
        throw std::invalid_argument("margin must be >= 1");
    if (!(cfg.theta > 0.0 && cfg.theta <= 1.0))
        throw std::invalid_argument("theta must lie in (0, 1]");
    if (!(cfg.p >= 1.0))
        throw std::invalid_argument("exponent p must be >= 1");
    if (cfg.epsilon < 0.0)
        throw std::invalid_argument("epsilon must be >= 0");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (cfg.u_kind != "gaussian" && cfg.u_kind != "bump" &&
        cfg.u_kind != "noise")
        throw std::invalid_argument("unknown test function '" + cfg.u_kind +
                                    "' (gaussian, bump, noise)");
}

}  // namespace oscat
