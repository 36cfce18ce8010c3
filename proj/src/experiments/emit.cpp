#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "heatwave/experiments/sweep.hpp"

#include "json.hpp"

namespace heatwave::experiments {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void emit(const std::vector<LocalizationRecord>& records, const std::string& path,
          const std::string& format) {
    if (format == "csv") {
        std::ofstream out(path);
        if (!out) throw config_error("emit: cannot open " + path);
        out << "bc,L,t,x,p,error,std_error,bound_aL,exact_variance,n_effective,seed\n";
        for (const auto& r : records) {
            out << r.bc << ',' << fmt17(r.L) << ',' << fmt17(r.t) << ',' << fmt17(r.x)
                << ',' << fmt17(r.p) << ',' << fmt17(r.error_estimate) << ','
                << fmt17(r.std_error) << ',' << fmt17(r.bound_aL) << ','
                << (r.has_exact ? fmt17(r.exact_variance) : std::string()) << ','
                << r.n_effective << ',' << r.seed << '\n';
        }
        if (!out.flush()) throw config_error("emit: write failed for " + path);
        return;
    }
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) {
            nlohmann::json j{{"bc", r.bc},
                             {"L", r.L},
                             {"t", r.t},
                             {"x", r.x},
                             {"p", r.p},
                             {"error", r.error_estimate},
                             {"std_error", r.std_error},
                             {"bound_aL", r.bound_aL},
                             {"n_effective", r.n_effective},
                             {"seed", r.seed}};
            if (r.has_exact)
                j["exact_variance"] = r.exact_variance;
            else
                j["exact_variance"] = nullptr;
            arr.push_back(std::move(j));
        }
        std::ofstream out(path);
        if (!out) throw config_error("emit: cannot open " + path);
        out << nlohmann::json{{"records", arr}}.dump(2) << '\n';
        if (!out.flush()) throw config_error("emit: write failed for " + path);
        return;
    }
    throw config_error("emit: unknown format " + format);
}

std::vector<LocalizationRecord> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("parse_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw config_error("parse_csv: empty file " + path);
    std::vector<LocalizationRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        LocalizationRecord r;
        std::getline(ss, r.bc, ',');
        auto next = [&]() {
            std::getline(ss, field, ',');
            return field;
        };
        r.L = std::stod(next());
        r.t = std::stod(next());
        r.x = std::stod(next());
        r.p = std::stod(next());
        r.error_estimate = std::stod(next());
        r.std_error = std::stod(next());
        r.bound_aL = std::stod(next());
        next();
        r.has_exact = !field.empty();
        if (r.has_exact) r.exact_variance = std::stod(field);
        r.n_effective = std::stol(next());
        r.seed = std::stoull(next());
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace heatwave::experiments
