#include "vring/coeff_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vring/errors.hpp"

namespace vring {

std::string coefficients_to_json(const CoefficientTensor& c)
{
    nlohmann::ordered_json j;
    j["J"] = c.J();
    j["K"] = c.K();
    auto& arr = j["c"] = nlohmann::ordered_json::array();
    for (int l = 1; l <= 2; ++l) {
        auto by_m = nlohmann::ordered_json::array();
        for (int m = 1; m <= 2; ++m) {
            auto by_j = nlohmann::ordered_json::array();
            for (int jj = 0; jj <= c.J(); ++jj) {
                auto by_k = nlohmann::ordered_json::array();
                for (int k = 0; k <= c.K(); ++k) by_k.push_back(c.at(l, m, jj, k));
                by_j.push_back(std::move(by_k));
            }
            by_m.push_back(std::move(by_j));
        }
        arr.push_back(std::move(by_m));
    }
    return j.dump(1);
}

CoefficientTensor coefficients_from_json(const std::string& text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        const int J = j.at("J").get<int>();
        const int K = j.at("K").get<int>();
        if (J < 0 || K < 0) throw ConfigError("coefficient file: J and K must be >= 0");
        const auto& arr = j.at("c");
        CoefficientTensor c(J, K);
        auto expect_size = [](const nlohmann::json& a, std::size_t n, const char* level) {
            if (!a.is_array() || a.size() != n) {
                std::ostringstream msg;
                msg << "coefficient file: '" << level << "' level must be an array of " << n;
                throw ConfigError(msg.str());
            }
        };
        expect_size(arr, 2, "l");
        for (int l = 1; l <= 2; ++l) {
            expect_size(arr[l - 1], 2, "m");
            for (int m = 1; m <= 2; ++m) {
                expect_size(arr[l - 1][m - 1], J + 1, "j");
                for (int jj = 0; jj <= J; ++jj) {
                    const auto& row = arr[l - 1][m - 1][jj];
                    expect_size(row, K + 1, "k");
                    for (int k = 0; k <= K; ++k) c.at(l, m, jj, k) = row[k].get<double>();
                }
            }
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("coefficient file: ") + e.what());
    }
}

void write_coefficients(const std::filesystem::path& path, const CoefficientTensor& c)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << coefficients_to_json(c) << '\n';
}

CoefficientTensor read_coefficients(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read coefficient file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return coefficients_from_json(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

} // namespace vring
