#include "cli/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace vring::cli {

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot hash " + path.string());

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 15> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return hex.str();
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& argv,
                    const nlohmann::ordered_json& config, std::uint64_t seed,
                    const std::string& started_at, const std::vector<std::string>& files)
{
    nlohmann::ordered_json m;
    m["tool"] = "vring";
    m["version"] = kToolVersion;
    m["argv"] = argv;
    m["config"] = config;
    m["seed"] = seed;
    m["started_at"] = started_at;
    m["finished_at"] = utc_timestamp();
    auto& inventory = m["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : files) {
        const auto path = dir / f;
        nlohmann::ordered_json entry;
        entry["file"] = f;
        entry["bytes"] = std::filesystem::file_size(path);
        entry["sha256"] = sha256_file(path);
        inventory.push_back(entry);
    }
    write_text_file(dir / "manifest.json", m.dump(2) + "\n");
}

} // namespace vring::cli
