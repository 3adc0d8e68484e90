#include "biofab/pipeline/manifest.hpp"

#include <cstdio>

#include <json.hpp>

#include "biofab/io/table.hpp"

namespace biofab::pipeline {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

DatasetManifest DatasetManifest::from_items(const std::string& family,
                                            std::span<const qa::QaItem> items,
                                            std::uint64_t seed, const std::string& digest) {
    DatasetManifest m;
    m.family = family;
    m.seed = seed;
    m.total = items.size();
    m.split_audit_digest = digest;
    for (const auto& item : items) {
        ++m.question_types[item.question_type];
        if (item.split == "train") ++m.train;
        else if (item.split == "test") ++m.test;
    }
    return m;
}

void write_manifest(const std::string& path, const DatasetManifest& m) {
    nlohmann::ordered_json j;
    j["family"] = m.family;
    j["schema_version"] = m.schema_version;
    j["seed"] = m.seed;
    j["total"] = m.total;
    j["train"] = m.train;
    j["test"] = m.test;
    j["question_types"] = m.question_types;
    j["split_audit_digest"] = m.split_audit_digest;
    io::atomic_write_text(path, j.dump(2) + "\n");
}

DatasetManifest read_manifest(const std::string& path) {
    const auto j = nlohmann::json::parse(io::read_text(path));
    DatasetManifest m;
    m.family = j.at("family").get<std::string>();
    m.schema_version = j.at("schema_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.total = j.at("total").get<std::size_t>();
    m.train = j.at("train").get<std::size_t>();
    m.test = j.at("test").get<std::size_t>();
    m.question_types = j.at("question_types").get<std::map<std::string, std::size_t>>();
    m.split_audit_digest = j.at("split_audit_digest").get<std::string>();
    return m;
}

}  // namespace biofab::pipeline
