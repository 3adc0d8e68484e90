#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "biofab/qa/item.hpp"

namespace biofab::pipeline {

std::uint64_t fnv1a64(std::string_view data);
std::string to_hex(std::uint64_t v);

/// Sidecar bookkeeping for one generated dataset. Counts must equal the JSONL
/// line counts and the audit digest must match a fresh verify run.
struct DatasetManifest {
    std::string family;
    std::string schema_version = "1";
    std::uint64_t seed = 0;
    std::size_t total = 0;
    std::size_t train = 0;
    std::size_t test = 0;
    std::map<std::string, std::size_t> question_types;
    std::string split_audit_digest;  // empty before splitting

    static DatasetManifest from_items(const std::string& family,
                                      std::span<const qa::QaItem> items, std::uint64_t seed,
                                      const std::string& digest = "");
};

void write_manifest(const std::string& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::string& path);

}  // namespace biofab::pipeline
