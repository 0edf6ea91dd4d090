#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vfield/catalog.hpp"

namespace vfield {

inline constexpr int kFormatVersion = 1;

// Document form of the whole catalog: file entries ascending by id, sections
// and trees in creation order, object keys sorted.
nlohmann::json catalog_to_document(const Catalog& catalog);

// Canonical bytes: UTF-8, 2-space indent, sorted keys, trailing newline.
// A pure function of the model.
std::string canonical_dump(const nlohmann::json& document);

// Parses and restores a document, then re-checks every model invariant.
// Throws LoadError naming the first violated invariant.
Catalog catalog_from_document(const nlohmann::json& document, std::filesystem::path root);

// <root>/catalog.json helpers used by Catalog::open / Catalog::save.
Catalog load_catalog(const std::filesystem::path& root);
void save_catalog(const Catalog& catalog);

// Full invariant check over an in-memory model; load runs this, mutating
// commands run it again before persisting.
void validate_catalog(const Catalog& catalog);

// Write-temp-then-rename; the previous file survives any failure.
void write_text_atomic(const std::string& text, const std::filesystem::path& file);

}  // namespace vfield
