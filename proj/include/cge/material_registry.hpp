#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cge/material.hpp"

// Maps material names to shipped data files. Search order: directories
// from the CGE_MATERIAL_PATH environment variable (colon separated), then
// the build-time data directory. A name that is itself a readable path
// wins over the registry. Built-in names: gold, silicon, silicon-doped,
// sapphire, mica, fused-silica, plus the synthetic vacuum / ideal-metal.

namespace cge {

// Parses a material file (UTF-8 text, '#' comments, then an "oscillator"
// or "table" block as documented in the README).
MaterialModel parse_material_file(const std::string& path);

MaterialModel load_material(const std::string& name);

// Resolved data-file path for a registry name; empty for synthetic
// materials (vacuum, ideal-metal).
std::string material_file_path(const std::string& name);

std::vector<std::string> material_search_dirs();

// FNV-1a 64-bit hash of a file's bytes; provenance fingerprint in the
// JSON metadata.
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace cge
