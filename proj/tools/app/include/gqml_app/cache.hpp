#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gqml/spec_io.hpp"

namespace gqml::app {

std::string sha256_hex(std::string_view data);

/// $GQML_CACHE_DIR, else $XDG_CACHE_HOME/gqml, else $HOME/.cache/gqml.
std::filesystem::path cache_directory();

/// Parses and validates a groupoid spec file. With the cache enabled the
/// fibre entry table is read from (or written to) a file named after the
/// SHA-256 of the spec bytes. A cached table is only used after it has been
/// checked against the groupoid, so stale or corrupt entries are rewritten
/// rather than trusted.
GroupoidSpec load_spec(const std::filesystem::path& path, bool use_cache);

}  // namespace gqml::app
