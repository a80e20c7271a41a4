#include "gqml_app/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <system_error>

#include <openssl/evp.h>

#include "gqml/errors.hpp"

namespace gqml::app {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Internal, "SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::filesystem::path cache_directory() {
  if (const char* dir = std::getenv("GQML_CACHE_DIR"); dir != nullptr && *dir != '\0') return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "gqml";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "gqml";
  }
  return std::filesystem::temp_directory_path() / "gqml-cache";
}

namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<std::vector<int>> read_cached(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const Json doc = Json::parse(in);
    if (doc.at("version").get<int>() != 1) return std::nullopt;
    return doc.at("fibre_entries").get<std::vector<int>>();
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

void write_cached(const std::filesystem::path& file, const std::vector<int>& entries) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;  // caching is best effort
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << Json{{"version", 1}, {"fibre_entries", entries}}.dump() << '\n';
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

GroupoidSpec load_spec(const std::filesystem::path& path, bool use_cache) {
  const std::string bytes = read_bytes(path);
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  GroupoidSpec spec = parse_groupoid_spec(doc);
  if (!use_cache) return spec;

  const auto file = cache_directory() / (sha256_hex(bytes) + ".fibre.json");
  if (auto cached = read_cached(file)) {
    try {
      spec.groupoid = spec.groupoid.with_fibre_entries(std::move(*cached));
      return spec;
    } catch (const Error&) {
      // stale or corrupt: fall through and rewrite
    }
  }
  write_cached(file, spec.groupoid.fibre_entries());
  return spec;
}

}  // namespace gqml::app
