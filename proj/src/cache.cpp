#include "cache.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fusionkit {

namespace fs = std::filesystem;

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) {
    const char* env = std::getenv("FUSIONKIT_CACHE");
    dir_ = (env && *env) ? env : ".fusionkit-cache";
  }
}

std::string ResultCache::key(const std::string& description) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : description) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> ResultCache::load(const std::string& key) const {
  std::ifstream in(fs::path(dir_) / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) return std::nullopt;
  return buf.str();
}

void ResultCache::store(const std::string& key, const std::string& value) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;  // cache is best effort, results are recomputed on miss
  fs::path final_path = fs::path(dir_) / (key + ".json");
  fs::path tmp = final_path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    out << value;
    if (!out.good()) {
      out.close();
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

std::string cache_description(const std::string& command, int p,
                              const FusionLimits& lim,
                              const std::vector<const PermGroup*>& groups) {
  std::ostringstream out;
  out << "fusionkit v" << kArtifactVersion << '\n'
      << "command " << command << '\n'
      << "p " << p << '\n'
      << "caps " << lim.max_s_order << ' ' << lim.max_morphisms << ' '
      << lim.max_aut_bruteforce << ' ' << lim.lattice_node_cap << '\n';
  for (const PermGroup* g : groups) {
    out << "group degree " << g->degree() << '\n';
    for (const auto& gen : g->generators()) out << gen.to_cycles() << '\n';
  }
  return out.str();
}

}  // namespace fusionkit
