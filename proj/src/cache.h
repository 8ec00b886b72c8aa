#pragma once

#include <optional>
#include <string>

#include "fusion.h"
#include "perm_group.h"

namespace fusionkit {

// Bumped whenever a change can alter any emitted document.
constexpr int kArtifactVersion = 1;

// Content-addressed result store on disk.  Keys are 64-bit FNV-1a hashes of
// a caller-built description, values whole documents.  A hit returns the
// stored bytes unchanged, so a warm result is byte-for-byte the cold one.
// Writes land in a temporary file first and are renamed into place.
class ResultCache {
 public:
  // Empty dir: the FUSIONKIT_CACHE environment variable if set, otherwise
  // ".fusionkit-cache" under the working directory.
  explicit ResultCache(std::string dir = "");

  const std::string& directory() const { return dir_; }

  static std::string key(const std::string& description);

  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& value) const;

 private:
  std::string dir_;
};

// Description of one command invocation: command name, prime, caps,
// artifact version and each input group as degree plus generator cycles.
// Caps are included because they change search behavior.
std::string cache_description(const std::string& command, int p,
                              const FusionLimits& lim,
                              const std::vector<const PermGroup*>& groups);

}  // namespace fusionkit
