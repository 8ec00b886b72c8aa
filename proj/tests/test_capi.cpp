#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "fusionkit.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// All library calls in this binary cache under a private directory.
const std::string g_cache_root = [] {
  char tmpl[] = "/tmp/fusionkit-test-cache-XXXXXX";
  std::string dir = mkdtemp(tmpl);
  setenv("FUSIONKIT_CACHE", dir.c_str(), 1);
  return dir;
}();

struct Doc {
  int rc;
  std::string text;
  json parsed;
};

Doc analyze(const char* selector, int p, int with_linking = 0,
            const fk_caps* caps = nullptr) {
  char* s = nullptr;
  int rc = fk_analyze(selector, p, with_linking, caps, &s);
  Doc d{rc, {}, {}};
  if (rc == FK_OK) {
    d.text = s;
    d.parsed = json::parse(d.text);
    fk_string_free(s);
  }
  return d;
}

}  // namespace

TEST_CASE("version and catalog") {
  CHECK(std::string(fk_version()).substr(0, 9) == "fusionkit");

  char* s = nullptr;
  REQUIRE(fk_catalog(&s) == FK_OK);
  json doc = json::parse(s);
  fk_string_free(s);
  CHECK(doc["schema"] == 1);
  CHECK(doc["entries"].size() >= 10);
  bool has_a6 = false;
  for (const auto& e : doc["entries"])
    if (e["selector"] == "alt:6") {
      has_a6 = true;
      CHECK(e["order"] == "360");
      CHECK(e["default_p"] == 2);
    }
  CHECK(has_a6);
}

TEST_CASE("analyze document structure") {
  Doc d = analyze("alt:6", 2);
  REQUIRE(d.rc == FK_OK);
  const json& doc = d.parsed;
  CHECK(doc["schema"] == 1);
  CHECK(doc["input"] == "alt:6");
  CHECK(doc["p"] == 2);
  CHECK(doc["s_order"] == "8");
  CHECK(doc["g_order"] == "360");
  CHECK(doc["saturated"] == true);
  CHECK(doc["reduced"]["reduced"] == true);
  CHECK(doc["constrained"] == false);
  CHECK(doc["essential_classes"].size() == 2);
  CHECK(doc["op_core"]["order"] == "1");
  CHECK(doc["focal"]["order"] == "8");
  CHECK(doc["reduction"]["steps"].empty());
  CHECK(doc["linking"].is_null());

  // serialization round trip
  CHECK(json::parse(doc.dump()) == doc);
}

TEST_CASE("analyze covers the inner and constrained cases") {
  Doc d8 = analyze("dihedral:3", 2);
  REQUIRE(d8.rc == FK_OK);
  CHECK(d8.parsed["reduced"]["reduced"] == false);
  CHECK(d8.parsed["op_core"]["order"] == "8");
  CHECK(d8.parsed["constrained"] == true);
  CHECK(d8.parsed["reduction"]["trivial"] == true);

  Doc s4 = analyze("sym:4", 2);
  REQUIRE(s4.rc == FK_OK);
  CHECK(s4.parsed["constrained"] == true);
  CHECK(s4.parsed["reduction"]["trivial"] == true);
  CHECK(s4.parsed["essential_classes"].size() == 1);
}

TEST_CASE("analyze with linking data") {
  Doc d = analyze("alt:6", 2, 1);
  REQUIRE(d.rc == FK_OK);
  const json& lk = d.parsed["linking"];
  REQUIRE(!lk.is_null());
  CHECK(lk["out_g_order"] == "4");
  CHECK(lk["ker_mu_lower"] == "2");
  CHECK(lk["ker_mu_upper"] == "2");
  CHECK(lk["kappa_verdict"] == "isomorphism");
  CHECK(lk["probes"]["ehat0"].size() == 2);
}

TEST_CASE("reduce and compare and linking endpoints") {
  char* s = nullptr;
  REQUIRE(fk_reduce("sym:6", 2, nullptr, &s) == FK_OK);
  json red = json::parse(s);
  fk_string_free(s);
  REQUIRE(red["trace"]["steps"].size() == 1);
  CHECK(red["trace"]["steps"][0]["op"] == "O^p");
  CHECK(red["trace"]["trivial"] == false);
  CHECK(red["trace"]["result"]["s_order"] == "8");

  s = nullptr;
  REQUIRE(fk_compare("alt:6", "psl2:7", 2, nullptr, &s) == FK_OK);
  json cmp = json::parse(s);
  fk_string_free(s);
  CHECK(cmp["isomorphic"] == true);
  CHECK(!cmp["witness"].is_null());
  CHECK(cmp["witness"]["images"].size() ==
        cmp["witness"]["dom_gens"].size());

  s = nullptr;
  REQUIRE(fk_compare("alt:6", "dihedral:3", 2, nullptr, &s) == FK_OK);
  json cmp2 = json::parse(s);
  fk_string_free(s);
  CHECK(cmp2["isomorphic"] == false);
  CHECK(cmp2["witness"].is_null());

  s = nullptr;
  REQUIRE(fk_linking("sym:4", 2, nullptr, &s) == FK_OK);
  json lk = json::parse(s);
  fk_string_free(s);
  CHECK(lk["report"]["kappa_verdict"] == "isomorphism");
  CHECK(lk["report"]["out_g_order"] == "1");
}

TEST_CASE("error mapping") {
  char* s = nullptr;

  CHECK(fk_analyze("alt:banana", 2, 0, nullptr, &s) == FK_EINPUT);
  CHECK(std::string(fk_last_error()).size() > 0);
  CHECK(fk_analyze("nosuchfamily:3", 2, 0, nullptr, &s) == FK_EINPUT);
  CHECK(fk_analyze("alt:6", 0, 0, nullptr, &s) == FK_EINPUT);   // no prime
  CHECK(fk_analyze("alt:6", 4, 0, nullptr, &s) == FK_EINPUT);   // not a prime
  CHECK(fk_analyze("file:/nonexistent/g.txt", 0, 0, nullptr, &s) == FK_EINPUT);
  CHECK(fk_analyze(nullptr, 2, 0, nullptr, &s) == FK_EINPUT);
  CHECK(fk_analyze("alt:6", 2, 0, nullptr, nullptr) == FK_EINPUT);
  CHECK(fk_compare("alt:6", "sym:4", 0, nullptr, &s) == FK_EINPUT);

  fk_caps tight{4, 0, 0};
  CHECK(fk_analyze("alt:6", 2, 0, &tight, &s) == FK_ECAPACITY);
  CHECK(s == nullptr);  // untouched on failure
}

TEST_CASE("group files feed the analyzer") {
  fs::path path = fs::path(g_cache_root) / "klein.grp";
  {
    std::ofstream f(path);
    f << "degree: 4\n"
      << "p: 2\n"
      << "generators:\n"
      << "(1 2)(3 4)\n"
      << "(1 3)(2 4)\n";
  }
  std::string sel = "file:" + path.string();
  Doc d = analyze(sel.c_str(), 0);  // prime read from the file
  REQUIRE(d.rc == FK_OK);
  CHECK(d.parsed["p"] == 2);
  CHECK(d.parsed["s_order"] == "4");
  CHECK(d.parsed["group_backed"] == true);

  // explicit p wins over the file prime
  Doc d3 = analyze(sel.c_str(), 3);
  REQUIRE(d3.rc == FK_OK);
  CHECK(d3.parsed["p"] == 3);
  CHECK(d3.parsed["s_order"] == "1");
}

TEST_CASE("warm cache replays the cold bytes") {
  char tmpl[] = "/tmp/fusionkit-test-cache-XXXXXX";
  std::string dir = mkdtemp(tmpl);
  setenv("FUSIONKIT_CACHE", dir.c_str(), 1);

  Doc cold = analyze("sym:3", 3);
  REQUIRE(cold.rc == FK_OK);
  size_t files = std::distance(fs::directory_iterator(dir), fs::directory_iterator());
  CHECK(files == 1);

  Doc warm = analyze("sym:3", 3);
  REQUIRE(warm.rc == FK_OK);
  CHECK(warm.text == cold.text);  // byte for byte

  // a different cap set is a different key
  fk_caps caps{256, 0, 0};
  Doc other = analyze("sym:3", 3, 0, &caps);
  REQUIRE(other.rc == FK_OK);
  files = std::distance(fs::directory_iterator(dir), fs::directory_iterator());
  CHECK(files == 2);

  setenv("FUSIONKIT_CACHE", g_cache_root.c_str(), 1);
}

TEST_CASE("opaque system handles") {
  fk_system* sys = nullptr;
  REQUIRE(fk_system_open("sym:4", 2, nullptr, &sys) == FK_OK);
  REQUIRE(sys != nullptr);
  CHECK(fk_system_p(sys) == 2);
  CHECK(fk_system_s_order(sys) == 8);

  char* s = nullptr;
  REQUIRE(fk_system_analyze(sys, 0, &s) == FK_OK);
  std::string via_handle = s;
  fk_string_free(s);
  fk_system_close(sys);

  Doc direct = analyze("sym:4", 2);
  REQUIRE(direct.rc == FK_OK);
  CHECK(via_handle == direct.text);

  fk_system* bad = nullptr;
  CHECK(fk_system_open("sym:oops", 2, nullptr, &bad) == FK_EINPUT);
  CHECK(bad == nullptr);
  CHECK(fk_system_analyze(nullptr, 0, &s) == FK_EINPUT);
}
