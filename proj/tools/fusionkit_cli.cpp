// Command-line front end over the shared-library interface.  Successful
// commands print one JSON document to stdout or --out; failures print a
// machine-readable error object to stderr and exit 1 (input), 2 (capacity)
// or 3 (internal).

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fusionkit.h"

namespace {

struct CapsFlags {
  uint64_t max_s_order = 512;
  uint64_t max_morphisms = 1000000;
  uint64_t max_aut_bruteforce = 10000;
};

void add_caps(CLI::App* cmd, CapsFlags& caps) {
  cmd->add_option("--max-s-order", caps.max_s_order,
                  "Largest accepted Sylow order")
      ->capture_default_str();
  cmd->add_option("--max-morphisms", caps.max_morphisms,
                  "Morphism-closure bound")
      ->capture_default_str();
  cmd->add_option("--max-aut-bruteforce", caps.max_aut_bruteforce,
                  "Automorphism enumeration bound")
      ->capture_default_str();
}

int exit_code(int rc) {
  switch (rc) {
    case FK_EINPUT:
      return 1;
    case FK_ECAPACITY:
      return 2;
    default:
      return 3;
  }
}

void print_error(const std::string& code, const std::string& message) {
  nlohmann::json err{{"schema", 1},
                     {"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

void print_error(int rc) {
  const char* code = rc == FK_EINPUT      ? "input"
                     : rc == FK_ECAPACITY ? "capacity"
                                          : "internal";
  print_error(code, fk_last_error());
}

// Consumes text (library-allocated) on success.
int deliver(int rc, char* text, const std::string& out_path) {
  if (rc != FK_OK) {
    print_error(rc);
    return exit_code(rc);
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (f) f << text;
    if (!f) {
      fk_string_free(text);
      print_error("input", "cannot write " + out_path);
      return 1;
    }
  }
  fk_string_free(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturated fusion systems of finite groups: analysis, "
               "reduction, comparison and linking-system data"};
  app.require_subcommand(1);

  std::string group, group_a, group_b, out;
  int p = 0;
  bool with_linking = false;
  CapsFlags caps;
  int status = 0;

  auto run = [&](auto&& fn) {
    fk_caps c{caps.max_s_order, caps.max_morphisms, caps.max_aut_bruteforce};
    char* text = nullptr;
    status = deliver(fn(c, &text), text, out);
  };

  auto* analyze = app.add_subcommand(
      "analyze", "Structural report of the fusion system of a group");
  analyze->add_option("--group", group, "Group selector")->required();
  analyze->add_option("--p", p, "Prime (0: take it from a group file)");
  analyze->add_flag("--linking", with_linking,
                    "Include the automorphism transfer report");
  analyze->add_option("--out", out, "Write the document here");
  add_caps(analyze, caps);
  analyze->callback([&] {
    run([&](const fk_caps& c, char** text) {
      return fk_analyze(group.c_str(), p, with_linking ? 1 : 0, &c, text);
    });
  });

  auto* reduce = app.add_subcommand("reduce", "Reduction trace of the system");
  reduce->add_option("--group", group, "Group selector")->required();
  reduce->add_option("--p", p, "Prime (0: take it from a group file)");
  reduce->add_option("--out", out, "Write the document here");
  add_caps(reduce, caps);
  reduce->callback([&] {
    run([&](const fk_caps& c, char** text) {
      return fk_reduce(group.c_str(), p, &c, text);
    });
  });

  auto* compare = app.add_subcommand(
      "compare", "Isomorphism test between two systems at one prime");
  compare->add_option("--a", group_a, "First group selector")->required();
  compare->add_option("--b", group_b, "Second group selector")->required();
  compare->add_option("--p", p, "Prime (0: take it from the group files)");
  compare->add_option("--out", out, "Write the document here");
  add_caps(compare, caps);
  compare->callback([&] {
    run([&](const fk_caps& c, char** text) {
      return fk_compare(group_a.c_str(), group_b.c_str(), p, &c, text);
    });
  });

  auto* linking = app.add_subcommand(
      "linking", "Automorphism transfer report (kappa and mu kernel data)");
  linking->add_option("--group", group, "Group selector")->required();
  linking->add_option("--p", p, "Prime (0: take it from a group file)");
  linking->add_option("--out", out, "Write the document here");
  add_caps(linking, caps);
  linking->callback([&] {
    run([&](const fk_caps& c, char** text) {
      return fk_linking(group.c_str(), p, &c, text);
    });
  });

  auto* catalog = app.add_subcommand("catalog", "List the built-in groups");
  catalog->add_option("--out", out, "Write the document here");
  catalog->callback([&] {
    run([&](const fk_caps&, char** text) { return fk_catalog(text); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    print_error("input", e.what());
    return 1;
  }
  return status;
}
