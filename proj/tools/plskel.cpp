// plskel <command> <session-file> [--name X] [--args ...] [--cap N] [--probes D]
//
// Exit codes: 0 success, 1 input or validation error, 2 resource cap.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "plskel/session.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multiplicative PL geometry and Gauss valuations"};
  std::string command, file, name;
  std::vector<std::string> args;
  std::optional<std::size_t> cap;
  long probes = 2;
  app.add_option("command", command, "empty? dim boundary decompose image qe eval sample member quotient orbit "
                                     "gauss sharp abhyankar push")
      ->required();
  app.add_option("session", file, "Session file")->required();
  app.add_option("--name", name, "Object the command acts on");
  app.add_option("--args", args, "Further object names")->expected(0, -1);
  app.add_option("--cap", cap, "DNF cell cap (overrides PLSKEL_CAP)");
  app.add_option("--probes", probes, "Abhyankar probe degree")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  plskel::Limits limits;
  if (const char* env = std::getenv("PLSKEL_CAP")) {
    try {
      limits.cell_cap = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "error: PLSKEL_CAP is not a number: " << env << "\n";
      return kExitInput;
    }
  }
  if (cap) limits.cell_cap = *cap;

  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot read " << file << "\n";
    return kExitInput;
  }
  std::stringstream text;
  text << in.rdbuf();

  try {
    plskel::Session session = plskel::parse_session(text.str(), limits);
    std::string line = command + " " + name;
    for (const auto& a : args) line += " " + a;
    plskel::RunOptions options;
    options.probe_degree = probes;
    std::cout << plskel::run(session, line, options).render();
    return kExitOk;
  } catch (const plskel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource_cap() ? kExitCap : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
