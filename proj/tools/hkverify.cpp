#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperholo/suites.hpp"

using namespace hyperholo;

namespace {

enum Exit { kOk = 0, kNumerical = 1, kUsage = 2 };

template <class T>
std::vector<T> parse_list(const std::vector<std::string>& parts, const char* what) {
  std::string text;
  for (const auto& p : parts) text += p + ",";
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_same_v<T, int>)
        v = std::stoi(item, &used);
      else
        v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ConfigError(std::string(what) + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void print_summary(const Report& rep, std::ostream& os) {
  for (const auto& r : rep.records()) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  residual=" << r.residual << "  tol=" << r.tolerance;
    if (r.value) os << "  value=" << std::setprecision(12) << *r.value << std::setprecision(6);
    if (!r.error.empty()) os << "  error: " << r.error;
    os << '\n';
  }
  os << rep.passed() << "/" << rep.records().size() << " checks passed\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::string profile_text(const RunConfig& cfg, const std::string& kind) {
  std::ostringstream os;
  if (kind == "gh")
    write_gh_profile(cfg, os);
  else if (kind == "quotient")
    write_quotient_scatter(cfg, os);
  else
    throw ConfigError("profiles exist for the gh and quotient suites only");
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for hyperkahler and hyperholomorphic structures"};
  app.set_help_flag("--help", "print help");
  app.set_config("--config", "", "flat key = value file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  // list options also accept several tokens, so an unquoted "0,1,3" in the config file works
  std::vector<std::string> centers{"0,1"}, k_text, l_text;
  double tol = -1.0;
  int samples = 0;
  app.add_option("--suite", cfg.suite, "flat, bg, gh, quotient, twistor, dynkin or all");
  app.add_option("--tol", tol, "replace every tolerance");
  app.add_option("--h", cfg.h, "finite-difference step")->capture_default_str();
  app.add_option("--order", cfg.order, "finite-difference order (2 or 4)")->capture_default_str();
  app.add_option("--samples", samples, "sample count for every check (default: per suite)");
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--centers", centers, "GH centres on the x1-axis, comma separated")->capture_default_str();
  app.add_option("--c", cfg.c, "GH lift constant; quotient level when positive")->capture_default_str();
  app.add_option("--n", cfg.n, "quaternionic dimension for flat and twistor suites")->capture_default_str();
  app.add_option("--diagram", cfg.diagram, "extended Dynkin diagram, e.g. A5, D4, E8")->capture_default_str();
  app.add_option("--k", k_text, "flat circle weights on z, comma separated");
  app.add_option("--l", l_text, "flat circle weights on w, comma separated");
  app.add_option("--nodes", cfg.contour_nodes, "contour nodes for residues")->capture_default_str();
  app.add_option("--out", cfg.out, "output path (JSON report, or CSV for profile)");
  app.add_option("--csv", cfg.csv, "also write the gh/quotient profile CSV here");

  auto* verify = app.add_subcommand("verify", "run a check suite");
  std::string suite_pos;
  verify->add_option("suite", suite_pos, "suite name (same as --suite)");
  auto* signs = app.add_subcommand("signs", "sign assignment on an extended Dynkin diagram");
  auto* profile = app.add_subcommand("profile", "emit CSV profiles for gh or quotient");
  std::string profile_pos;
  profile->add_option("kind", profile_pos, "gh or quotient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    cfg.centers = parse_list<double>(centers, "--centers");
    cfg.k = parse_list<int>(k_text, "--k");
    cfg.l = parse_list<int>(l_text, "--l");
    if (tol >= 0.0) cfg.tol = tol;
    else if (app.count("--tol")) throw ConfigError("--tol must be non-negative");
    if (app.count("--samples")) cfg.samples = samples;
    if (!suite_pos.empty()) cfg.suite = suite_pos;
    if (!profile_pos.empty()) cfg.suite = profile_pos;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*signs) {
      const DynkinGraph g = parse_diagram(cfg.diagram);
      const auto c = dynkin_signs(g);
      if (!c) {
        std::cout << g.tag << ": NONE (odd cycle)\n";
      } else {
        std::cout << g.tag << ":";
        for (int x : *c) std::cout << ' ' << (x > 0 ? '+' : '-');
        std::cout << '\n';
      }
      return kOk;
    }
    if (*profile) {
      const std::string text = profile_text(cfg, cfg.suite);
      if (cfg.out.empty())
        std::cout << text;
      else
        write_file(cfg.out, text);
      return kOk;
    }

    const Report rep = run_suite(cfg);
    const std::string json = rep.to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << json;
    } else {
      write_file(cfg.out, json);
      print_summary(rep, std::cout);
    }
    if (!cfg.csv.empty()) write_file(cfg.csv, profile_text(cfg, cfg.suite));
    return rep.all_pass() ? kOk : kNumerical;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
