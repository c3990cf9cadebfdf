#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gerst/deformation.hpp"
#include "gerst/json_io.hpp"
#include "gerst/suites.hpp"

namespace {

// Exit codes above the failure counts are reserved for bad input.
constexpr int kMaxFailureCode = 250;
constexpr int kInputError = 255;

std::string defect_cell(const gerst::Json& check) {
  if (check.contains("defect")) return check["defect"].get<std::string>();
  if (check.contains("dims")) return check["dims"].dump();
  return "";
}

void print_table(const gerst::Json& report, std::ostream& os) {
  os << report["command"].get<std::string>() << "\n";
  std::size_t width = 4;
  for (const auto& c : report["checks"]) width = std::max(width, c["name"].get<std::string>().size());
  os << std::left << std::setw(static_cast<int>(width)) << "check" << "  status  defect / dims\n";
  for (const auto& c : report["checks"]) {
    os << std::left << std::setw(static_cast<int>(width)) << c["name"].get<std::string>() << "  "
       << std::setw(6) << c["status"].get<std::string>() << "  " << defect_cell(c);
    if (c.contains("cases")) os << "  [" << c["cases"].get<std::size_t>() << " cases]";
    if (c.contains("wall_time_s")) os << "  (" << std::fixed << std::setprecision(3) << c["wall_time_s"].get<double>() << " s)";
    os << "\n";
    if (c.contains("witness")) os << "    witness: " << c["witness"].get<std::string>() << "\n";
  }
  const auto& s = report["summary"];
  const auto total = s["checks"].get<std::size_t>();
  os << total - s["failures"].get<std::size_t>() << "/" << total << " checks passed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hochschild cochains, Maurer-Cartan deformations and jet-model identity checks"};
  app.require_subcommand(1);

  std::string field_text = "Q";
  bool pretty = false, no_times = false;
  auto* field_opt = app.add_option("--field", field_text, "Coefficient field: Q or Fp:<p>");
  app.add_flag("--pretty", pretty, "Print a table instead of JSON");
  app.add_flag("--no-times", no_times, "Omit wall-time fields");

  auto* hh = app.add_subcommand("hh", "Hochschild cohomology dimensions of an algebra");
  std::string hh_file;
  std::size_t kmax = 2;
  std::optional<int> window;
  hh->add_option("file", hh_file, "Algebra JSON")->required();
  hh->add_option("--kmax", kmax, "Highest degree");
  hh->add_option("--window", window, "Weight window for weight-capped algebras");

  auto* verify = app.add_subcommand("verify", "Run an identity suite");
  std::string suite, config_file;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 0;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--config", config_file, "Model configuration JSON");
  verify->add_option("--seed", seed, "Seed for random draws (overrides the config)");
  verify->add_option("--trials", trials, "Number of random draws (0 = suite default)");

  auto* deform = app.add_subcommand("deform", "Deformed product from a Maurer-Cartan element");
  std::string deform_file, mc_source;
  int order = 3;
  deform->add_option("file", deform_file, "Algebra JSON")->required();
  deform->add_option("--mc", mc_source, "MC element JSON, or 'moyal'")->required();
  deform->add_option("--order", order, "Truncation order N (work mod t^N)")->check(CLI::Range(1, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    gerst::Field field = gerst::Field::parse(field_text);
    gerst::RunReport report;
    if (*verify) {
      gerst::DeskConfig cfg;
      if (!config_file.empty()) cfg = gerst::config_from_json(gerst::read_json_file(config_file));
      if (field_opt->count()) cfg.field = field;
      if (seed) cfg.seed = *seed;
      report = gerst::run_suite(suite, cfg, gerst::SuiteOptions{trials});
    } else {
      gerst::FieldGuard guard(field);
      if (*hh) {
        const gerst::Algebra a = gerst::algebra_from_json(gerst::read_json_file(hh_file));
        report = gerst::run_hh(a, kmax, window);
      } else {
        const gerst::Algebra a = gerst::algebra_from_json(gerst::read_json_file(deform_file));
        const bool moyal = mc_source == "moyal";
        const gerst::MCElement lambda =
            moyal ? gerst::moyal_mc(a, order) : gerst::mc_from_json(a, gerst::read_json_file(mc_source), order);
        report = gerst::run_deform(a, lambda, moyal);
      }
    }
    const gerst::Json out = report.to_json(!no_times);
    if (pretty)
      print_table(out, std::cout);
    else
      std::cout << out.dump(2) << "\n";
    return static_cast<int>(std::min<std::size_t>(report.failures(), kMaxFailureCode));
  } catch (const gerst::UnknownSuite& e) {
    std::cerr << "gerst: " << e.what() << " (known:";
    for (const auto& n : gerst::suite_names()) std::cerr << " " << n;
    std::cerr << ")\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "gerst: " << e.what() << "\n";
    return kInputError;
  }
}
