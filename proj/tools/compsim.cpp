#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "compsim/sim.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  compsim::RunConfig config;
  try {
    config = compsim::parse_cli(args);
  } catch (const compsim::CliError& e) {
    std::fprintf(e.exit_code == 0 ? stdout : stderr, "%s\n", e.what());
    return e.exit_code;
  }

  try {
    const compsim::RunResult result = compsim::run(config);
    compsim::write_outputs(result);

    const auto print_summary = [](const compsim::ModeResult& m) {
      const auto show = [](const std::optional<double>& v) {
        return v ? *v : 0.0;
      };
      std::printf(
          "%-8s  pico avg %7.3f Mbps  pico edge %7.3f Mbps  overall avg "
          "%7.3f Mbps  bler %5.2f%%\n",
          m.mode_name.c_str(), show(m.kpis.pico.average_mbps),
          show(m.kpis.pico.edge_mbps), show(m.kpis.overall.average_mbps),
          show(m.kpis.overall.mean_bler) * 100.0);
    };
    if (result.baseline) print_summary(*result.baseline);
    if (result.dynamic) print_summary(*result.dynamic);
    std::printf("outputs written to %s\n", config.output_dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
