// vlcsec: ASC / SOP sweeps, PDF dumps and the validation suite.
//
//   vlcsec asc-sweep --config configs/asc_power_rho.json --mode all --out asc_power_rho.csv
//   vlcsec validate  --config configs/validate.json --out validate.csv
//
// Exit codes: 0 ok, 1 validation failure, 2 usage or config error, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vlcsec/config.hpp"
#include "vlcsec/error.hpp"
#include "vlcsec/sweep.hpp"
#include "vlcsec/validation.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  bool bits = false;
};

void add_common(CLI::App* app, Overrides& o, bool config_required) {
  auto* c = app->add_option("--config", o.config, "JSON run configuration");
  if (config_required) c->required();
  c->check(CLI::ExistingFile);
  app->add_option("--mode", o.mode, "closed | quadrature | mc | all");
  app->add_option("--seed", o.seed, "Monte-Carlo seed");
  app->add_option("--samples", o.samples, "Monte-Carlo sample count");
  app->add_option("--workers", o.workers, "worker threads");
  app->add_option("--out", o.out, "CSV output path ('-' for stdout)");
  app->add_flag("--bits", o.bits, "report ASC in bits instead of nats");
}

vlcsec::RunConfig resolve(const Overrides& o) {
  vlcsec::RunConfig cfg = o.config.empty() ? vlcsec::RunConfig{} : vlcsec::load_config(o.config);
  if (o.mode) {
    try {
      cfg.mode = vlcsec::parse_mode(*o.mode);
    } catch (const std::exception& e) {
      throw vlcsec::ConfigError(std::string("--mode: ") + e.what());
    }
  }
  if (o.seed) cfg.mc.seed = *o.seed;
  if (o.samples) cfg.mc.n_samples = *o.samples;
  if (o.workers) cfg.mc.n_streams = *o.workers;
  if (o.out) cfg.output_csv = *o.out;
  if (o.bits) cfg.bits = true;
  try {
    cfg.mc.validate();
  } catch (const std::exception& e) {
    throw vlcsec::ConfigError(std::string("mc: ") + e.what());
  }
  return cfg;
}

template <class Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw vlcsec::ConfigError("output.csv: cannot open '" + path + "' for writing");
  write(f);
  if (!f) throw vlcsec::ConfigError("output.csv: write to '" + path + "' failed");
}

void require_axis(const vlcsec::RunConfig& cfg) {
  if (cfg.sweep.axis.empty()) throw vlcsec::ConfigError("sweep.axis: missing");
  try {
    cfg.sweep.validate();
  } catch (const vlcsec::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw vlcsec::ConfigError(e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Secrecy capacity and outage for randomly placed VLC users"};
  app.require_subcommand(1);
  Overrides asc_o, sop_o, pdf_o, val_o;
  auto* asc = app.add_subcommand("asc-sweep", "average secrecy capacity over a parameter sweep");
  auto* sop = app.add_subcommand("sop-sweep", "secrecy outage lower bound over a parameter sweep");
  auto* pdf = app.add_subcommand("pdf", "dump a channel-gain or SNR density over its support");
  auto* val = app.add_subcommand("validate", "closed form / quadrature / Monte-Carlo checks");
  add_common(asc, asc_o, true);
  add_common(sop, sop_o, true);
  add_common(pdf, pdf_o, true);
  add_common(val, val_o, false);
  std::optional<int> criterion;
  std::string report_path;
  val->add_option("--criterion", criterion, "run a single criterion (1..8)")->check(CLI::Range(1, 8));
  val->add_option("--report", report_path, "also write the text report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (asc->parsed()) {
    const auto cfg = resolve(asc_o);
    require_axis(cfg);
    const auto table = vlcsec::run_asc_sweep(cfg);
    emit(cfg.output_csv, [&](std::ostream& s) { vlcsec::write_sweep_csv(table, s); });
    return 0;
  }
  if (sop->parsed()) {
    const auto cfg = resolve(sop_o);
    if (cfg.bits) throw vlcsec::ConfigError("--bits: only meaningful for asc-sweep");
    require_axis(cfg);
    const auto table = vlcsec::run_sop_sweep(cfg);
    emit(cfg.output_csv, [&](std::ostream& s) { vlcsec::write_sweep_csv(table, s); });
    return 0;
  }
  if (pdf->parsed()) {
    const auto cfg = resolve(pdf_o);
    const auto rows = vlcsec::run_pdf_dump(cfg);
    emit(cfg.output_csv, [&](std::ostream& s) { vlcsec::write_pdf_csv(rows, s); });
    return 0;
  }

  const auto cfg = resolve(val_o);
  vlcsec::ValidationReport rep;
  if (criterion) {
    rep.checks.push_back(*criterion == 8 ? vlcsec::check_reproducibility(cfg)
                                         : vlcsec::run_check(*criterion, cfg));
  } else {
    rep = vlcsec::run_validate(cfg);
  }
  const auto text = rep.text();
  std::cout << text << std::flush;
  if (!report_path.empty()) {
    emit(report_path, [&](std::ostream& s) { s << text; });
  }
  if (!cfg.output_csv.empty()) {
    emit(cfg.output_csv, [&](std::ostream& s) { s << rep.csv(); });
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vlcsec::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const vlcsec::ConsistencyError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const vlcsec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const vlcsec::ValidationError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return 2;
  } catch (const vlcsec::InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
