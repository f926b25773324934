#pragma once

// Run configuration: physical parameters, sweep grid, evaluation mode, Monte-Carlo
// settings and output path, loaded from a JSON file. See README for the schema.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlcsec/channel.hpp"
#include "vlcsec/geometry.hpp"
#include "vlcsec/montecarlo.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {

/// Everything needed to evaluate one ASC or SOP point.
struct ModelParams {
  LambertianParams lambertian{6.0, 1e-4, 1.0, 3.0, std::nullopt};
  DeploymentGeometry geometry{8.0, 4.0, 4.0};
  SecrecyContext secrecy{0.5, 1e6, 1.0, 1.0, 10.0, 1.0, std::nullopt};
  double gamma_th = 3.0;
  /// Test hook: multiplies Eve's density constant after the bounds are computed.
  double xi2_scale = 1.0;

  /// Throws ValidationError with the offending field.
  void validate() const;
  [[nodiscard]] ChannelBounds bounds() const;
};

/// Parameters a sweep axis or curve family may vary.
inline constexpr std::string_view kSweepParams[] = {"P_dB", "rho", "eta_b", "eta_e", "gamma_th",
                                                   "xi"};
bool is_sweep_param(std::string_view name);
/// Sets one named parameter (P_dB is converted to linear P).
void assign_param(ModelParams& p, std::string_view name, double value);

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
  std::string curve_param;  ///< empty: a single curve at the fixed parameters
  std::vector<double> curve_values;

  void validate() const;
};

enum class Mode { Closed, Quadrature, MC, All };
Mode parse_mode(std::string_view s);
std::string_view to_string(Mode m);

enum class PdfKind { GainBob, GainEve, JBob, JEve };
PdfKind parse_pdf_kind(std::string_view s);
std::string_view to_string(PdfKind k);

struct PdfSpec {
  PdfKind which = PdfKind::GainBob;
  int points = 1000;
};

struct RunConfig {
  ModelParams model;
  SweepSpec sweep;
  Mode mode = Mode::Closed;
  MCConfig mc;
  PdfSpec pdf;
  std::string output_csv;
  bool bits = false;
};

/// Parses JSON text; unknown keys and bad values raise ConfigError naming the field.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace vlcsec
