#include "vlcsec/sweep.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "vlcsec/error.hpp"

namespace vlcsec {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<SweepPoint> expand_sweep(const RunConfig& cfg) {
  cfg.sweep.validate();
  std::vector<SweepPoint> points;
  const bool curves = !cfg.sweep.curve_param.empty();
  const std::vector<double> curve_values = curves ? cfg.sweep.curve_values : std::vector<double>{0.0};
  for (double cv : curve_values) {
    ModelParams base = cfg.model;
    std::string id = "base";
    if (curves) {
      assign_param(base, cfg.sweep.curve_param, cv);
      id = cfg.sweep.curve_param + "=" + format_number(cv);
    }
    for (double av : cfg.sweep.values) {
      ModelParams p = base;
      assign_param(p, cfg.sweep.axis, av);
      points.push_back({av, id, p});
    }
  }
  return points;
}

namespace {

// Rethrows the active exception with the sweep point prepended, keeping its category.
[[noreturn]] void rethrow_with_point(const SweepPoint& pt, const std::string& axis) {
  const std::string where = "at " + pt.curve_id + ", " + axis + "=" + format_number(pt.axis_value) + ": ";
  try {
    throw;
  } catch (const NumericError& e) {
    throw NumericError(where + e.what());
  } catch (const ConsistencyError& e) {
    throw ConsistencyError(where + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + e.what());
  } catch (const InputError& e) {
    throw InputError(where + e.what());
  }
}

using GeometryKey = std::tuple<double, double, double, double, double, double, double>;

GeometryKey key_of(const ModelParams& p) {
  return {p.geometry.D, p.geometry.rho, p.geometry.l, p.lambertian.m,
          p.lambertian.A, p.lambertian.Ts, p.lambertian.g};
}

// Monte-Carlo over all points with one set of placement draws (common random numbers).
template <class F>
void run_mc(const RunConfig& cfg, const std::vector<SweepPoint>& points, F&& per_point) {
  const auto draws = draw_placements(cfg.mc);
  std::map<GeometryKey, GainSamples> cache;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    try {
      auto it = cache.find(key_of(pt.params));
      if (it == cache.end()) {
        (void)pt.params.bounds();
        it = cache.emplace(key_of(pt.params),
                           gains_for(draws, pt.params.lambertian, pt.params.geometry, cfg.mc.n_streams))
                 .first;
      }
      per_point(i, it->second);
    } catch (...) {
      rethrow_with_point(pt, cfg.sweep.axis);
    }
  }
}

template <class F>
void run_analytic(const RunConfig& cfg, const std::vector<SweepPoint>& points, F&& per_point) {
  parallel_for(points.size(), cfg.mc.n_streams, [&](std::uint64_t i) {
    try {
      per_point(i);
    } catch (...) {
      rethrow_with_point(points[i], cfg.sweep.axis);
    }
  });
}

bool wants_closed(Mode m) { return m == Mode::Closed || m == Mode::All; }
bool wants_quad(Mode m) { return m == Mode::Quadrature || m == Mode::All; }
bool wants_mc(Mode m) { return m == Mode::MC || m == Mode::All; }

SweepTable skeleton(const std::vector<SweepPoint>& points) {
  SweepTable t;
  for (const auto& p : points) t.rows.push_back({p.axis_value, p.curve_id, {}, {}, {}, {}, {}, {}});
  return t;
}

}  // namespace

SweepTable run_asc_sweep(const RunConfig& cfg) {
  const auto points = expand_sweep(cfg);
  auto table = skeleton(points);
  const double unit = cfg.bits ? 1.0 / std::numbers::ln2 : 1.0;
  const double m = cfg.model.lambertian.m;
  if (wants_closed(cfg.mode) || wants_quad(cfg.mode)) {
    run_analytic(cfg, points, [&](std::uint64_t i) {
      const auto& p = points[i].params;
      const auto b = p.bounds();
      if (wants_closed(cfg.mode)) table.rows[i].closed_form = unit * asc_closed_form(p.secrecy, b, m);
      if (wants_quad(cfg.mode)) table.rows[i].quadrature = unit * asc_quadrature(p.secrecy, b, m);
    });
  }
  if (wants_mc(cfg.mode)) {
    run_mc(cfg, points, [&](std::size_t i, const GainSamples& g) {
      const auto e = estimate_asc(g, points[i].params.secrecy, cfg.mc.n_streams);
      table.rows[i].mc_mean = unit * e.mean;
      table.rows[i].mc_stderr = unit * e.std_error;
    });
  }
  return table;
}

SweepTable run_sop_sweep(const RunConfig& cfg) {
  const auto points = expand_sweep(cfg);
  auto table = skeleton(points);
  const double m = cfg.model.lambertian.m;
  if (wants_closed(cfg.mode) || wants_quad(cfg.mode)) {
    run_analytic(cfg, points, [&](std::uint64_t i) {
      const auto& p = points[i].params;
      const auto b = p.bounds();
      if (wants_closed(cfg.mode)) {
        table.rows[i].closed_form = sop_lower_bound_closed_form(p.secrecy, b, p.gamma_th, m);
      }
      if (wants_quad(cfg.mode)) table.rows[i].quadrature = sop_quadrature(p.secrecy, b, p.gamma_th, m);
    });
  }
  if (wants_mc(cfg.mode)) {
    run_mc(cfg, points, [&](std::size_t i, const GainSamples& g) {
      const auto& p = points[i].params;
      const auto e = estimate_sop(g, p.secrecy, p.gamma_th, cfg.mc.n_streams);
      table.rows[i].mc_mean = e.lower.mean;
      table.rows[i].mc_stderr = e.lower.std_error;
      table.rows[i].mc_exact_mean = e.exact.mean;
      table.rows[i].mc_exact_stderr = e.exact.std_error;
    });
  }
  return table;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
  out << "axis_value,curve_id,closed_form,quadrature,mc_mean,mc_stderr,mc_exact_mean,mc_exact_stderr\n";
  for (const auto& r : table.rows) {
    out << format_number(r.axis_value) << ',' << r.curve_id << ',' << cell(r.closed_form) << ','
        << cell(r.quadrature) << ',' << cell(r.mc_mean) << ',' << cell(r.mc_stderr) << ','
        << cell(r.mc_exact_mean) << ',' << cell(r.mc_exact_stderr) << '\n';
  }
}

std::vector<PdfRow> run_pdf_dump(const RunConfig& cfg) {
  std::vector<double> curve_values{0.0};
  const bool curves = !cfg.sweep.curve_param.empty();
  if (curves) {
    if (!is_sweep_param(cfg.sweep.curve_param)) {
      throw ConfigError("sweep.curves.param: unknown parameter '" + cfg.sweep.curve_param + "'");
    }
    if (cfg.sweep.curve_values.empty()) throw ConfigError("sweep.curves.values: list is empty");
    curve_values = cfg.sweep.curve_values;
  }
  const double m = cfg.model.lambertian.m;
  const int n = cfg.pdf.points;
  std::vector<PdfRow> rows;
  for (double cv : curve_values) {
    ModelParams p = cfg.model;
    std::string id = "base";
    if (curves) {
      assign_param(p, cfg.sweep.curve_param, cv);
      id = cfg.sweep.curve_param + "=" + format_number(cv);
    }
    const auto b = p.bounds();
    const auto j = j_bounds(p.secrecy, b);
    double lo = 0.0;
    double hi = 0.0;
    switch (cfg.pdf.which) {
      case PdfKind::GainBob: lo = b.v_min; hi = b.v_max; break;
      case PdfKind::GainEve: lo = b.v_min; hi = b.v_mid; break;
      case PdfKind::JBob: lo = j.jb_min; hi = j.jb_max; break;
      case PdfKind::JEve: lo = j.je_min; hi = j.je_max; break;
    }
    auto density = [&](double x) {
      switch (cfg.pdf.which) {
        case PdfKind::GainBob: return pdf_gain_bob(x, b, m);
        case PdfKind::GainEve: return pdf_gain_eve(x, b, m);
        case PdfKind::JBob: return pdf_j_bob(x, p.secrecy, b, m);
        case PdfKind::JEve: return pdf_j_eve(x, p.secrecy, b, m);
      }
      return 0.0;
    };
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 0; i < n; ++i) {
      double x = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
      if (i == 0) x = lo;
      if (i == n - 1) x = hi;
      rows.push_back({id, x, density(x), lo, hi});
    }
  }
  return rows;
}

void write_pdf_csv(const std::vector<PdfRow>& rows, std::ostream& out) {
  out << "curve_id,x,density,support_lo,support_hi\n";
  for (const auto& r : rows) {
    out << r.curve_id << ',' << format_number(r.x) << ',' << format_number(r.density) << ','
        << format_number(r.support_lo) << ',' << format_number(r.support_hi) << '\n';
  }
}

}  // namespace vlcsec
