#include "lagspec/json_io.hpp"

#include "lagspec/error.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lagspec {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (const double x : v) out.push_back(number(x));
  return out;
}

Json entries_json(const std::vector<EntryIndex>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(Json::array({e.i, e.j}));
  return out;
}

}  // namespace

Json to_json(const SpectralGrid& grid) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kernel"] = grid.kernel_name;
  j["bandwidth"] = grid.bandwidth;
  j["t_len"] = grid.t_len;
  j["freqs"] = numbers(grid.freqs);
  Json mats = Json::array();
  for (const auto& m : grid.matrices) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  j["matrices"] = std::move(mats);
  return j;
}

SpectralGrid grid_from_json(const Json& j) {
  try {
    SpectralGrid g;
    g.kernel_name = j.at("kernel").get<std::string>();
    g.bandwidth = j.at("bandwidth").get<std::size_t>();
    g.t_len = j.value("t_len", std::size_t{0});
    g.freqs = j.at("freqs").get<std::vector<double>>();
    for (const auto& rows : j.at("matrices")) {
      const auto n = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          const auto& z = rows.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
          m(r, c) = {z.at(0).get<double>(), z.at(1).get<double>()};
        }
      }
      g.matrices.push_back(std::move(m));
    }
    if (g.matrices.size() != g.freqs.size()) {
      throw Error(ErrorCode::ParseError, "matrix count does not match frequency count");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("spectral grid JSON: ") + e.what());
  }
}

Json to_json(const BandResult& band, const SpectralGrid& estimate) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["level"] = band.level;
  j["method"] = std::string(band_method_name(band.method));
  j["bonferroni_m"] = band.bonferroni_m;
  j["adjusted_level"] = band.adjusted_level;
  j["critical_value"] = number(band.critical_value);
  j["denominator"] = std::string(center_mode_name(band.center_mode));
  Json entries = Json::array();
  for (const auto& e : band.entries) {
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> lower;
    std::vector<double> upper;
    for (std::size_t l = 0; l < band.freqs.size(); ++l) {
      const auto z = estimate.entry(l, e.entry.i, e.entry.j);
      re.push_back(z.real());
      im.push_back(z.imag());
      lower.push_back(z.real() - e.half_width[l]);
      upper.push_back(z.real() + e.half_width[l]);
    }
    Json ej;
    ej["i"] = e.entry.i;
    ej["j"] = e.entry.j;
    ej["freqs"] = numbers(band.freqs);
    ej["estimate_re"] = numbers(re);
    ej["estimate_im"] = numbers(im);
    ej["half_width"] = numbers(e.half_width);
    // Interval for the real part; the imaginary part uses the same half-width.
    ej["lower"] = numbers(lower);
    ej["upper"] = numbers(upper);
    if (e.entry.i != e.entry.j) {
      std::vector<double> lo_im(im.size());
      std::vector<double> hi_im(im.size());
      for (std::size_t l = 0; l < im.size(); ++l) {
        lo_im[l] = im[l] - e.half_width[l];
        hi_im[l] = im[l] + e.half_width[l];
      }
      ej["lower_im"] = numbers(lo_im);
      ej["upper_im"] = numbers(hi_im);
    }
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const Kernel& kernel) {
  const auto& order = kernel.bias_order();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = kernel.name();
  j["kappa"] = number(kernel.kappa());
  j["q"] = number(order.q);
  j["k_q"] = order.k_q ? number(*order.k_q) : Json(nullptr);
  if (order.expansion_q) {
    j["expansion_q"] = number(*order.expansion_q);
    j["expansion_k_q"] = order.expansion_k_q ? number(*order.expansion_k_q) : Json(nullptr);
  }
  if (!order.note.empty()) j["note"] = order.note;
  j["psd_guarantee"] = kernel.psd_guarantee();
  j["warnings"] = kernel.warnings();
  return j;
}

Json to_json(const DependenceProfile& profile) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = profile.p;
  j["p_prime"] = profile.p_prime;
  j["horizon"] = profile.horizon;
  Json coords = Json::array();
  for (const auto& c : profile.coords) {
    Json cj;
    cj["delta"] = numbers(c.delta);
    cj["delta_se"] = numbers(c.delta_se);
    Json fit;
    fit["exact_zero_tail"] = c.fit.exact_zero_tail;
    fit["geometric"] = c.fit.geometric;
    fit["rho"] = number(c.fit.rho);
    fit["rho_upper"] = number(c.fit.rho_upper);
    fit["log_a"] = number(c.fit.log_a);
    fit["points"] = c.fit.points;
    fit["sse_geometric"] = number(c.fit.sse_geometric);
    fit["sse_power"] = number(c.fit.sse_power);
    cj["fit"] = std::move(fit);
    cj["remainder_known"] = c.remainder_known;
    cj["theta_remainder"] = number(c.theta_remainder);
    cj["psi_remainder"] = number(c.psi_remainder);
    cj["theta"] = numbers(c.theta);
    cj["theta_se"] = numbers(c.theta_se);
    cj["psi"] = numbers(c.psi);
    cj["d"] = numbers(c.d_seq);
    coords.push_back(std::move(cj));
  }
  j["coordinates"] = std::move(coords);
  j["delta_max"] = numbers(profile.delta_max());
  j["theta_max"] = numbers(profile.theta_max());
  j["psi_max"] = numbers(profile.psi_max());
  j["d_max"] = numbers(profile.d_max());
  j["warnings"] = profile.warnings;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = r.p;
  j["effective_p"] = r.effective_p;
  j["relaxed"] = r.relaxed;
  j["delta_param"] = r.delta_param;
  j["geometric"] = std::string(verdict_name(r.geometric));
  j["fitted_rho"] = number(r.fitted_rho);
  j["rho_upper"] = number(r.rho_upper);
  j["alpha1"] = {{"threshold", number(r.alpha1_threshold)},
                 {"fit", number(r.alpha1_fit)},
                 {"verdict", std::string(verdict_name(r.alpha1))}};
  j["alpha2"] = {{"threshold", number(r.alpha2_threshold)},
                 {"fit", number(r.alpha2_fit)},
                 {"verdict", std::string(verdict_name(r.alpha2))}};
  j["bandwidth"] = {{"b", r.b}, {"b_lower", r.b_lower}, {"admissible", r.bandwidth_admissible}};
  j["moments"] = {{"max_deviation_limit", r.moments_theorem1},
                  {"moment_convergence", r.moments_theorem2},
                  {"nu_star_max", r.nu_star_max}};
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ExperimentPlan& plan) {
  Json j;
  j["experiment"] = std::string(experiment_name(plan.experiment));
  j["model"] = plan.model.describe();
  j["kernel"] = plan.kernel.name();
  j["t_grid"] = plan.t_grid;
  j["b_exponent"] = plan.b_exponent;
  j["c_const"] = plan.c_const;
  j["reps"] = plan.reps;
  j["seed"] = plan.seed;
  switch (plan.experiment) {
    case Experiment::clt:
      j["entry"] = Json::array({plan.entry.i, plan.entry.j});
      j["freqs"] = numbers(plan.clt_freqs);
      break;
    case Experiment::gumbel:
      j["entry"] = Json::array({plan.entry.i, plan.entry.j});
      break;
    case Experiment::moments:
      j["entry"] = Json::array({plan.entry.i, plan.entry.j});
      j["nu"] = plan.nu;
      break;
    case Experiment::uniform_rate:
      j["entry"] = Json::array({plan.entry.i, plan.entry.j});
      j["nu"] = plan.nu;
      j["refine"] = plan.refine;
      break;
    case Experiment::bias_rate:
      j["entry"] = Json::array({plan.entry.i, plan.entry.j});
      j["bandwidths"] = plan.bias_bandwidths;
      j["freq"] = plan.bias_freq;
      j["t_len"] = plan.bias_t_len;
      break;
    case Experiment::coverage:
      j["entries"] = entries_json(plan.entries);
      j["level"] = plan.level;
      j["bonferroni"] = plan.bonferroni;
      j["assume_smooth"] = plan.assume_smooth;
      break;
  }
  return j;
}

Json to_json(const ExperimentReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["plan"] = to_json(report.plan);
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    Json cj;
    cj["t_len"] = c.t_len;
    cj["bandwidth"] = c.bandwidth;
    Json metrics = Json::object();
    for (const auto& m : c.metrics) metrics[m.name] = {{"value", number(m.value)}, {"se", number(m.se)}};
    cj["metrics"] = std::move(metrics);
    if (!c.raw.empty()) {
      Json raw = Json::object();
      for (const auto& [k, v] : c.raw) raw[k] = numbers(v);
      cj["raw"] = std::move(raw);
    }
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  Json summary = Json::object();
  for (const auto& m : report.summary) summary[m.name] = {{"value", number(m.value)}, {"se", number(m.se)}};
  j["summary"] = std::move(summary);
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json vj;
    vj["name"] = v.name;
    vj["value"] = number(v.value);
    vj["relation"] = v.relation;
    if (v.relation == "in") {
      vj["lower"] = number(v.lower);
      vj["upper"] = number(v.upper);
    } else if (v.relation != "decreasing" && v.relation != "nondecreasing") {
      vj["bound"] = number(v.lower);
    }
    vj["pass"] = v.pass;
    verdicts.push_back(std::move(vj));
  }
  j["verdicts"] = std::move(verdicts);
  j["all_pass"] = report.all_pass();
  return j;
}

void write_plot_data(const ExperimentReport& report, std::ostream& out) {
  const auto name = experiment_name(report.plan.experiment);
  out << "experiment,T,statistic,value,se\n";
  out.precision(17);
  const bool by_bandwidth = report.plan.experiment == Experiment::bias_rate;
  for (const auto& c : report.cells) {
    for (const auto& m : c.metrics) {
      const std::string stat = by_bandwidth ? m.name + "@B=" + std::to_string(c.bandwidth) : m.name;
      out << name << ',' << c.t_len << ',' << stat << ',' << m.value << ',' << m.se << '\n';
    }
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << dump(j);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace lagspec
