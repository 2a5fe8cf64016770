#include "nepcim/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace nepcim {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void append_string_array(std::ostringstream& out,
                         const std::vector<std::string>& items) {
  out << "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out << nlohmann::json(items[i]).dump();
    if (i + 1 < items.size()) out << ", ";
  }
  out << "]";
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  std::ostringstream out;
  const SolverConfig& c = r.config;
  out << "{\n";
  out << "  \"method\": \"" << r.method << "\",\n";
  out << "  \"config\": {\n";
  out << "    \"n_quad_sim\": " << c.n_quad_sim << ",\n";
  out << "    \"n_quad_beyn\": " << c.n_quad_beyn << ",\n";
  out << "    \"tol_ind\": " << format_double(c.tol_ind) << ",\n";
  out << "    \"tol_eps\": " << format_double(c.tol_eps) << ",\n";
  out << "    \"tol_svd\": " << format_double(c.tol_svd) << ",\n";
  out << "    \"probe_count\": " << c.probe_count << ",\n";
  out << "    \"merge_tol\": " << format_double(c.merge_tol) << ",\n";
  out << "    \"verify_tol\": " << format_double(c.verify_tol) << ",\n";
  out << "    \"shift_re\": " << format_double(c.shift.real()) << ",\n";
  out << "    \"shift_im\": " << format_double(c.shift.imag()) << ",\n";
  out << "    \"extra_levels\": " << c.extra_levels << ",\n";
  out << "    \"workers\": " << c.workers << ",\n";
  out << "    \"rng_seed\": " << c.rng_seed << ",\n";
  out << "    \"inner_parallel\": " << (c.inner_parallel ? "true" : "false")
      << "\n";
  out << "  },\n";
  out << "  \"region\": {\"x_min\": " << format_double(r.region.x_min)
      << ", \"x_max\": " << format_double(r.region.x_max)
      << ", \"y_min\": " << format_double(r.region.y_min)
      << ", \"y_max\": " << format_double(r.region.y_max) << "},\n";
  out << "  \"grid_x\": " << r.grid_x << ",\n";
  out << "  \"grid_y\": " << r.grid_y << ",\n";
  out << "  \"eigenvalues\": [\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const EigenResult& e = r.eigenvalues[i];
    out << "    {\"re\": " << format_double(e.value.real())
        << ", \"im\": " << format_double(e.value.imag())
        << ", \"residual\": " << format_double(e.residual)
        << ", \"method\": \"" << method_name(e.method) << "\"}";
    if (i + 1 < r.eigenvalues.size()) out << ",";
    out << "\n";
  }
  out << "  ],\n";
  out << "  \"solve_count\": " << r.solve_count << ",\n";
  out << "  \"warnings\": ";
  append_string_array(out, r.warnings);
  out << ",\n";
  out << "  \"wall_time_s\": " << format_double(r.wall_time_s) << "\n";
  out << "}\n";
  return out.str();
}

RunReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: invalid JSON: ") + e.what());
  }
  try {
    RunReport r;
    r.method = j.at("method").get<std::string>();
    const auto& c = j.at("config");
    r.config.n_quad_sim = c.at("n_quad_sim").get<int>();
    r.config.n_quad_beyn = c.at("n_quad_beyn").get<int>();
    r.config.tol_ind = c.at("tol_ind").get<double>();
    r.config.tol_eps = c.at("tol_eps").get<double>();
    r.config.tol_svd = c.at("tol_svd").get<double>();
    r.config.probe_count = c.at("probe_count").get<int>();
    r.config.merge_tol = c.at("merge_tol").get<double>();
    r.config.verify_tol = c.at("verify_tol").get<double>();
    r.config.shift = Complex(c.at("shift_re").get<double>(),
                             c.at("shift_im").get<double>());
    r.config.extra_levels = c.at("extra_levels").get<int>();
    r.config.workers = c.at("workers").get<int>();
    r.config.rng_seed = c.at("rng_seed").get<std::uint64_t>();
    r.config.inner_parallel = c.at("inner_parallel").get<bool>();
    const auto& reg = j.at("region");
    r.region = Rectangle{reg.at("x_min").get<double>(),
                         reg.at("x_max").get<double>(),
                         reg.at("y_min").get<double>(),
                         reg.at("y_max").get<double>()};
    r.grid_x = j.at("grid_x").get<int>();
    r.grid_y = j.at("grid_y").get<int>();
    for (const auto& e : j.at("eigenvalues")) {
      EigenResult res;
      res.value = Complex(e.at("re").get<double>(), e.at("im").get<double>());
      res.residual = e.at("residual").get<double>();
      res.method = e.at("method").get<std::string>() == "SIM" ? Method::SIM
                                                              : Method::BEYN;
      r.eigenvalues.push_back(std::move(res));
    }
    r.solve_count = j.at("solve_count").get<std::uint64_t>();
    for (const auto& w : j.at("warnings")) {
      r.warnings.push_back(w.get<std::string>());
    }
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: missing or mistyped field: ") +
                     e.what());
  }
}

std::string eigenvalues_to_csv(const std::vector<EigenResult>& results) {
  std::ostringstream out;
  out << "re,im,residual,method\n";
  for (const EigenResult& e : results) {
    out << format_double(e.value.real()) << "," << format_double(e.value.imag())
        << "," << format_double(e.residual) << "," << method_name(e.method)
        << "\n";
  }
  return out.str();
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "disk_index,center_re,center_im,radius,indicator,flagged\n";
  for (const ScanRow& r : rows) {
    out << r.disk_index << "," << format_double(r.disk.center.real()) << ","
        << format_double(r.disk.center.imag()) << ","
        << format_double(r.disk.radius) << "," << format_double(r.indicator)
        << "," << (r.flagged ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace nepcim
