#include "qdarwin/runconfig.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qdarwin::cli {

namespace {

std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r\n");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r\n");
  return s.substr(from, to - from + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InvalidParameter("config: bad numeric value for " + key);
  }
}

long long to_ll(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InvalidParameter("config: bad integer value for " + key);
  }
}

} // namespace

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string format_exact(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void apply_key_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "command") c.command = value;
  else if (key == "theorem") c.theorem = static_cast<int>(to_ll(value, key));
  else if (key == "nbar") c.nbar = to_double(value, key);
  else if (key == "delta") c.delta = to_double(value, key);
  else if (key == "N") c.n_text = value;
  else if (key == "figure") c.figure = value;
  else if (key == "grid") c.grid = value;
  else if (key == "suite") c.suite = value;
  else if (key == "trials") c.trials = to_ll(value, key);
  else if (key == "samples") c.samples = to_ll(value, key);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_ll(value, key));
  else if (key == "out") c.out = value;
  else if (key == "format") c.format = value;
  else if (key == "tol_inequality") c.tol_inequality = to_double(value, key);
  else if (key == "tol_identity") c.tol_identity = to_double(value, key);
  else if (key == "alpha_re") c.alpha_re = to_double(value, key);
  else if (key == "alpha_im") c.alpha_im = to_double(value, key);
  else if (key == "thermal") c.thermal = to_double(value, key);
  else if (key == "squeeze") c.squeeze = to_double(value, key);
  else if (key == "omega") c.omega = to_double(value, key);
  else if (key == "Omega") c.Omega = to_double(value, key);
  else if (key == "eps") c.eps = to_double(value, key);
  else if (key == "certify") c.certify = (value == "true" || value == "1");
  else throw InvalidParameter("config: unknown key " + key);
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  RunConfig config = std::move(base);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config: expected key = value, got: " + stripped);
    apply_key_value(config, trim(stripped.substr(0, eq)),
                    trim(stripped.substr(eq + 1)));
  }
  return config;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidData("config: cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

std::string serialize(const RunConfig& c) {
  std::ostringstream out;
  out << "command = " << c.command << "\n";
  out << "theorem = " << c.theorem << "\n";
  out << "nbar = " << format_exact(c.nbar) << "\n";
  out << "delta = " << format_exact(c.delta) << "\n";
  out << "N = " << c.n_text << "\n";
  out << "figure = " << c.figure << "\n";
  out << "grid = " << c.grid << "\n";
  out << "suite = " << c.suite << "\n";
  out << "trials = " << c.trials << "\n";
  out << "samples = " << c.samples << "\n";
  out << "seed = " << c.seed << "\n";
  out << "out = " << c.out << "\n";
  out << "format = " << c.format << "\n";
  out << "tol_inequality = " << format_exact(c.tol_inequality) << "\n";
  out << "tol_identity = " << format_exact(c.tol_identity) << "\n";
  out << "alpha_re = " << format_exact(c.alpha_re) << "\n";
  out << "alpha_im = " << format_exact(c.alpha_im) << "\n";
  out << "thermal = " << format_exact(c.thermal) << "\n";
  out << "squeeze = " << format_exact(c.squeeze) << "\n";
  out << "omega = " << format_exact(c.omega) << "\n";
  out << "Omega = " << format_exact(c.Omega) << "\n";
  out << "eps = " << format_exact(c.eps) << "\n";
  out << "certify = " << (c.certify ? "true" : "false") << "\n";
  return out.str();
}

std::vector<LogReal> grid_from_spec(const std::string& spec,
                                    const std::vector<LogReal>& fallback) {
  if (spec.empty()) return fallback;
  double lo = 0.0, hi = 0.0;
  int points = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
    throw InvalidParameter("grid: expected log10min:log10max:points");
  if (points < 1 || hi < lo)
    throw InvalidParameter("grid: bad range");
  return optim::log_grid(lo, hi, points);
}

namespace {

nlohmann::ordered_json fit_json(const optim::PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["model"] = "bound*delta = beta*N^(-1/alpha)";
  j["beta"] = fit.beta;
  j["alpha"] = fit.alpha;
  j["rms_log"] = fit.rms_log;
  return j;
}

std::string field_or_empty(double x) {
  return std::isnan(x) ? std::string() : format_number(x);
}

} // namespace

std::string fig2_csv(const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit) {
  std::ostringstream out;
  out << "N,bound_analytic,bound_numeric,d,m\n";
  for (const auto& row : rows) {
    out << row.n.str() << ',' << format_number(row.bound_analytic) << ','
        << format_number(row.bound_numeric) << ',' << row.d << ','
        << format_number(row.m) << "\n";
  }
  out << "# fit " << fit_json(fit).dump() << "\n";
  return out.str();
}

std::string fig3_csv(const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit) {
  std::ostringstream out;
  out << "N,bound_closed,bound_numeric,d,epsilon,omega,Omega\n";
  for (const auto& row : rows) {
    out << row.n.str() << ',' << field_or_empty(row.bound_analytic) << ','
        << format_number(row.bound_numeric) << ',' << row.d << ','
        << field_or_empty(row.epsilon) << ',' << format_number(row.omega) << ','
        << format_number(row.Omega) << "\n";
  }
  out << "# fit " << fit_json(fit).dump() << "\n";
  return out.str();
}

std::string fig_json(const std::string& id,
                     const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["figure"] = id;
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["N"] = row.n.str();
    if (id == "fig2") {
      r["bound_analytic"] = row.bound_analytic;
      r["bound_numeric"] = row.bound_numeric;
      r["d"] = row.d;
      r["m"] = row.m;
    } else {
      if (!std::isnan(row.bound_analytic)) r["bound_closed"] = row.bound_analytic;
      r["bound_numeric"] = row.bound_numeric;
      r["d"] = row.d;
      if (!std::isnan(row.epsilon)) r["epsilon"] = row.epsilon;
      r["omega"] = row.omega;
      r["Omega"] = row.Omega;
      r["route"] = row.route;
    }
    array.push_back(std::move(r));
  }
  j["rows"] = std::move(array);
  j["fit"] = fit_json(fit);
  return j.dump(2) + "\n";
}

} // namespace qdarwin::cli
