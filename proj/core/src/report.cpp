#include "glmcf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glmcf/errors.hpp"

namespace glmcf {

const char* const kMonitorsCsvHeader =
    "t,osc_theta,theta_dot_sup,theta_dot_inf,tau_max,vartheta_max,rho_max,bigtheta_max,"
    "upsilon_max,q_max,branch_residual,lambda_max,u_tilde_sup,residual_theta,residual_tau,"
    "residual_vartheta,residual_rho,residual_bigtheta";

std::string monitor_sample_csv_row(const MonitorSample& s) {
  const double cols[] = {s.t,
                         s.osc_theta,
                         s.theta_dot_sup,
                         s.theta_dot_inf,
                         s.tau_max,
                         s.vartheta_max,
                         s.rho_max,
                         s.bigtheta_max,
                         s.upsilon_max,
                         s.q_max,
                         s.branch_residual,
                         s.lambda_max,
                         s.u_tilde_sup,
                         s.residual_theta,
                         s.residual_tau,
                         s.residual_vartheta,
                         s.residual_rho,
                         s.residual_bigtheta};
  std::string row;
  char buf[32];
  for (std::size_t i = 0; i < sizeof(cols) / sizeof(cols[0]); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", cols[i]);
    if (i) row += ',';
    row += buf;
  }
  return row;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + tmp);
    os << content;
    if (!os) throw io_error("short write: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw io_error("cannot rename into place: " + path + ": " + ec.message());
}

void write_monitors_csv(const std::string& path, const std::vector<MonitorSample>& samples) {
  if (samples.empty()) throw io_error("no samples to write: " + path);
  std::string out = kMonitorsCsvHeader;
  out += '\n';
  for (const auto& s : samples) {
    out += monitor_sample_csv_row(s);
    out += '\n';
  }
  write_text_file(path, out);
}

void write_svg_series(const std::string& path, const std::string& title,
                      const std::string& y_label, const std::vector<double>& t,
                      const std::vector<double>& y, bool log_y) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
    if (log_y && !(y[i] > 0.0)) continue;
    xs.push_back(t[i]);
    ys.push_back(log_y ? std::log10(y[i]) : y[i]);
  }

  const int W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";

  if (xs.size() >= 2) {
    double x0 = xs.front(), x1 = xs.front(), y0 = ys.front(), y1 = ys.front();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      x0 = std::min(x0, xs[i]);
      x1 = std::max(x1, xs[i]);
      y0 = std::min(y0, ys[i]);
      y1 = std::max(y1, ys[i]);
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (v - y0) / (y1 - y0) * (H - mt - mb); };

    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
       << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    char num[48];
    std::snprintf(num, sizeof(num), "%.4g", x0);
    os << "<text x=\"" << ml << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"12\">" << num << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", x1);
    os << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"12\">" << num << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", y0);
    os << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb
       << "\" text-anchor=\"end\" font-size=\"12\">" << num << "</text>\n";
    std::snprintf(num, sizeof(num), "%.4g", y1);
    os << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 10
       << "\" text-anchor=\"end\" font-size=\"12\">" << num << "</text>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">t</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << y_label
       << (log_y ? " (log10)" : "") << "</text>\n";

    os << "<polyline fill=\"none\" stroke=\"#1660a8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      char pt[64];
      std::snprintf(pt, sizeof(pt), "%.2f,%.2f ", px(xs[i]), py(ys[i]));
      os << pt;
    }
    os << "\"/>\n";
  } else {
    os << "<text x=\"" << W / 2 << "\" y=\"" << H / 2
       << "\" text-anchor=\"middle\" font-size=\"13\">not enough data</text>\n";
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

}  // namespace glmcf
